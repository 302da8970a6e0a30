#include "mcalloc/scenario_io.hpp"

#include <json.hpp>

namespace mcalloc {

using nlohmann::json;

std::string scenario_to_json(const Scenario& s, int indent) {
  const RadioParams& p = s.params();
  json doc;
  doc["seed"] = s.seed();
  doc["case"] = std::string(to_string(s.case_label()));
  doc["params"] = {
      {"bandwidth_hz", p.bandwidth_hz},
      {"ref_distance_m", p.ref_distance_m},
      {"ref_path_loss_db", p.ref_path_loss_db},
      {"path_loss_exponent", p.path_loss_exponent},
      {"interference_power_dbm", p.interference_power_dbm},
      {"epsilon", p.epsilon},
      {"rician_ref_db", p.rician_ref_db},
  };
  json stations = json::array();
  for (const BaseStation& b : s.base_stations()) {
    stations.push_back({{"id", b.id},
                        {"x", b.position.x},
                        {"y", b.position.y},
                        {"tx_power_dbm", b.tx_power_dbm},
                        {"num_channels", b.num_channels}});
  }
  doc["base_stations"] = std::move(stations);
  json channels = json::array();
  for (const Channel& c : s.channels()) channels.push_back({{"id", c.id}, {"bs_id", c.bs_id}});
  doc["channels"] = std::move(channels);
  json tenants = json::array();
  for (const Tenant& t : s.tenants()) {
    tenants.push_back({{"id", t.id},
                       {"x", t.position.x},
                       {"y", t.position.y},
                       {"c_min_mbps", t.c_min_mbps},
                       {"c_max_mbps", t.c_max_mbps}});
  }
  doc["tenants"] = std::move(tenants);
  doc["rician_mask"] = s.rician_mask();
  return doc.dump(indent);
}

Scenario scenario_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("scenario JSON: ") + e.what());
  }
  try {
    const json& jp = doc.at("params");
    RadioParams p;
    p.bandwidth_hz = jp.at("bandwidth_hz").get<double>();
    p.ref_distance_m = jp.at("ref_distance_m").get<double>();
    p.ref_path_loss_db = jp.at("ref_path_loss_db").get<double>();
    p.path_loss_exponent = jp.at("path_loss_exponent").get<double>();
    p.interference_power_dbm = jp.at("interference_power_dbm").get<double>();
    p.epsilon = jp.at("epsilon").get<double>();
    p.rician_ref_db = jp.at("rician_ref_db").get<double>();

    std::vector<BaseStation> stations;
    for (const json& jb : doc.at("base_stations")) {
      BaseStation b;
      b.id = jb.at("id").get<int>();
      b.position = {jb.at("x").get<double>(), jb.at("y").get<double>()};
      b.tx_power_dbm = jb.at("tx_power_dbm").get<double>();
      b.num_channels = jb.at("num_channels").get<int>();
      stations.push_back(b);
    }
    std::vector<Channel> channels;
    for (const json& jc : doc.at("channels")) {
      channels.push_back(Channel{jc.at("id").get<int>(), jc.at("bs_id").get<int>()});
    }
    std::vector<Tenant> tenants;
    for (const json& jt : doc.at("tenants")) {
      Tenant t;
      t.id = jt.at("id").get<int>();
      t.position = {jt.at("x").get<double>(), jt.at("y").get<double>()};
      t.c_min_mbps = jt.at("c_min_mbps").get<double>();
      t.c_max_mbps = jt.at("c_max_mbps").get<double>();
      tenants.push_back(t);
    }
    auto mask = doc.at("rician_mask").get<Matrix>();
    return Scenario(p, std::move(stations), std::move(channels), std::move(tenants), std::move(mask),
                    doc.at("seed").get<std::uint64_t>(), parse_case(doc.at("case").get<std::string>()));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("scenario JSON: ") + e.what());
  }
}

}  // namespace mcalloc
