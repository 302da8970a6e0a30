#include "mcalloc/harness.hpp"

#include <fmt/format.h>

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <chrono>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#ifndef MCALLOC_VERSION_STRING
#define MCALLOC_VERSION_STRING "0.0.0"
#endif

namespace mcalloc {

namespace fs = std::filesystem;

std::string_view version() { return MCALLOC_VERSION_STRING; }

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
  throw std::invalid_argument(fmt::format("config: bad value '{}' for '{}'", value, key));
}

template <typename Int>
Int to_int(std::string_view key, std::string_view value) {
  Int out{};
  const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
  if (value.empty() || res.ec != std::errc{} || res.ptr != value.data() + value.size()) {
    bad_value(key, value);
  }
  return out;
}

double to_double(std::string_view key, std::string_view value) {
  const std::string tmp(value);
  char* end = nullptr;
  const double out = std::strtod(tmp.c_str(), &end);
  if (tmp.empty() || end != tmp.c_str() + tmp.size()) bad_value(key, value);
  return out;
}

bool to_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  bad_value(key, value);
}

template <typename T, typename F>
std::vector<T> to_list(std::string_view key, std::string_view value, F parse) {
  std::vector<T> out;
  for (std::string_view item : split(value, ',')) {
    if (item.empty()) bad_value(key, value);
    try {
      out.push_back(parse(item));
    } catch (const std::invalid_argument&) {
      bad_value(key, value);
    }
  }
  return out;
}

template <typename T, typename F>
std::string join(const std::vector<T>& items, F fmt_item, char sep = ',') {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += fmt_item(items[i]);
  }
  return out;
}

struct ConfigKey {
  std::string_view name;
  void (*set)(std::string_view key, std::string_view value, RunConfig& cfg);
  std::string (*get)(const RunConfig& cfg);
};

#define MCALLOC_DOUBLE_KEY(NAME, FIELD)                                                     \
  ConfigKey {                                                                               \
    NAME, [](std::string_view k, std::string_view v, RunConfig& c) { c.FIELD = to_double(k, v); }, \
        [](const RunConfig& c) { return fmt::format("{}", c.FIELD); }                       \
  }
#define MCALLOC_INT_KEY(NAME, FIELD)                                                          \
  ConfigKey {                                                                                 \
    NAME,                                                                                     \
        [](std::string_view k, std::string_view v, RunConfig& c) {                            \
          c.FIELD = to_int<decltype(c.FIELD)>(k, v);                                          \
        },                                                                                    \
        [](const RunConfig& c) { return fmt::format("{}", c.FIELD); }                         \
  }

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys{
      MCALLOC_INT_KEY("scenarios", n_scenarios),
      MCALLOC_INT_KEY("seed", base_seed),
      {"cases",
       [](std::string_view k, std::string_view v, RunConfig& c) {
         c.cases = to_list<CaseLabel>(k, v, parse_case);
       },
       [](const RunConfig& c) {
         return join(c.cases, [](CaseLabel x) { return std::string(to_string(x)); });
       }},
      {"contexts",
       [](std::string_view k, std::string_view v, RunConfig& c) {
         c.contexts = to_list<Context>(k, v, parse_context);
       },
       [](const RunConfig& c) {
         return join(c.contexts, [](Context x) { return std::string(to_string(x)); });
       }},
      {"algorithms",
       [](std::string_view k, std::string_view v, RunConfig& c) {
         c.algorithms = to_list<Algorithm>(k, v, parse_algorithm);
       },
       [](const RunConfig& c) {
         return join(c.algorithms, [](Algorithm x) { return std::string(to_string(x)); });
       }},
      MCALLOC_INT_KEY("reps", stochastic_reps),
      {"out", [](std::string_view, std::string_view v, RunConfig& c) { c.out_dir = std::string(v); },
       [](const RunConfig& c) { return c.out_dir; }},
      MCALLOC_INT_KEY("workers", workers),
      {"timing",
       [](std::string_view k, std::string_view v, RunConfig& c) { c.record_timing = to_bool(k, v); },
       [](const RunConfig& c) { return std::string(c.record_timing ? "true" : "false"); }},
      MCALLOC_DOUBLE_KEY("width_m", generator.width_m),
      MCALLOC_DOUBLE_KEY("height_m", generator.height_m),
      MCALLOC_INT_KEY("base_stations", generator.n_base_stations),
      MCALLOC_INT_KEY("tenants", generator.n_tenants),
      MCALLOC_DOUBLE_KEY("tx_power_min_dbm", generator.tx_power_dbm.lo),
      MCALLOC_DOUBLE_KEY("tx_power_max_dbm", generator.tx_power_dbm.hi),
      {"channels_per_bs",
       [](std::string_view k, std::string_view v, RunConfig& c) {
         c.generator.channels_per_bs_choices =
             to_list<int>(k, v, [k](std::string_view s) { return to_int<int>(k, s); });
       },
       [](const RunConfig& c) {
         return join(c.generator.channels_per_bs_choices, [](int x) { return std::to_string(x); });
       }},
      MCALLOC_INT_KEY("channel_cap", generator.channel_cap),
      MCALLOC_DOUBLE_KEY("c_min_lo_mbps", generator.c_min_mbps.lo),
      MCALLOC_DOUBLE_KEY("c_min_hi_mbps", generator.c_min_mbps.hi),
      MCALLOC_DOUBLE_KEY("c_max_lo_mbps", generator.c_max_mbps.lo),
      MCALLOC_DOUBLE_KEY("c_max_hi_mbps", generator.c_max_mbps.hi),
      MCALLOC_DOUBLE_KEY("bandwidth_hz", generator.radio.bandwidth_hz),
      MCALLOC_DOUBLE_KEY("ref_distance_m", generator.radio.ref_distance_m),
      MCALLOC_DOUBLE_KEY("ref_path_loss_db", generator.radio.ref_path_loss_db),
      MCALLOC_DOUBLE_KEY("path_loss_exponent", generator.radio.path_loss_exponent),
      MCALLOC_DOUBLE_KEY("interference_power_dbm", generator.radio.interference_power_dbm),
      MCALLOC_DOUBLE_KEY("epsilon", generator.radio.epsilon),
      MCALLOC_DOUBLE_KEY("rician_ref_db", generator.radio.rician_ref_db),
      MCALLOC_INT_KEY("baseline_max_channels", settings.baseline.max_channels_per_tenant),
      MCALLOC_INT_KEY("gs_quota", settings.gs_quota),
      MCALLOC_INT_KEY("mrm_quota", settings.mrm_quota),
      MCALLOC_INT_KEY("prealloc_tenant_quota", settings.auction.quotas.tenant_quota),
      MCALLOC_INT_KEY("prealloc_channel_quota", settings.auction.quotas.channel_quota),
      MCALLOC_INT_KEY("prealloc_cap", settings.auction.prealloc_cap),
      MCALLOC_INT_KEY("solver_node_budget", settings.auction.solver.node_budget),
  };
  return keys;
}

#undef MCALLOC_DOUBLE_KEY
#undef MCALLOC_INT_KEY

std::string num(double x) { return fmt::format("{}", x); }

void write_file(const fs::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TaskOutput {
  std::vector<MetricRecord> records;
  std::vector<FaultRecord> faults;
};

TaskOutput run_task(const RunConfig& cfg, std::size_t index, CaseLabel case_label) {
  TaskOutput out;
  const std::uint64_t seed = scenario_seed(cfg.base_seed, index);
  GeneratorConfig gen = cfg.generator;
  gen.outage_case = case_label;
  std::optional<Scenario> scenario;
  try {
    scenario.emplace(generate(gen, seed));
  } catch (const std::exception& e) {
    out.faults.push_back({seed, case_label, Context::Capacity, "generate", e.what()});
    return out;
  }
  using clock = std::chrono::steady_clock;
  for (Context ctx : cfg.contexts) {
    for (Algorithm alg : cfg.algorithms) {
      const int reps = is_stochastic(alg) ? cfg.stochastic_reps : 1;
      std::vector<MetricRecord> runs;
      runs.reserve(static_cast<std::size_t>(reps));
      try {
        for (int rep = 0; rep < reps; ++rep) {
          Rng rng(task_seed(cfg.base_seed, index, case_label, ctx, alg, rep));
          const auto t0 = clock::now();
          const Assignment a = run_algorithm(alg, *scenario, ctx, cfg.settings, rng);
          const auto t1 = clock::now();
          MetricRecord r = evaluate(*scenario, a);
          r.wall_time_s =
              cfg.record_timing ? std::chrono::duration<double>(t1 - t0).count() : 0.0;
          runs.push_back(std::move(r));
        }
      } catch (const std::exception& e) {
        out.faults.push_back({seed, case_label, ctx, std::string(to_string(alg)), e.what()});
        continue;
      }
      MetricRecord r = average_records(runs);
      r.context = ctx;
      r.algorithm = std::string(to_string(alg));
      out.records.push_back(std::move(r));
    }
  }
  return out;
}

std::string manifest_json(const RunConfig& cfg, const RunResult* result) {
  using nlohmann::json;
  json doc;
  doc["version"] = std::string(version());
  json config = json::object();
  for (const ConfigKey& k : config_keys()) config[std::string(k.name)] = k.get(cfg);
  doc["config"] = std::move(config);
  doc["rng"] =
      "mt19937_64 per allocator call; seed = splitmix64 chain over (base_seed, scenario index, "
      "case, context, algorithm, repetition); scenario seed = base_seed XOR scenario index";
  doc["expected_records"] = cfg.n_scenarios * cfg.cases.size() * cfg.contexts.size() *
                            cfg.algorithms.size();
  if (result != nullptr) {
    json counts = json::object();
    for (const MetricRecord& r : result->records) {
      const std::string key = fmt::format("{}/{}/{}", to_string(r.case_label),
                                          to_string(r.context), r.algorithm);
      counts[key] = counts.value(key, 0) + 1;
    }
    doc["record_counts"] = std::move(counts);
    doc["faults"] = result->faults.size();
  }
  return doc.dump(2) + "\n";
}

std::string faults_to_csv(const std::vector<FaultRecord>& faults) {
  std::string out = "scenario_seed,case,context,algorithm,message\n";
  for (const FaultRecord& f : faults) {
    std::string msg = f.message;
    std::replace(msg.begin(), msg.end(), '"', '\'');
    out += fmt::format("{},{},{},{},\"{}\"\n", f.scenario_seed, to_string(f.case_label),
                       to_string(f.context), f.algorithm, msg);
  }
  return out;
}

}  // namespace

void RunConfig::validate() const {
  if (n_scenarios < 1) throw std::invalid_argument("config: scenarios must be >= 1");
  if (cases.empty()) throw std::invalid_argument("config: no cases selected");
  if (contexts.empty()) throw std::invalid_argument("config: no contexts selected");
  if (algorithms.empty()) throw std::invalid_argument("config: no algorithms selected");
  if (stochastic_reps < 1) throw std::invalid_argument("config: reps must be >= 1");
  if (workers < 0) throw std::invalid_argument("config: workers must be >= 0");
  if (settings.gs_quota < 1 || settings.mrm_quota < 1) {
    throw std::invalid_argument("config: quotas must be >= 1");
  }
  generator.validate();
}

void apply_config_value(std::string_view key, std::string_view value, RunConfig& cfg) {
  key = trim(key);
  value = trim(value);
  for (const ConfigKey& k : config_keys()) {
    if (k.name == key) {
      k.set(key, value, cfg);
      return;
    }
  }
  throw std::invalid_argument(fmt::format("config: unknown key '{}'", key));
}

void apply_config_text(std::string_view text, RunConfig& cfg) {
  int line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument(fmt::format("config line {}: expected key = value", line_no));
    }
    apply_config_value(line.substr(0, eq), line.substr(eq + 1), cfg);
  }
}

std::string config_to_text(const RunConfig& cfg) {
  std::string out;
  for (const ConfigKey& k : config_keys()) out += fmt::format("{} = {}\n", k.name, k.get(cfg));
  return out;
}

std::uint64_t scenario_seed(std::uint64_t base_seed, std::size_t index) {
  return base_seed ^ static_cast<std::uint64_t>(index);
}

std::uint64_t task_seed(std::uint64_t base_seed, std::size_t index, CaseLabel case_label,
                        Context context, Algorithm algorithm, int rep) {
  return derive_seed(base_seed, {static_cast<std::uint64_t>(index),
                                 static_cast<std::uint64_t>(case_label),
                                 static_cast<std::uint64_t>(context),
                                 static_cast<std::uint64_t>(algorithm),
                                 static_cast<std::uint64_t>(rep)});
}

RunResult run_sweep(const RunConfig& cfg,
                    const std::function<void(std::size_t, std::size_t)>& progress) {
  cfg.validate();
  const std::size_t total = cfg.n_scenarios * cfg.cases.size();
  std::vector<TaskOutput> outputs(total);
  std::atomic<std::size_t> next{0};
  std::mutex progress_mutex;
  std::size_t done = 0;

  auto worker = [&] {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= total) return;
      const std::size_t index = t / cfg.cases.size();
      outputs[t] = run_task(cfg, index, cfg.cases[t % cfg.cases.size()]);
      if (progress) {
        std::lock_guard lock(progress_mutex);
        progress(++done, total);
      }
    }
  };

  std::size_t n_workers = cfg.workers > 0 ? static_cast<std::size_t>(cfg.workers)
                                          : std::max(1u, std::thread::hardware_concurrency());
  n_workers = std::min(n_workers, total);
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_workers);
    for (std::size_t i = 0; i < n_workers; ++i) pool.emplace_back(worker);
  }

  RunResult result;
  for (TaskOutput& o : outputs) {
    std::move(o.records.begin(), o.records.end(), std::back_inserter(result.records));
    std::move(o.faults.begin(), o.faults.end(), std::back_inserter(result.faults));
  }
  return result;
}

std::string records_to_csv(const std::vector<MetricRecord>& records) {
  std::string out(kRecordsHeader);
  out += '\n';
  for (const MetricRecord& r : records) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}\n", r.scenario_seed,
                       to_string(r.case_label), to_string(r.context), r.algorithm, num(r.tc_mbps),
                       num(r.tu), num(r.f_c), num(r.f_u), num(r.mc_mbps), num(r.mu),
                       num(r.n_outage), num(r.overcapacity_mbps), num(r.wall_time_s));
  }
  return out;
}

std::vector<MetricRecord> records_from_csv(std::string_view text) {
  std::vector<MetricRecord> out;
  int line_no = 0;
  bool header_seen = false;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kRecordsHeader) {
        throw std::invalid_argument("records csv: unexpected header");
      }
      header_seen = true;
      continue;
    }
    const auto cells = split(line, ',');
    if (cells.size() != 13) {
      throw std::invalid_argument(fmt::format("records csv line {}: expected 13 fields", line_no));
    }
    MetricRecord r;
    try {
      r.scenario_seed = to_int<std::uint64_t>("scenario_seed", cells[0]);
      r.case_label = parse_case(cells[1]);
      r.context = parse_context(cells[2]);
      r.algorithm = std::string(to_string(parse_algorithm(cells[3])));
      r.tc_mbps = to_double("tc_mbps", cells[4]);
      r.tu = to_double("tu", cells[5]);
      r.f_c = to_double("f_c", cells[6]);
      r.f_u = to_double("f_u", cells[7]);
      r.mc_mbps = to_double("mc_mbps", cells[8]);
      r.mu = to_double("mu", cells[9]);
      r.n_outage = to_double("n_outage", cells[10]);
      r.overcapacity_mbps = to_double("overcapacity_mbps", cells[11]);
      r.wall_time_s = to_double("wall_time_s", cells[12]);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(fmt::format("records csv line {}: {}", line_no, e.what()));
    }
    out.push_back(std::move(r));
  }
  if (!header_seen) throw std::invalid_argument("records csv: missing header");
  return out;
}

std::string summary_to_csv(const std::vector<SummaryRow>& rows) {
  std::string out = "case,context,algorithm,count";
  for (Metric m : kAllMetrics) {
    for (std::string_view stat : {"mean", "median", "q1", "q3", "whisker_lo", "whisker_hi"}) {
      out += fmt::format(",{}_{}", to_string(m), stat);
    }
  }
  out += '\n';
  for (const SummaryRow& row : rows) {
    out += fmt::format("{},{},{},{}", to_string(row.case_label), to_string(row.context),
                       row.algorithm, row.count);
    for (Metric m : kAllMetrics) {
      const BoxStats& s = row.at(m);
      out += fmt::format(",{},{},{},{},{},{}", num(s.mean), num(s.median), num(s.q1), num(s.q3),
                         num(s.whisker_lo), num(s.whisker_hi));
    }
    out += '\n';
  }
  return out;
}

void export_aggregates(const std::vector<SummaryRow>& rows, const fs::path& dir) {
  fs::create_directories(dir / "plots");
  write_file(dir / "summary.csv", summary_to_csv(rows));

  std::map<std::string, std::string> plots;
  std::vector<std::string> order;
  std::string scatter = "case,context,algorithm,mean_tu,mean_f_u\n";
  for (const SummaryRow& row : rows) {
    scatter += fmt::format("{},{},{},{},{}\n", to_string(row.case_label), to_string(row.context),
                           row.algorithm, num(row.at(Metric::TU).mean),
                           num(row.at(Metric::FU).mean));
    for (Metric m : kAllMetrics) {
      const std::string name =
          fmt::format("{}_{}_{}.csv", to_string(m), to_string(row.case_label), to_string(row.context));
      auto [it, fresh] = plots.try_emplace(name, "algorithm,median,q1,q3,whisker_lo,whisker_hi,outliers\n");
      if (fresh) order.push_back(name);
      const BoxStats& s = row.at(m);
      it->second += fmt::format("{},{},{},{},{},{},{}\n", row.algorithm, num(s.median), num(s.q1),
                                num(s.q3), num(s.whisker_lo), num(s.whisker_hi),
                                join(s.outliers, num, ';'));
    }
  }
  write_file(dir / "scatter_tu_vs_f.csv", scatter);
  for (const std::string& name : order) write_file(dir / "plots" / name, plots[name]);
}

RunResult run(const RunConfig& cfg, const std::function<void(std::size_t, std::size_t)>& progress) {
  cfg.validate();
  const fs::path dir(cfg.out_dir);
  fs::create_directories(dir);
  write_file(dir / "manifest.json", manifest_json(cfg, nullptr));
  write_file(dir / "run.cfg", config_to_text(cfg));

  RunResult result = run_sweep(cfg, progress);

  write_file(dir / "records.csv", records_to_csv(result.records));
  if (!result.faults.empty()) {
    write_file(dir / "faults.csv", faults_to_csv(result.faults));
  } else if (fs::exists(dir / "faults.csv")) {
    fs::remove(dir / "faults.csv");
  }
  if (!result.records.empty()) export_aggregates(aggregate(result.records), dir);
  write_file(dir / "manifest.json", manifest_json(cfg, &result));
  return result;
}

std::vector<SummaryRow> aggregate_directory(const fs::path& dir) {
  const std::vector<MetricRecord> records = records_from_csv(read_file(dir / "records.csv"));
  std::vector<SummaryRow> rows = aggregate(records);
  export_aggregates(rows, dir);
  return rows;
}

}  // namespace mcalloc
