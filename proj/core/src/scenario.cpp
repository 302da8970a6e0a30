#include "mcalloc/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mcalloc/rng.hpp"

namespace mcalloc {

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

Scenario::Scenario(RadioParams params, std::vector<BaseStation> base_stations,
                   std::vector<Channel> channels, std::vector<Tenant> tenants, Matrix rician_mask,
                   std::uint64_t seed, CaseLabel case_label)
    : params_(params),
      base_stations_(std::move(base_stations)),
      channels_(std::move(channels)),
      tenants_(std::move(tenants)),
      rician_mask_(std::move(rician_mask)),
      seed_(seed),
      case_label_(case_label) {
  params_.validate();
  const int n_bs = n_base_stations();
  const int n_t = n_tenants();
  const int n_ch = n_channels();
  if (n_ch > kMaxChannels) {
    throw std::invalid_argument("scenario has " + std::to_string(n_ch) + " channels, limit is 64");
  }
  for (int i = 0; i < n_bs; ++i) {
    if (base_stations_[i].id != i) throw std::invalid_argument("base station ids must be 0..n-1");
    if (base_stations_[i].num_channels < 0) throw std::invalid_argument("negative channel count");
  }
  for (int k = 0; k < n_t; ++k) {
    const Tenant& t = tenants_[k];
    if (t.id != k) throw std::invalid_argument("tenant ids must be 0..n-1");
    if (!(t.c_min_mbps > 0.0 && t.c_min_mbps < t.c_max_mbps)) {
      throw std::invalid_argument("tenant " + std::to_string(k) + ": need 0 < c_min < c_max");
    }
  }
  // Channels are grouped contiguously by BS, in BS order.
  std::vector<int> per_bs(static_cast<std::size_t>(n_bs), 0);
  for (int m = 0; m < n_ch; ++m) {
    const Channel& c = channels_[m];
    if (c.id != m) throw std::invalid_argument("channel ids must be 0..n-1");
    if (c.bs_id < 0 || c.bs_id >= n_bs) throw std::invalid_argument("channel refers to unknown BS");
    if (m > 0 && c.bs_id < channels_[m - 1].bs_id) {
      throw std::invalid_argument("channels must be grouped contiguously by BS");
    }
    ++per_bs[c.bs_id];
  }
  for (int i = 0; i < n_bs; ++i) {
    if (per_bs[i] != base_stations_[i].num_channels) {
      throw std::invalid_argument("BS " + std::to_string(i) + " channel count mismatch");
    }
  }
  if (static_cast<int>(rician_mask_.size()) != n_t) {
    throw std::invalid_argument("rician_mask must have one row per tenant");
  }
  for (const auto& row : rician_mask_) {
    if (static_cast<int>(row.size()) != n_bs) {
      throw std::invalid_argument("rician_mask must have one column per BS");
    }
    for (double v : row) {
      if (!(v >= 0.0)) throw std::invalid_argument("rician_mask entries must be nonnegative");
    }
  }

  links_.resize(static_cast<std::size_t>(n_t) * n_bs);
  for (int k = 0; k < n_t; ++k) {
    for (int i = 0; i < n_bs; ++i) {
      const double d = mcalloc::distance(tenants_[k].position, base_stations_[i].position);
      links_[static_cast<std::size_t>(k) * n_bs + i] =
          LinkState{mean_sir_linear(base_stations_[i].tx_power_dbm, d, params_), rician_mask_[k][i]};
    }
  }
  single_capacity_ = single_link_capacity_matrix(*this);
}

void Scenario::check_tenant(TenantId k) const {
  if (k < 0 || k >= n_tenants()) throw std::out_of_range("unknown tenant id " + std::to_string(k));
}

const Tenant& Scenario::tenant(TenantId k) const {
  check_tenant(k);
  return tenants_[k];
}

const Channel& Scenario::channel(ChannelId m) const {
  if (m < 0 || m >= n_channels()) throw std::out_of_range("unknown channel id " + std::to_string(m));
  return channels_[m];
}

double Scenario::distance(TenantId k, BsId i) const {
  check_tenant(k);
  if (i < 0 || i >= n_base_stations()) throw std::out_of_range("unknown BS id " + std::to_string(i));
  return mcalloc::distance(tenants_[k].position, base_stations_[i].position);
}

const LinkState& Scenario::link(TenantId k, BsId i) const {
  check_tenant(k);
  if (i < 0 || i >= n_base_stations()) throw std::out_of_range("unknown BS id " + std::to_string(i));
  return links_[static_cast<std::size_t>(k) * n_base_stations() + i];
}

double Scenario::single_link_capacity(TenantId k, ChannelId m) const {
  check_tenant(k);
  channel(m);
  return single_capacity_[k][m];
}

Matrix single_link_capacity_matrix(const Scenario& scenario) {
  Matrix out(static_cast<std::size_t>(scenario.n_tenants()),
             std::vector<double>(static_cast<std::size_t>(scenario.n_channels()), 0.0));
  for (int k = 0; k < scenario.n_tenants(); ++k) {
    for (int m = 0; m < scenario.n_channels(); ++m) {
      out[k][m] = rho(k, ChannelSet::single(m), scenario);
    }
  }
  return out;
}

void GeneratorConfig::validate() const {
  auto check_interval = [](Interval iv, const char* name) {
    if (!(iv.lo <= iv.hi)) throw std::invalid_argument(std::string(name) + ": empty interval");
  };
  if (!(width_m > 0.0 && height_m > 0.0)) throw std::invalid_argument("area must be positive");
  if (n_base_stations < 1) throw std::invalid_argument("need at least one base station");
  if (n_tenants < 1) throw std::invalid_argument("need at least one tenant");
  check_interval(tx_power_dbm, "tx_power_dbm");
  check_interval(c_min_mbps, "c_min_mbps");
  check_interval(c_max_mbps, "c_max_mbps");
  if (!(c_min_mbps.lo > 0.0)) throw std::invalid_argument("c_min must be positive");
  if (!(c_min_mbps.hi < c_max_mbps.lo)) {
    throw std::invalid_argument("c_min interval must lie below c_max interval");
  }
  if (channels_per_bs_choices.empty()) throw std::invalid_argument("no channel-count choices");
  for (int c : channels_per_bs_choices) {
    if (c < 1) throw std::invalid_argument("channel-count choices must be >= 1");
  }
  if (channel_cap < 1 || channel_cap > kMaxChannels) {
    throw std::invalid_argument("channel_cap must lie in [1, 64]");
  }
  if (n_base_stations > channel_cap) {
    throw std::invalid_argument("channel_cap cannot give every BS a channel");
  }
  radio.validate();
}

namespace {

Point perimeter_point(double s, double w, double h) {
  if (s < w) return {s, 0.0};
  s -= w;
  if (s < h) return {w, s};
  s -= h;
  if (s < w) return {w - s, h};
  s -= w;
  return {0.0, h - std::min(s, h)};
}

}  // namespace

Scenario generate(const GeneratorConfig& config, std::uint64_t seed) {
  config.validate();
  Rng rng(seed);

  const int n_bs = config.n_base_stations;
  const int n_t = config.n_tenants;
  const double perimeter = 2.0 * (config.width_m + config.height_m);

  std::vector<BaseStation> stations;
  stations.reserve(static_cast<std::size_t>(n_bs));
  int total = 0;
  for (int i = 0; i < n_bs; ++i) {
    BaseStation bs;
    bs.id = i;
    bs.position = perimeter_point(rng.uniform(0.0, perimeter), config.width_m, config.height_m);
    bs.tx_power_dbm = rng.uniform(config.tx_power_dbm.lo, config.tx_power_dbm.hi);
    int count = config.channels_per_bs_choices[rng.uniform_index(config.channels_per_bs_choices.size())];
    // Clamp so every later BS can still get one channel under the cap.
    const int room = config.channel_cap - total - (n_bs - i - 1);
    count = std::min(count, room);
    bs.num_channels = count;
    total += count;
    stations.push_back(bs);
  }

  std::vector<Channel> channels;
  channels.reserve(static_cast<std::size_t>(total));
  for (const BaseStation& bs : stations) {
    for (int j = 0; j < bs.num_channels; ++j) {
      channels.push_back(Channel{static_cast<ChannelId>(channels.size()), bs.id});
    }
  }

  std::vector<Tenant> tenants;
  tenants.reserve(static_cast<std::size_t>(n_t));
  for (int k = 0; k < n_t; ++k) {
    Tenant t;
    t.id = k;
    t.position.x = rng.uniform(0.0, config.width_m);
    t.position.y = rng.uniform(0.0, config.height_m);
    t.c_min_mbps = rng.uniform(config.c_min_mbps.lo, config.c_min_mbps.hi);
    t.c_max_mbps = rng.uniform(config.c_max_mbps.lo, config.c_max_mbps.hi);
    tenants.push_back(t);
  }

  const double k_ref = config.radio.rician_ref_linear();
  Matrix mask(static_cast<std::size_t>(n_t), std::vector<double>(static_cast<std::size_t>(n_bs), k_ref));
  const std::size_t pairs = static_cast<std::size_t>(n_t) * n_bs;
  const auto suppressed =
      static_cast<std::size_t>(std::llround(config.case_fraction() * static_cast<double>(pairs)));
  // Partial Fisher-Yates: the first `suppressed` slots are a uniform sample
  // without replacement.
  std::vector<std::size_t> order(pairs);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = 0; i < suppressed; ++i) {
    const std::size_t j = i + rng.uniform_index(pairs - i);
    std::swap(order[i], order[j]);
    mask[order[i] / n_bs][order[i] % n_bs] = 0.0;
  }

  return Scenario(config.radio, std::move(stations), std::move(channels), std::move(tenants),
                  std::move(mask), seed, config.outage_case);
}

}  // namespace mcalloc
