#include "mcalloc/alloc_baseline.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "mcalloc/valuation.hpp"

namespace mcalloc {

namespace {

// Shared loop of the random family. weight(k, m) is the unnormalized
// selection weight of tenant k for channel m.
template <typename Weight>
Assignment allocate_sampled(const Scenario& scenario, const BaselineConfig& cfg, Rng& rng,
                            Weight&& weight) {
  if (cfg.max_channels_per_tenant < 0) {
    throw std::invalid_argument("max_channels_per_tenant must be nonnegative");
  }
  Assignment a(scenario.n_tenants(), scenario.n_channels());
  std::vector<int> held(static_cast<std::size_t>(scenario.n_tenants()), 0);
  std::vector<TenantId> open;
  std::vector<double> weights;
  for (ChannelId m = 0; m < scenario.n_channels(); ++m) {
    open.clear();
    weights.clear();
    for (TenantId k = 0; k < scenario.n_tenants(); ++k) {
      if (held[k] < cfg.max_channels_per_tenant) {
        open.push_back(k);
        weights.push_back(weight(k, m));
      }
    }
    if (open.empty()) continue;
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    const std::size_t pick = total > 0.0 ? rng.pick_weighted(weights) : rng.uniform_index(open.size());
    a.assign(open[pick], m);
    ++held[open[pick]];
  }
  return a;
}

// Uniformly random member of the group within kTieTolerance of the minimum.
TenantId pick_weakest(const std::vector<double>& values, Rng& rng) {
  const double lowest = *std::min_element(values.begin(), values.end());
  std::vector<TenantId> group;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (values[k] - lowest <= kTieTolerance) group.push_back(static_cast<TenantId>(k));
  }
  return group.size() == 1 ? group.front() : group[rng.uniform_index(group.size())];
}

}  // namespace

Assignment allocate_random(const Scenario& scenario, const BaselineConfig& cfg, Rng& rng) {
  return allocate_sampled(scenario, cfg, rng, [](TenantId, ChannelId) { return 1.0; });
}

Assignment allocate_sr1(const Scenario& scenario, const BaselineConfig& cfg, Rng& rng) {
  return allocate_sampled(scenario, cfg, rng, [&](TenantId k, ChannelId m) {
    return 1.0 / scenario.distance(k, scenario.bs_of(m));
  });
}

Assignment allocate_sr2(const Scenario& scenario, const BaselineConfig& cfg, Rng& rng) {
  return allocate_sampled(scenario, cfg, rng, [&](TenantId k, ChannelId m) {
    return scenario.single_link_capacity(k, m);
  });
}

Assignment allocate_ws(const Scenario& scenario, Context context, Rng& rng) {
  Assignment a(scenario.n_tenants(), scenario.n_channels());
  if (scenario.n_tenants() == 0) return a;
  ChannelSet available = scenario.all_channels();
  // Lowest capacity and largest utility deficit 1 - U both mean the lowest
  // bundle value.
  std::vector<double> values(static_cast<std::size_t>(scenario.n_tenants()), 0.0);
  while (!available.empty()) {
    for (TenantId k = 0; k < scenario.n_tenants(); ++k) {
      values[k] = bundle_value(k, a.channels_of(k), scenario, context);
    }
    const TenantId weakest = pick_weakest(values, rng);
    const PreferenceList prefs =
        tenant_preferences(weakest, available, a.channels_of(weakest), scenario, context, rng);
    a.assign(weakest, prefs.front());
    available.erase(prefs.front());
  }
  return a;
}

Assignment allocate_orr(const Scenario& scenario, Context context, Rng& rng) {
  Assignment a(scenario.n_tenants(), scenario.n_channels());
  ChannelSet available = scenario.all_channels();
  std::vector<TenantId> order = all_tenants(scenario);
  while (!available.empty() && !order.empty()) {
    rng.shuffle(std::span<TenantId>(order));
    for (TenantId k : order) {
      if (available.empty()) break;
      const PreferenceList prefs =
          tenant_preferences(k, available, a.channels_of(k), scenario, context, rng);
      a.assign(k, prefs.front());
      available.erase(prefs.front());
    }
  }
  return a;
}

}  // namespace mcalloc
