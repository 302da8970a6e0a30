#include "mcalloc/valuation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mcalloc/radio.hpp"

namespace mcalloc {

UtilityParams utility_params(const Tenant& t) { return {t.c_min_mbps, t.c_max_mbps}; }

double utility(double c_mbps, const UtilityParams& p) {
  if (!(c_mbps >= 0.0)) throw std::domain_error("utility: capacity must be nonnegative");
  if (c_mbps <= p.c_min_mbps) return 0.0;
  if (c_mbps >= p.c_max_mbps) return 1.0;
  return std::log(c_mbps / p.c_min_mbps) / std::log(p.c_max_mbps / p.c_min_mbps);
}

double bundle_value(TenantId tenant, ChannelSet channels, const Scenario& scenario, Context context) {
  const double c = rho(tenant, channels, scenario);
  if (context == Context::Capacity) return c;
  return utility(c, utility_params(scenario.tenant(tenant)));
}

double first_channel_score(TenantId tenant, ChannelId candidate, const Scenario& scenario) {
  const Tenant& t = scenario.tenant(tenant);
  return utility(t.c_min_mbps + scenario.single_link_capacity(tenant, candidate), utility_params(t));
}

double single_channel_score(TenantId tenant, ChannelId channel, const Scenario& scenario,
                            Context context) {
  if (context == Context::Capacity) return scenario.single_link_capacity(tenant, channel);
  return first_channel_score(tenant, channel, scenario);
}

namespace {

// Marginal gain with bundle_value(current) already known.
double marginal_from(double base, TenantId tenant, ChannelSet current, ChannelId candidate,
                     const Scenario& scenario, Context context) {
  if (current.empty()) return single_channel_score(tenant, candidate, scenario, context);
  return bundle_value(tenant, current.with(candidate), scenario, context) - base;
}

}  // namespace

double marginal_value(TenantId tenant, ChannelSet current, ChannelId candidate,
                      const Scenario& scenario, Context context) {
  if (current.contains(candidate)) {
    throw std::invalid_argument("marginal_value: candidate already held");
  }
  const double base = current.empty() ? 0.0 : bundle_value(tenant, current, scenario, context);
  return marginal_from(base, tenant, current, candidate, scenario, context);
}

PreferenceList rank_by_score(std::vector<int> ids, std::vector<double> scores, Rng& rng) {
  if (ids.size() != scores.size()) throw std::invalid_argument("rank_by_score: size mismatch");
  std::vector<std::size_t> order(ids.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  PreferenceList out;
  out.ids.reserve(ids.size());
  out.scores.reserve(ids.size());
  for (std::size_t i : order) {
    out.ids.push_back(ids[i]);
    out.scores.push_back(scores[i]);
  }
  for (std::size_t begin = 0; begin < out.ids.size();) {
    std::size_t end = begin + 1;
    while (end < out.ids.size() && out.scores[begin] - out.scores[end] <= kTieTolerance) ++end;
    if (end - begin > 1) rng.shuffle(std::span<int>(out.ids.data() + begin, end - begin));
    begin = end;
  }
  return out;
}

PreferenceList tenant_preferences(TenantId tenant, ChannelSet available, ChannelSet current,
                                  const Scenario& scenario, Context context, Rng& rng) {
  const ChannelSet candidates = available - current;
  const double base = current.empty() ? 0.0 : bundle_value(tenant, current, scenario, context);
  std::vector<int> ids;
  std::vector<double> scores;
  candidates.for_each([&](ChannelId m) {
    ids.push_back(m);
    scores.push_back(marginal_from(base, tenant, current, m, scenario, context));
  });
  return rank_by_score(std::move(ids), std::move(scores), rng);
}

PreferenceList channel_preferences(ChannelId channel, std::span<const TenantId> tenants,
                                   const Scenario& scenario, Context context, Rng& rng) {
  std::vector<int> ids(tenants.begin(), tenants.end());
  std::vector<double> scores;
  scores.reserve(ids.size());
  for (TenantId k : ids) scores.push_back(single_channel_score(k, channel, scenario, context));
  return rank_by_score(std::move(ids), std::move(scores), rng);
}

std::vector<TenantId> all_tenants(const Scenario& scenario) {
  std::vector<TenantId> out(static_cast<std::size_t>(scenario.n_tenants()));
  std::iota(out.begin(), out.end(), 0);
  return out;
}

}  // namespace mcalloc
