#pragma once

#include <span>
#include <vector>

#include "mcalloc/rng.hpp"
#include "mcalloc/scenario.hpp"
#include "mcalloc/types.hpp"

namespace mcalloc {

// Scores closer than this are treated as equal and ordered at random.
inline constexpr double kTieTolerance = 1e-12;

struct UtilityParams {
  double c_min_mbps = 0.0;
  double c_max_mbps = 0.0;
};

UtilityParams utility_params(const Tenant& t);

// Saturating log utility in [0, 1]: 0 up to c_min, 1 from c_max on,
// log(c / c_min) / log(c_max / c_min) in between.
double utility(double c_mbps, const UtilityParams& p);

// Value of a channel bundle to a tenant: rho in the capacity context,
// utility of rho in the utility context.
double bundle_value(TenantId tenant, ChannelSet channels, const Scenario& scenario, Context context);

// Gain from adding `candidate` to `current`. In the utility context a tenant
// holding nothing is scored with first_channel_score instead, since a single
// channel rarely clears C_min on its own.
double marginal_value(TenantId tenant, ChannelSet current, ChannelId candidate,
                      const Scenario& scenario, Context context);

// utility(C_min + C_single) for a tenant's first channel.
double first_channel_score(TenantId tenant, ChannelId candidate, const Scenario& scenario);

// Single-connectivity score of channel m for tenant k as used by the matching
// family: raw capacity, or first_channel_score in the utility context.
double single_channel_score(TenantId tenant, ChannelId channel, const Scenario& scenario,
                            Context context);

// Alternatives ordered by score, most preferred first.
struct PreferenceList {
  std::vector<int> ids;
  std::vector<double> scores;

  bool empty() const { return ids.empty(); }
  std::size_t size() const { return ids.size(); }
  int front() const { return ids.front(); }
};

// Sort by descending score. Runs of scores within kTieTolerance of the run's
// first element are shuffled with rng; rng is untouched when all scores are
// distinct.
PreferenceList rank_by_score(std::vector<int> ids, std::vector<double> scores, Rng& rng);

// Tenant's ranking of the available channels by marginal value given what it
// already holds.
PreferenceList tenant_preferences(TenantId tenant, ChannelSet available, ChannelSet current,
                                  const Scenario& scenario, Context context, Rng& rng);

// Channel's ranking of tenants by single-connectivity score.
PreferenceList channel_preferences(ChannelId channel, std::span<const TenantId> tenants,
                                   const Scenario& scenario, Context context, Rng& rng);

// All tenant ids 0..n-1.
std::vector<TenantId> all_tenants(const Scenario& scenario);

}  // namespace mcalloc
