#pragma once

#include <span>
#include <vector>

#include "mcalloc/assignment.hpp"
#include "mcalloc/rng.hpp"
#include "mcalloc/scenario.hpp"
#include "mcalloc/types.hpp"

namespace mcalloc {

// Strict preference lists, most preferred first. Counterparts missing from a
// list are unacceptable to its owner.
using TenantRanking = std::vector<TenantId>;
using ChannelRanking = std::vector<ChannelId>;

struct Quotas {
  int tenant_quota = 6;   // q_t
  int channel_quota = 6;  // q_ch, many-to-many only
};

// Possibly overlapping per-tenant candidate sets CH^k.
struct Preallocation {
  std::vector<ChannelSet> sets;
};

// Channel-proposing deferred acceptance with tenant quotas. channel_prefs has
// one entry per channel (an empty list means the channel does not take part),
// tenant_prefs one per tenant. The result admits no blocking pair with
// respect to the given lists and quota. Throws std::logic_error if the
// proposal count exceeds n_ch * n_T.
Assignment gale_shapley_many_to_one(std::span<const TenantRanking> channel_prefs,
                                    std::span<const ChannelRanking> tenant_prefs, int tenant_quota);

// GS over single-connectivity preferences. Default quota 4.
Assignment allocate_gs(const Scenario& scenario, Context context, int tenant_quota, Rng& rng);

// Per-tenant floors used by the fairness-aware methods: C_min in the capacity
// context, 1/3 in the utility context.
std::vector<double> fairness_minimums(const Scenario& scenario, Context context);

// MRM. Phase 1 lets the tenant with the largest deficit below its minimum pick
// its best channel, until every tenant is at its minimum (or cannot reach it
// with the channels left). Phase 2 runs GS on the leftovers; the quota counts
// only phase-2 channels.
Assignment allocate_mrm(const Scenario& scenario, Context context, std::span<const double> min_values,
                        int tenant_quota, Rng& rng);

// MRGS: repeated one-to-one GS where each BS offers one channel per round and
// tenants re-rank offers by marginal value on their current holdings.
Assignment allocate_mrgs(const Scenario& scenario, Context context, Rng& rng);

// One top-trading-cycles exchange. endowment[p] is the channel owned by
// participant p; prefs[p] ranks channels (it must contain every endowed
// channel). Returns the channel each participant ends with.
std::vector<ChannelId> ttc_round(std::span<const ChannelId> endowment,
                                 std::span<const ChannelRanking> prefs);

// TTC over rounds of at most n_T channels, spread across BSs, randomly
// endowed.
Assignment allocate_ttc(const Scenario& scenario, Context context, Rng& rng);

// Many-to-many deferred acceptance: channels propose to up to q_ch tenants,
// tenants hold their best q_t proposals.
Preallocation gale_shapley_many_to_many(std::span<const TenantRanking> channel_prefs,
                                        std::span<const ChannelRanking> tenant_prefs,
                                        int channel_quota, int tenant_quota);

// Many-to-many GS over single-connectivity preferences. Channels left out are
// then handed to one random tenant below cap each, and afterwards topped up to
// min(q_ch, tenants below cap) random holders while caps allow.
Preallocation preallocate(const Scenario& scenario, Context context, const Quotas& quotas, int cap,
                          Rng& rng);

}  // namespace mcalloc
