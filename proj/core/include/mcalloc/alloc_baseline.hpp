#pragma once

#include "mcalloc/assignment.hpp"
#include "mcalloc/rng.hpp"
#include "mcalloc/scenario.hpp"

namespace mcalloc {

struct BaselineConfig {
  // Per-tenant channel cap for the random family (R, SR1, SR2).
  int max_channels_per_tenant = 4;
};

// R: channels in index order, each to a uniformly drawn tenant below the cap.
// A channel stays unassigned only when every tenant is full.
Assignment allocate_random(const Scenario& scenario, const BaselineConfig& cfg, Rng& rng);

// SR1: like R, tenant drawn with probability proportional to 1/distance to the
// channel's BS.
Assignment allocate_sr1(const Scenario& scenario, const BaselineConfig& cfg, Rng& rng);

// SR2: like R, tenant drawn proportionally to its single-connectivity
// capacity on the channel; uniform if all candidates score zero.
Assignment allocate_sr2(const Scenario& scenario, const BaselineConfig& cfg, Rng& rng);

// WS: the currently weakest tenant (lowest capacity, or largest utility
// deficit) repeatedly takes its best remaining channel, until none remain.
Assignment allocate_ws(const Scenario& scenario, Context context, Rng& rng);

// ORR: rounds in a fresh random tenant order; each tenant takes its best
// remaining channel.
Assignment allocate_orr(const Scenario& scenario, Context context, Rng& rng);

}  // namespace mcalloc
