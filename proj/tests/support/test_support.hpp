#pragma once

#include <cmath>
#include <vector>

#include "mcalloc/assignment.hpp"
#include "mcalloc/scenario.hpp"
#include "mcalloc/valuation.hpp"

namespace mcalloc::support {

struct BsSpec {
  double x;
  double y;
  double tx_dbm;
  int n_channels;
};

struct TenantSpec {
  double x;
  double y;
  double c_min = 0.15;
  double c_max = 20.0;
};

// Hand-built scenario. k_linear is the Rician factor for every pair unless
// mask is given.
inline Scenario make_scenario(const std::vector<BsSpec>& stations, const std::vector<TenantSpec>& tenants,
                              double k_linear = 14.1, Matrix mask = {}) {
  std::vector<BaseStation> bs;
  std::vector<Channel> channels;
  for (std::size_t i = 0; i < stations.size(); ++i) {
    bs.push_back({static_cast<BsId>(i), {stations[i].x, stations[i].y}, stations[i].tx_dbm,
                  stations[i].n_channels});
    for (int j = 0; j < stations[i].n_channels; ++j) {
      channels.push_back({static_cast<ChannelId>(channels.size()), static_cast<BsId>(i)});
    }
  }
  std::vector<Tenant> ts;
  for (std::size_t k = 0; k < tenants.size(); ++k) {
    ts.push_back({static_cast<TenantId>(k), {tenants[k].x, tenants[k].y}, tenants[k].c_min,
                  tenants[k].c_max});
  }
  if (mask.empty()) mask.assign(tenants.size(), std::vector<double>(stations.size(), k_linear));
  return Scenario(RadioParams{}, bs, channels, ts, mask, 0, CaseLabel::I);
}

// Score a matching participant gives a counterpart: single-connectivity
// capacity, or the first-channel utility score.
inline double single_score(const Scenario& s, TenantId k, ChannelId m, Context ctx) {
  return single_channel_score(k, m, s, ctx);
}

// Blocking pairs of a many-to-one assignment with respect to cardinal scores
// (strict preference = score larger by more than the tie tolerance). Every
// channel ranks every tenant and vice versa.
inline int count_blocking_pairs(const Scenario& s, const Assignment& a, Context ctx, int quota) {
  int blocking = 0;
  for (ChannelId m = 0; m < s.n_channels(); ++m) {
    const TenantId holder = a.owner(m);
    for (TenantId k = 0; k < s.n_tenants(); ++k) {
      if (k == holder) continue;
      const double score = single_score(s, k, m, ctx);
      const bool channel_wants =
          holder < 0 || score > single_score(s, holder, m, ctx) + kTieTolerance;
      if (!channel_wants) continue;
      const ChannelSet held = a.channels_of(k);
      bool tenant_wants = held.size() < quota;
      if (!tenant_wants) {
        double worst = std::numeric_limits<double>::infinity();
        held.for_each([&](ChannelId h) { worst = std::min(worst, single_score(s, k, h, ctx)); });
        tenant_wants = score > worst + kTieTolerance;
      }
      if (tenant_wants) ++blocking;
    }
  }
  return blocking;
}

inline bool column_sums_ok(const Assignment& a) {
  const auto m = a.matrix();
  for (int c = 0; c < a.n_channels(); ++c) {
    int sum = 0;
    for (const auto& row : m) sum += row[c];
    if (sum > 1) return false;
  }
  return true;
}

}  // namespace mcalloc::support
