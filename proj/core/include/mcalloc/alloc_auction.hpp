#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mcalloc/alloc_matching.hpp"
#include "mcalloc/assignment.hpp"
#include "mcalloc/ilp.hpp"
#include "mcalloc/rng.hpp"
#include "mcalloc/scenario.hpp"

namespace mcalloc {

// Bids per tenant are enumerated over all nonempty subsets of its
// preallocated set, so the set size is capped.
inline constexpr int kPreallocationCap = 8;

struct Bid {
  ChannelSet bundle;
  double value = 0.0;
  TenantId bidder = 0;
};

// Bid list over channels 0..n_channels-1.
struct BidMatrix {
  int n_channels = 0;
  std::vector<Bid> bids;
};

// Winner determination program. Variable i accepts bids[i]. Row order:
// one-bundle rows (bidders ascending), then exclusivity rows (channels
// ascending), both only for bidders/channels that occur in some bid; then one
// minimum-value ge row per tenant with a positive minimum.
struct WdpModel {
  ilp::ZeroOneProgram program;
  std::vector<TenantId> bundle_row_bidders;
  std::vector<ChannelId> exclusivity_row_channels;
  std::vector<TenantId> min_row_tenants;
  // A tenant with a positive minimum and no bid at all.
  bool trivially_infeasible = false;
};

struct AuctionConfig {
  Quotas quotas{6, 6};
  int prealloc_cap = kPreallocationCap;
  ilp::SolveOptions solver;
};

struct AuctionOutcome {
  Assignment assignment{0, 0};
  BidMatrix bids;
  std::vector<std::size_t> accepted;  // indices into bids.bids
  double objective = 0.0;
  int relaxations = 0;     // FECA halvings applied
  bool fell_back = false;  // FECA gave up on minima and solved plain CA
  std::uint64_t nodes = 0;
};

// One bid per nonempty subset of prealloc_set, valued by bundle_value.
// Throws std::invalid_argument if the set exceeds cap.
std::vector<Bid> enumerate_bids(TenantId tenant, ChannelSet prealloc_set, const Scenario& scenario,
                                Context context, int cap = kPreallocationCap);

// Drops bids with value <= 0, keeps order.
BidMatrix prune_zero_bids(std::vector<Bid> bids, int n_channels);

// min_values, when given, is indexed by tenant id and must cover every bidder.
WdpModel build_wdp(const BidMatrix& matrix, std::optional<std::span<const double>> min_values = {});

// Solves a bid matrix directly; n_tenants sizes the resulting assignment.
// Throws std::logic_error if the solver's choice is not channel-disjoint with
// one bundle per bidder.
AuctionOutcome solve_bid_matrix(const BidMatrix& matrix, int n_tenants,
                                std::optional<std::span<const double>> min_values = {},
                                const ilp::SolveOptions& options = {});

// Full CA pipeline: preallocate, enumerate, prune, solve.
AuctionOutcome run_ca(const Scenario& scenario, Context context, const AuctionConfig& cfg, Rng& rng);
Assignment allocate_ca(const Scenario& scenario, Context context, const AuctionConfig& cfg, Rng& rng);

// CA plus a minimum-value row per bidding tenant (C_min or 1/3). While the
// program is infeasible all minima are halved; once they fall below 1e-6 of
// their start values the plain CA optimum is returned.
AuctionOutcome run_feca(const Scenario& scenario, Context context, const AuctionConfig& cfg, Rng& rng);
Assignment allocate_feca(const Scenario& scenario, Context context, const AuctionConfig& cfg, Rng& rng);

}  // namespace mcalloc
