#include "mcalloc/alloc_auction.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "mcalloc/valuation.hpp"

namespace mcalloc {

namespace {

constexpr double kRelaxationFactor = 0.5;
constexpr double kRelaxationFloor = 1e-6;

int bidder_count(const BidMatrix& matrix) {
  int n = 0;
  for (const Bid& b : matrix.bids) n = std::max(n, b.bidder + 1);
  return n;
}

std::vector<Bid> collect_bids(const Scenario& scenario, Context context, const Preallocation& pre,
                              int cap) {
  std::vector<Bid> bids;
  for (TenantId k = 0; k < scenario.n_tenants(); ++k) {
    auto mine = enumerate_bids(k, pre.sets[k], scenario, context, cap);
    bids.insert(bids.end(), mine.begin(), mine.end());
  }
  return bids;
}

}  // namespace

std::vector<Bid> enumerate_bids(TenantId tenant, ChannelSet prealloc_set, const Scenario& scenario,
                                Context context, int cap) {
  if (prealloc_set.size() > cap) {
    throw std::invalid_argument("enumerate_bids: tenant " + std::to_string(tenant) + " has " +
                                std::to_string(prealloc_set.size()) + " preallocated channels, cap is " +
                                std::to_string(cap));
  }
  const std::vector<ChannelId> members = prealloc_set.ids();
  const std::uint32_t subsets = std::uint32_t{1} << members.size();
  std::vector<Bid> out;
  out.reserve(subsets > 0 ? subsets - 1 : 0);
  for (std::uint32_t mask = 1; mask < subsets; ++mask) {
    ChannelSet bundle;
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (mask & (std::uint32_t{1} << i)) bundle.insert(members[i]);
    }
    out.push_back(Bid{bundle, bundle_value(tenant, bundle, scenario, context), tenant});
  }
  return out;
}

BidMatrix prune_zero_bids(std::vector<Bid> bids, int n_channels) {
  BidMatrix out;
  out.n_channels = n_channels;
  out.bids.reserve(bids.size());
  for (Bid& b : bids) {
    if (b.value > 0.0) out.bids.push_back(b);
  }
  return out;
}

WdpModel build_wdp(const BidMatrix& matrix, std::optional<std::span<const double>> min_values) {
  WdpModel model;
  auto& prog = model.program;
  const int n_bidders = bidder_count(matrix);
  prog.objective.reserve(matrix.bids.size());
  for (const Bid& b : matrix.bids) {
    if (b.bundle.empty()) throw std::invalid_argument("build_wdp: empty bundle");
    if (b.bidder < 0) throw std::invalid_argument("build_wdp: negative bidder id");
    if (matrix.n_channels < kMaxChannels &&
        !b.bundle.subset_of(ChannelSet::first_n(matrix.n_channels))) {
      throw std::invalid_argument("build_wdp: bundle outside channel range");
    }
    prog.objective.push_back(b.value);
  }

  std::vector<std::vector<int>> by_bidder(static_cast<std::size_t>(n_bidders));
  std::vector<std::vector<int>> by_channel(static_cast<std::size_t>(matrix.n_channels));
  for (std::size_t i = 0; i < matrix.bids.size(); ++i) {
    const Bid& b = matrix.bids[i];
    by_bidder[b.bidder].push_back(static_cast<int>(i));
    b.bundle.for_each([&](ChannelId m) { by_channel[m].push_back(static_cast<int>(i)); });
  }
  for (TenantId k = 0; k < n_bidders; ++k) {
    if (by_bidder[k].empty()) continue;
    model.bundle_row_bidders.push_back(k);
    prog.le_rows.push_back(by_bidder[k]);
  }
  for (ChannelId m = 0; m < matrix.n_channels; ++m) {
    if (by_channel[m].empty()) continue;
    model.exclusivity_row_channels.push_back(m);
    prog.le_rows.push_back(by_channel[m]);
  }

  if (min_values) {
    const auto mins = *min_values;
    if (static_cast<int>(mins.size()) < n_bidders) {
      throw std::invalid_argument("build_wdp: min_values does not cover every bidder");
    }
    for (std::size_t k = 0; k < mins.size(); ++k) {
      if (!(mins[k] > 0.0)) continue;
      ilp::GeRow row;
      row.rhs = mins[k];
      if (static_cast<int>(k) < n_bidders) {
        for (int v : by_bidder[k]) {
          row.vars.push_back(v);
          row.coefs.push_back(matrix.bids[v].value);
        }
      }
      if (row.vars.empty()) model.trivially_infeasible = true;
      model.min_row_tenants.push_back(static_cast<TenantId>(k));
      prog.ge_rows.push_back(std::move(row));
    }
  }
  return model;
}

namespace {

// Writes the accepted bids of an optimal solution into an outcome.
AuctionOutcome decode(const BidMatrix& matrix, int n_tenants, const ilp::SolveResult& res) {
  AuctionOutcome out;
  out.bids = matrix;
  out.assignment = Assignment(n_tenants, matrix.n_channels);
  out.nodes = res.nodes_explored;
  std::vector<char> bidder_done(static_cast<std::size_t>(n_tenants), 0);
  ChannelSet taken;
  for (std::size_t i = 0; i < res.solution.size(); ++i) {
    if (res.solution[i] == 0) continue;
    const Bid& b = matrix.bids[i];
    if (bidder_done[b.bidder] || b.bundle.intersects(taken)) {
      throw std::logic_error("winner determination returned overlapping bundles");
    }
    bidder_done[b.bidder] = 1;
    taken = taken | b.bundle;
    out.assignment.assign_all(b.bidder, b.bundle);
    out.accepted.push_back(i);
    out.objective += b.value;
  }
  return out;
}

}  // namespace

AuctionOutcome solve_bid_matrix(const BidMatrix& matrix, int n_tenants,
                                std::optional<std::span<const double>> min_values,
                                const ilp::SolveOptions& options) {
  if (n_tenants < bidder_count(matrix)) {
    throw std::invalid_argument("solve_bid_matrix: bidder id beyond tenant count");
  }
  const WdpModel model = build_wdp(matrix, min_values);
  if (model.trivially_infeasible) {
    throw std::invalid_argument("solve_bid_matrix: infeasible minimum-value rows");
  }
  const ilp::SolveResult res = ilp::solve(model.program, options);
  if (res.status != ilp::SolveStatus::Optimal) {
    throw std::invalid_argument("solve_bid_matrix: program is infeasible");
  }
  return decode(matrix, n_tenants, res);
}

AuctionOutcome run_ca(const Scenario& scenario, Context context, const AuctionConfig& cfg, Rng& rng) {
  const Preallocation pre = preallocate(scenario, context, cfg.quotas, cfg.prealloc_cap, rng);
  const BidMatrix matrix =
      prune_zero_bids(collect_bids(scenario, context, pre, cfg.prealloc_cap), scenario.n_channels());
  return solve_bid_matrix(matrix, scenario.n_tenants(), std::nullopt, cfg.solver);
}

Assignment allocate_ca(const Scenario& scenario, Context context, const AuctionConfig& cfg, Rng& rng) {
  return run_ca(scenario, context, cfg, rng).assignment;
}

AuctionOutcome run_feca(const Scenario& scenario, Context context, const AuctionConfig& cfg,
                        Rng& rng) {
  const Preallocation pre = preallocate(scenario, context, cfg.quotas, cfg.prealloc_cap, rng);
  const BidMatrix matrix =
      prune_zero_bids(collect_bids(scenario, context, pre, cfg.prealloc_cap), scenario.n_channels());

  // Tenants left without any positive bid cannot be helped by a minimum row.
  std::vector<char> has_bid(static_cast<std::size_t>(scenario.n_tenants()), 0);
  for (const Bid& b : matrix.bids) has_bid[b.bidder] = 1;
  std::vector<double> mins = fairness_minimums(scenario, context);
  for (TenantId k = 0; k < scenario.n_tenants(); ++k) {
    if (!has_bid[k]) mins[k] = 0.0;
  }
  const std::vector<double> start = mins;

  int relaxations = 0;
  std::uint64_t nodes = 0;
  for (;;) {
    const WdpModel model = build_wdp(matrix, std::span<const double>(mins));
    const ilp::SolveResult res = ilp::solve(model.program, cfg.solver);
    nodes += res.nodes_explored;
    if (res.status == ilp::SolveStatus::Optimal) {
      AuctionOutcome out = decode(matrix, scenario.n_tenants(), res);
      out.relaxations = relaxations;
      out.nodes = nodes;
      return out;
    }
    bool above_floor = false;
    for (std::size_t k = 0; k < mins.size(); ++k) {
      mins[k] *= kRelaxationFactor;
      if (start[k] > 0.0 && mins[k] >= kRelaxationFloor * start[k]) above_floor = true;
    }
    ++relaxations;
    if (!above_floor) break;
  }
  AuctionOutcome out = solve_bid_matrix(matrix, scenario.n_tenants(), std::nullopt, cfg.solver);
  out.relaxations = relaxations;
  out.fell_back = true;
  out.nodes += nodes;
  return out;
}

Assignment allocate_feca(const Scenario& scenario, Context context, const AuctionConfig& cfg,
                         Rng& rng) {
  return run_feca(scenario, context, cfg, rng).assignment;
}

}  // namespace mcalloc
