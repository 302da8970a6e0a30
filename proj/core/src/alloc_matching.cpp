#include "mcalloc/alloc_matching.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <string>

#include "mcalloc/valuation.hpp"

namespace mcalloc {

namespace {

constexpr int kUnranked = std::numeric_limits<int>::max();

// rank[k][m]: position of channel m in tenant k's list, kUnranked if absent.
std::vector<std::vector<int>> tenant_rank_table(std::span<const ChannelRanking> tenant_prefs,
                                                int n_channels) {
  std::vector<std::vector<int>> rank(tenant_prefs.size(),
                                     std::vector<int>(static_cast<std::size_t>(n_channels), kUnranked));
  for (std::size_t k = 0; k < tenant_prefs.size(); ++k) {
    for (std::size_t pos = 0; pos < tenant_prefs[k].size(); ++pos) {
      const ChannelId m = tenant_prefs[k][pos];
      if (m < 0 || m >= n_channels) throw std::out_of_range("tenant list names unknown channel");
      if (rank[k][m] == kUnranked) rank[k][m] = static_cast<int>(pos);
    }
  }
  return rank;
}

void check_channel_lists(std::span<const TenantRanking> channel_prefs, int n_tenants) {
  for (const TenantRanking& list : channel_prefs) {
    for (TenantId k : list) {
      if (k < 0 || k >= n_tenants) throw std::out_of_range("channel list names unknown tenant");
    }
  }
}

// Index into held of the channel the tenant likes least.
std::size_t worst_held(const std::vector<ChannelId>& held, const std::vector<int>& rank) {
  std::size_t worst = 0;
  for (std::size_t i = 1; i < held.size(); ++i) {
    if (rank[held[i]] > rank[held[worst]]) worst = i;
  }
  return worst;
}

std::vector<TenantRanking> single_channel_rankings(const Scenario& scenario, Context context, Rng& rng) {
  const std::vector<TenantId> tenants = all_tenants(scenario);
  std::vector<TenantRanking> out;
  out.reserve(static_cast<std::size_t>(scenario.n_channels()));
  for (ChannelId m = 0; m < scenario.n_channels(); ++m) {
    out.push_back(channel_preferences(m, tenants, scenario, context, rng).ids);
  }
  return out;
}

std::vector<ChannelRanking> tenant_rankings(const Scenario& scenario, ChannelSet available,
                                            const Assignment& holdings, Context context, Rng& rng) {
  std::vector<ChannelRanking> out;
  out.reserve(static_cast<std::size_t>(scenario.n_tenants()));
  for (TenantId k = 0; k < scenario.n_tenants(); ++k) {
    out.push_back(
        tenant_preferences(k, available, holdings.channels_of(k), scenario, context, rng).ids);
  }
  return out;
}

TenantId pick_max_deficit(const std::vector<double>& deficit, const std::vector<TenantId>& candidates,
                          Rng& rng) {
  double best = -std::numeric_limits<double>::infinity();
  for (TenantId k : candidates) best = std::max(best, deficit[k]);
  std::vector<TenantId> group;
  for (TenantId k : candidates) {
    if (best - deficit[k] <= kTieTolerance) group.push_back(k);
  }
  return group.size() == 1 ? group.front() : group[rng.uniform_index(group.size())];
}

}  // namespace

Assignment gale_shapley_many_to_one(std::span<const TenantRanking> channel_prefs,
                                    std::span<const ChannelRanking> tenant_prefs, int tenant_quota) {
  if (tenant_quota < 1) throw std::invalid_argument("tenant quota must be >= 1");
  const int n_ch = static_cast<int>(channel_prefs.size());
  const int n_t = static_cast<int>(tenant_prefs.size());
  check_channel_lists(channel_prefs, n_t);
  const auto rank = tenant_rank_table(tenant_prefs, n_ch);

  std::vector<std::size_t> next(static_cast<std::size_t>(n_ch), 0);
  std::vector<std::vector<ChannelId>> held(static_cast<std::size_t>(n_t));
  std::deque<ChannelId> free;
  for (ChannelId m = 0; m < n_ch; ++m) {
    if (!channel_prefs[m].empty()) free.push_back(m);
  }

  const long long max_proposals = static_cast<long long>(n_ch) * n_t;
  long long proposals = 0;
  while (!free.empty()) {
    const ChannelId m = free.front();
    free.pop_front();
    const TenantRanking& list = channel_prefs[m];
    while (next[m] < list.size()) {
      const TenantId k = list[next[m]++];
      if (++proposals > max_proposals) {
        throw std::logic_error("deferred acceptance exceeded n_ch * n_T proposals");
      }
      if (rank[k][m] == kUnranked) continue;
      if (static_cast<int>(held[k].size()) < tenant_quota) {
        held[k].push_back(m);
        break;
      }
      const std::size_t w = worst_held(held[k], rank[k]);
      if (rank[k][m] < rank[k][held[k][w]]) {
        free.push_back(held[k][w]);
        held[k][w] = m;
        break;
      }
    }
  }

  Assignment a(n_t, n_ch);
  for (TenantId k = 0; k < n_t; ++k) {
    for (ChannelId m : held[k]) a.assign(k, m);
  }
  return a;
}

Assignment allocate_gs(const Scenario& scenario, Context context, int tenant_quota, Rng& rng) {
  const auto channel_prefs = single_channel_rankings(scenario, context, rng);
  const Assignment empty(scenario.n_tenants(), scenario.n_channels());
  const auto tenant_prefs = tenant_rankings(scenario, scenario.all_channels(), empty, context, rng);
  return gale_shapley_many_to_one(channel_prefs, tenant_prefs, tenant_quota);
}

std::vector<double> fairness_minimums(const Scenario& scenario, Context context) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(scenario.n_tenants()));
  for (const Tenant& t : scenario.tenants()) {
    out.push_back(context == Context::Capacity ? t.c_min_mbps : 1.0 / 3.0);
  }
  return out;
}

Assignment allocate_mrm(const Scenario& scenario, Context context, std::span<const double> min_values,
                        int tenant_quota, Rng& rng) {
  const int n_t = scenario.n_tenants();
  if (static_cast<int>(min_values.size()) != n_t) {
    throw std::invalid_argument("allocate_mrm: one minimum per tenant required");
  }
  Assignment a(n_t, scenario.n_channels());
  ChannelSet available = scenario.all_channels();

  // Phase 1: minimum-rate rescue.
  std::vector<double> deficit(static_cast<std::size_t>(n_t), 0.0);
  std::vector<TenantId> needy;
  while (!available.empty()) {
    needy.clear();
    for (TenantId k = 0; k < n_t; ++k) {
      const ChannelSet held = a.channels_of(k);
      const double value = bundle_value(k, held, scenario, context);
      deficit[k] = min_values[k] - value;
      if (deficit[k] <= 0.0) continue;
      // A tenant that stays short even with every remaining channel drops out.
      if (bundle_value(k, held | available, scenario, context) < min_values[k]) continue;
      needy.push_back(k);
    }
    if (needy.empty()) break;
    const TenantId chooser = pick_max_deficit(deficit, needy, rng);
    const PreferenceList prefs =
        tenant_preferences(chooser, available, a.channels_of(chooser), scenario, context, rng);
    a.assign(chooser, prefs.front());
    available.erase(prefs.front());
  }
  if (available.empty()) return a;

  // Phase 2: GS on what is left.
  std::vector<TenantRanking> channel_prefs(static_cast<std::size_t>(scenario.n_channels()));
  const std::vector<TenantId> tenants = all_tenants(scenario);
  available.for_each([&](ChannelId m) {
    channel_prefs[m] = channel_preferences(m, tenants, scenario, context, rng).ids;
  });
  const auto tenant_prefs = tenant_rankings(scenario, available, a, context, rng);
  const Assignment rest = gale_shapley_many_to_one(channel_prefs, tenant_prefs, tenant_quota);
  for (TenantId k = 0; k < n_t; ++k) a.assign_all(k, rest.channels_of(k));
  return a;
}

Assignment allocate_mrgs(const Scenario& scenario, Context context, Rng& rng) {
  Assignment a(scenario.n_tenants(), scenario.n_channels());
  if (scenario.n_tenants() == 0) return a;
  const auto all_channel_prefs = single_channel_rankings(scenario, context, rng);
  ChannelSet available = scenario.all_channels();
  std::vector<TenantRanking> channel_prefs(static_cast<std::size_t>(scenario.n_channels()));
  while (!available.empty()) {
    // Each BS offers its lowest-index remaining channel.
    ChannelSet offered;
    BsId last_bs = -1;
    available.for_each([&](ChannelId m) {
      if (scenario.bs_of(m) != last_bs) {
        offered.insert(m);
        last_bs = scenario.bs_of(m);
      }
    });
    for (auto& list : channel_prefs) list.clear();
    offered.for_each([&](ChannelId m) { channel_prefs[m] = all_channel_prefs[m]; });
    const auto tenant_prefs = tenant_rankings(scenario, offered, a, context, rng);
    const Assignment round = gale_shapley_many_to_one(channel_prefs, tenant_prefs, 1);
    for (TenantId k = 0; k < scenario.n_tenants(); ++k) {
      const ChannelSet won = round.channels_of(k);
      a.assign_all(k, won);
      available = available - won;
    }
  }
  return a;
}

std::vector<ChannelId> ttc_round(std::span<const ChannelId> endowment,
                                 std::span<const ChannelRanking> prefs) {
  const std::size_t n = endowment.size();
  if (prefs.size() != n) throw std::invalid_argument("ttc_round: one preference list per participant");
  // owner of each endowed channel
  int max_id = -1;
  for (ChannelId m : endowment) max_id = std::max(max_id, m);
  std::vector<int> owner(static_cast<std::size_t>(max_id + 1), -1);
  for (std::size_t p = 0; p < n; ++p) {
    const ChannelId m = endowment[p];
    if (m < 0) throw std::out_of_range("ttc_round: negative channel id");
    if (owner[m] >= 0) throw std::invalid_argument("ttc_round: channel endowed twice");
    owner[m] = static_cast<int>(p);
  }

  std::vector<ChannelId> result(n, -1);
  std::vector<bool> active(n, true);
  std::vector<ChannelId> target(n, -1);
  std::vector<int> state(n, 0);  // 0 unvisited, 1 on current path, 2 done
  std::size_t remaining = n;
  auto still_owned = [&](ChannelId m) {
    return m >= 0 && m <= max_id && owner[m] >= 0 && active[owner[m]];
  };

  while (remaining > 0) {
    for (std::size_t p = 0; p < n; ++p) {
      if (!active[p]) continue;
      target[p] = -1;
      for (ChannelId m : prefs[p]) {
        if (still_owned(m)) {
          target[p] = m;
          break;
        }
      }
      if (target[p] < 0) throw std::invalid_argument("ttc_round: preference list misses endowed channels");
    }
    std::fill(state.begin(), state.end(), 0);
    std::vector<std::size_t> traded;
    for (std::size_t start = 0; start < n; ++start) {
      if (!active[start] || state[start] != 0) continue;
      std::vector<std::size_t> path;
      std::size_t p = start;
      while (state[p] == 0) {
        state[p] = 1;
        path.push_back(p);
        p = static_cast<std::size_t>(owner[target[p]]);
      }
      if (state[p] == 1) {
        // p closes a cycle; its members are the path suffix from p.
        auto it = std::find(path.begin(), path.end(), p);
        for (; it != path.end(); ++it) traded.push_back(*it);
      }
      for (std::size_t q : path) state[q] = 2;
    }
    for (std::size_t p : traded) result[p] = target[p];
    for (std::size_t p : traded) {
      active[p] = false;
      --remaining;
    }
  }
  return result;
}

Assignment allocate_ttc(const Scenario& scenario, Context context, Rng& rng) {
  const int n_t = scenario.n_tenants();
  Assignment a(n_t, scenario.n_channels());
  if (n_t == 0) return a;
  ChannelSet pool = scenario.all_channels();
  std::vector<TenantId> tenants = all_tenants(scenario);

  while (!pool.empty()) {
    // Remaining channels per BS, ascending.
    std::vector<std::vector<ChannelId>> by_bs(static_cast<std::size_t>(scenario.n_base_stations()));
    pool.for_each([&](ChannelId m) { by_bs[scenario.bs_of(m)].push_back(m); });
    std::vector<BsId> bs_order;
    for (BsId i = 0; i < scenario.n_base_stations(); ++i) {
      if (!by_bs[i].empty()) bs_order.push_back(i);
    }
    rng.shuffle(std::span<BsId>(bs_order));

    // Round-robin over BSs so a round spans as many BSs as possible.
    std::vector<ChannelId> selected;
    std::vector<std::size_t> taken(by_bs.size(), 0);
    const auto round_size = std::min<std::size_t>(static_cast<std::size_t>(n_t),
                                                  static_cast<std::size_t>(pool.size()));
    while (selected.size() < round_size) {
      for (BsId i : bs_order) {
        if (selected.size() == round_size) break;
        if (taken[i] < by_bs[i].size()) selected.push_back(by_bs[i][taken[i]++]);
      }
    }

    rng.shuffle(std::span<TenantId>(tenants));
    rng.shuffle(std::span<ChannelId>(selected));
    const ChannelSet offered = ChannelSet::of(selected);
    std::vector<ChannelRanking> prefs;
    prefs.reserve(selected.size());
    for (std::size_t p = 0; p < selected.size(); ++p) {
      const TenantId k = tenants[p];
      prefs.push_back(tenant_preferences(k, offered, a.channels_of(k), scenario, context, rng).ids);
    }
    const std::vector<ChannelId> outcome = ttc_round(selected, prefs);
    for (std::size_t p = 0; p < selected.size(); ++p) {
      a.assign(tenants[p], outcome[p]);
      pool.erase(outcome[p]);
    }
  }
  return a;
}

Preallocation gale_shapley_many_to_many(std::span<const TenantRanking> channel_prefs,
                                        std::span<const ChannelRanking> tenant_prefs,
                                        int channel_quota, int tenant_quota) {
  if (channel_quota < 1 || tenant_quota < 1) throw std::invalid_argument("quotas must be >= 1");
  const int n_ch = static_cast<int>(channel_prefs.size());
  const int n_t = static_cast<int>(tenant_prefs.size());
  if (n_ch > kMaxChannels) throw std::invalid_argument("too many channels");
  check_channel_lists(channel_prefs, n_t);
  const auto rank = tenant_rank_table(tenant_prefs, n_ch);

  std::vector<std::size_t> next(static_cast<std::size_t>(n_ch), 0);
  std::vector<int> holders(static_cast<std::size_t>(n_ch), 0);
  std::vector<std::vector<ChannelId>> held(static_cast<std::size_t>(n_t));
  std::deque<ChannelId> pending;
  for (ChannelId m = 0; m < n_ch; ++m) pending.push_back(m);

  const long long max_proposals = static_cast<long long>(n_ch) * n_t;
  long long proposals = 0;
  while (!pending.empty()) {
    const ChannelId m = pending.front();
    pending.pop_front();
    const TenantRanking& list = channel_prefs[m];
    while (holders[m] < channel_quota && next[m] < list.size()) {
      const TenantId k = list[next[m]++];
      if (++proposals > max_proposals) {
        throw std::logic_error("many-to-many deferred acceptance exceeded n_ch * n_T proposals");
      }
      if (rank[k][m] == kUnranked) continue;
      if (static_cast<int>(held[k].size()) < tenant_quota) {
        held[k].push_back(m);
        ++holders[m];
        continue;
      }
      const std::size_t w = worst_held(held[k], rank[k]);
      if (rank[k][m] < rank[k][held[k][w]]) {
        const ChannelId evicted = held[k][w];
        held[k][w] = m;
        ++holders[m];
        --holders[evicted];
        pending.push_back(evicted);
      }
    }
  }

  Preallocation out;
  out.sets.resize(static_cast<std::size_t>(n_t));
  for (TenantId k = 0; k < n_t; ++k) out.sets[k] = ChannelSet::of(held[k]);
  return out;
}

Preallocation preallocate(const Scenario& scenario, Context context, const Quotas& quotas, int cap,
                          Rng& rng) {
  if (quotas.tenant_quota > cap) {
    throw std::invalid_argument("tenant quota " + std::to_string(quotas.tenant_quota) +
                                " exceeds preallocation cap " + std::to_string(cap));
  }
  const auto channel_prefs = single_channel_rankings(scenario, context, rng);
  const Assignment empty(scenario.n_tenants(), scenario.n_channels());
  const auto tenant_prefs = tenant_rankings(scenario, scenario.all_channels(), empty, context, rng);
  Preallocation pre =
      gale_shapley_many_to_many(channel_prefs, tenant_prefs, quotas.channel_quota, quotas.tenant_quota);

  ChannelSet covered;
  for (ChannelSet s : pre.sets) covered = covered | s;
  const ChannelSet uncovered = scenario.all_channels() - covered;
  std::vector<TenantId> open;
  auto open_tenants = [&](ChannelId m) {
    open.clear();
    for (TenantId k = 0; k < scenario.n_tenants(); ++k) {
      if (pre.sets[k].size() < cap && !pre.sets[k].contains(m)) open.push_back(k);
    }
  };
  // Pass 1: one random holder per uncovered channel, so coverage comes first.
  uncovered.for_each([&](ChannelId m) {
    open_tenants(m);
    if (open.empty()) return;
    pre.sets[open[rng.uniform_index(open.size())]].insert(m);
  });
  // Pass 2: top up to min(q_ch, tenants with room) holders where caps allow.
  uncovered.for_each([&](ChannelId m) {
    open_tenants(m);
    int held = 0;
    for (const ChannelSet s : pre.sets) held += s.contains(m) ? 1 : 0;
    const int target = std::min(quotas.channel_quota, held + static_cast<int>(open.size()));
    // Partial shuffle: the first entries are a uniform sample.
    for (std::size_t i = 0; held < target; ++i, ++held) {
      const std::size_t j = i + rng.uniform_index(open.size() - i);
      std::swap(open[i], open[j]);
      pre.sets[open[i]].insert(m);
    }
  });
  return pre;
}

}  // namespace mcalloc
