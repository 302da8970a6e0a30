#include "mcalloc/ilp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_map>

namespace mcalloc::ilp {

void ZeroOneProgram::validate() const {
  const int n = n_vars();
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (const auto& row : le_rows) {
    for (int v : row) {
      if (v < 0 || v >= n) throw std::invalid_argument("le row references unknown variable");
      if (seen[v]) throw std::invalid_argument("le row lists a variable twice");
      seen[v] = 1;
    }
    for (int v : row) seen[v] = 0;
  }
  for (const GeRow& row : ge_rows) {
    if (row.vars.size() != row.coefs.size()) throw std::invalid_argument("ge row is ragged");
    for (int v : row.vars) {
      if (v < 0 || v >= n) throw std::invalid_argument("ge row references unknown variable");
    }
  }
}

bool is_feasible(const ZeroOneProgram& program, std::span<const int> x, double tolerance) {
  if (static_cast<int>(x.size()) != program.n_vars()) return false;
  for (int v : x) {
    if (v != 0 && v != 1) return false;
  }
  for (const auto& row : program.le_rows) {
    int used = 0;
    for (int v : row) used += x[v];
    if (used > 1) return false;
  }
  for (const GeRow& row : program.ge_rows) {
    double activity = 0.0;
    for (std::size_t i = 0; i < row.vars.size(); ++i) activity += row.coefs[i] * x[row.vars[i]];
    if (activity < row.rhs - tolerance) return false;
  }
  return true;
}

double objective_of(const ZeroOneProgram& program, std::span<const int> x) {
  double value = 0.0;
  for (int v = 0; v < program.n_vars(); ++v) {
    if (x[v] != 0) value += program.objective[v];
  }
  return value;
}

namespace {

// Improvement needed to replace the incumbent; also the pruning slack.
double improvement_threshold(double best) { return 1e-12 * std::max(1.0, std::abs(best)); }

class BranchAndBound {
 public:
  BranchAndBound(const ZeroOneProgram& program, const SolveOptions& options)
      : p_(program), budget_(options.node_budget) {
    const int n = p_.n_vars();
    var_rows_.resize(static_cast<std::size_t>(n));
    for (std::size_t r = 0; r < p_.le_rows.size(); ++r) {
      for (int v : p_.le_rows[r]) {
        auto& rows = var_rows_[v];
        if (rows.empty() || rows.back() != static_cast<int>(r)) rows.push_back(static_cast<int>(r));
      }
    }
    // Group by home row.
    std::vector<int> group_of_row(p_.le_rows.size(), -1);
    for (int v = 0; v < n; ++v) {
      if (var_rows_[v].empty()) {
        groups_.push_back({v});
        continue;
      }
      const int home = var_rows_[v].front();
      if (group_of_row[home] < 0) {
        group_of_row[home] = static_cast<int>(groups_.size());
        groups_.emplace_back();
      }
      groups_[group_of_row[home]].push_back(v);
    }
    for (auto& g : groups_) {
      std::stable_sort(g.begin(), g.end(),
                       [&](int a, int b) { return p_.objective[a] > p_.objective[b]; });
    }
    std::stable_sort(groups_.begin(), groups_.end(), [&](const auto& a, const auto& b) {
      return p_.objective[a.front()] > p_.objective[b.front()];
    });

    // Per ge row, coefficient of every variable (duplicates summed).
    ge_coef_.assign(p_.ge_rows.size(), std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (std::size_t r = 0; r < p_.ge_rows.size(); ++r) {
      const GeRow& row = p_.ge_rows[r];
      for (std::size_t i = 0; i < row.vars.size(); ++i) ge_coef_[r][row.vars[i]] += row.coefs[i];
    }
    var_ge_.resize(static_cast<std::size_t>(n));
    for (std::size_t r = 0; r < p_.ge_rows.size(); ++r) {
      for (int v = 0; v < n; ++v) {
        if (ge_coef_[r][v] != 0.0) var_ge_[v].push_back(static_cast<int>(r));
      }
    }
    // For each ge row, the groups that can raise its activity, members
    // ordered by descending positive coefficient.
    ge_reach_.resize(p_.ge_rows.size());
    for (std::size_t r = 0; r < p_.ge_rows.size(); ++r) {
      for (std::size_t g = 0; g < groups_.size(); ++g) {
        std::vector<int> members;
        for (int v : groups_[g]) {
          if (ge_coef_[r][v] > 0.0) members.push_back(v);
        }
        if (members.empty()) continue;
        std::stable_sort(members.begin(), members.end(),
                         [&](int a, int b) { return ge_coef_[r][a] > ge_coef_[r][b]; });
        ge_reach_[r].push_back({g, std::move(members)});
      }
    }
    row_used_.assign(p_.le_rows.size(), 0);
    ge_activity_.assign(p_.ge_rows.size(), 0.0);
    x_.assign(static_cast<std::size_t>(n), 0);
  }

  SolveResult run() {
    dfs(0);
    SolveResult r;
    r.nodes_explored = nodes_;
    if (have_best_) {
      r.status = SolveStatus::Optimal;
      r.solution = best_x_;
      r.objective_value = objective_of(p_, best_x_);
    }
    return r;
  }

 private:
  bool compatible(int v) const {
    for (int r : var_rows_[v]) {
      if (row_used_[r]) return false;
    }
    return true;
  }

  void set(int v, int on) {
    x_[v] = on;
    const int delta = on ? 1 : -1;
    for (int r : var_rows_[v]) row_used_[r] = static_cast<char>(row_used_[r] + delta);
    for (int r : var_ge_[v]) ge_activity_[r] += delta * ge_coef_[r][v];
    value_ += delta * p_.objective[v];
  }

  bool prune(std::size_t depth) const {
    if (have_best_) {
      double bound = value_;
      for (std::size_t d = depth; d < groups_.size(); ++d) {
        for (int v : groups_[d]) {
          if (p_.objective[v] <= 0.0) break;
          if (compatible(v)) {
            bound += p_.objective[v];
            break;
          }
        }
      }
      if (bound <= best_value_ + improvement_threshold(best_value_)) return true;
    }
    for (std::size_t r = 0; r < p_.ge_rows.size(); ++r) {
      double reach = ge_activity_[r];
      for (const GroupReach& gr : ge_reach_[r]) {
        if (gr.group < depth) continue;
        for (int v : gr.members) {
          if (compatible(v)) {
            reach += ge_coef_[r][v];
            break;
          }
        }
      }
      if (reach < p_.ge_rows[r].rhs - kFeasibilityTolerance) return true;
    }
    return false;
  }

  void dfs(std::size_t depth) {
    if (++nodes_ > budget_) {
      throw SolverFault("branch and bound exhausted its budget of " + std::to_string(budget_) +
                        " nodes");
    }
    if (depth == groups_.size()) {
      for (std::size_t r = 0; r < p_.ge_rows.size(); ++r) {
        if (ge_activity_[r] < p_.ge_rows[r].rhs - kFeasibilityTolerance) return;
      }
      if (!have_best_ || value_ > best_value_ + improvement_threshold(best_value_)) {
        have_best_ = true;
        best_value_ = value_;
        best_x_ = x_;
      }
      return;
    }
    if (prune(depth)) return;
    for (int v : groups_[depth]) {
      if (!compatible(v)) continue;
      set(v, 1);
      dfs(depth + 1);
      set(v, 0);
    }
    dfs(depth + 1);
  }

  struct GroupReach {
    std::size_t group;
    std::vector<int> members;
  };

  const ZeroOneProgram& p_;
  std::uint64_t budget_;
  std::vector<std::vector<int>> var_rows_;
  std::vector<std::vector<int>> groups_;
  std::vector<std::vector<double>> ge_coef_;
  std::vector<std::vector<int>> var_ge_;
  std::vector<std::vector<GroupReach>> ge_reach_;
  std::vector<char> row_used_;
  std::vector<double> ge_activity_;
  std::vector<int> x_;
  double value_ = 0.0;
  std::uint64_t nodes_ = 0;
  bool have_best_ = false;
  double best_value_ = -std::numeric_limits<double>::infinity();
  std::vector<int> best_x_;
};


// Memoized search over the same groups. Valid when the le rows fit in a 64-bit
// mask and each ge row only touches one group: a group then contributes at
// most one variable, so such a row is a filter on that group's choice, and the
// best completion from group d depends only on which rows later groups can
// still use.
class GroupDp {
 public:
  static bool applicable(const ZeroOneProgram& p) { return p.le_rows.size() <= 64; }

  GroupDp(const ZeroOneProgram& program, const SolveOptions& options)
      : p_(program), budget_(options.node_budget) {
    const int n = p_.n_vars();
    row_mask_.assign(static_cast<std::size_t>(n), 0);
    std::vector<int> home(static_cast<std::size_t>(n), -1);
    for (std::size_t r = 0; r < p_.le_rows.size(); ++r) {
      for (int v : p_.le_rows[r]) {
        row_mask_[v] |= std::uint64_t{1} << r;
        if (home[v] < 0) home[v] = static_cast<int>(r);
      }
    }
    std::vector<int> group_of_row(p_.le_rows.size(), -1);
    for (int v = 0; v < n; ++v) {
      if (home[v] < 0) {
        groups_.push_back({v});
        continue;
      }
      if (group_of_row[home[v]] < 0) {
        group_of_row[home[v]] = static_cast<int>(groups_.size());
        groups_.emplace_back();
      }
      groups_[group_of_row[home[v]]].push_back(v);
    }
    for (auto& g : groups_) {
      std::stable_sort(g.begin(), g.end(),
                       [&](int a, int b) { return p_.objective[a] > p_.objective[b]; });
    }
    std::stable_sort(groups_.begin(), groups_.end(), [&](const auto& a, const auto& b) {
      return p_.objective[a.front()] > p_.objective[b.front()];
    });
    std::vector<int> group_of_var(static_cast<std::size_t>(n), -1);
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      for (int v : groups_[g]) group_of_var[v] = static_cast<int>(g);
    }

    // Fold ge rows into per-group filters.
    allowed_.resize(groups_.size());
    none_allowed_.assign(groups_.size(), 1);
    for (std::size_t g = 0; g < groups_.size(); ++g) allowed_[g].assign(groups_[g].size(), 1);
    std::vector<double> coef(static_cast<std::size_t>(n), 0.0);
    for (const GeRow& row : p_.ge_rows) {
      int g = -1;
      bool spans = false;
      for (std::size_t i = 0; i < row.vars.size(); ++i) {
        coef[row.vars[i]] += row.coefs[i];
        const int gv = group_of_var[row.vars[i]];
        if (g < 0) g = gv;
        if (gv != g) spans = true;
      }
      if (spans) {
        for (int v : row.vars) coef[v] = 0.0;
        ok_ = false;
        return;
      }
      if (g == -1) {
        if (0.0 < row.rhs - kFeasibilityTolerance) infeasible_ = true;
        continue;
      }
      for (std::size_t i = 0; i < groups_[g].size(); ++i) {
        if (coef[groups_[g][i]] < row.rhs - kFeasibilityTolerance) allowed_[g][i] = 0;
      }
      if (0.0 < row.rhs - kFeasibilityTolerance) none_allowed_[g] = 0;
      for (int v : row.vars) coef[v] = 0.0;
    }

    future_.assign(groups_.size() + 1, 0);
    for (std::size_t g = groups_.size(); g-- > 0;) {
      future_[g] = future_[g + 1];
      for (int v : groups_[g]) future_[g] |= row_mask_[v];
    }
    memo_.resize(groups_.size());
  }

  bool ok() const { return ok_; }

  SolveResult run() {
    SolveResult r;
    if (infeasible_) return r;
    const double value = best(0, 0);
    r.nodes_explored = nodes_;
    if (value == kNone) return r;
    r.status = SolveStatus::Optimal;
    r.solution.assign(static_cast<std::size_t>(p_.n_vars()), 0);
    std::uint64_t used = 0;
    for (std::size_t d = 0; d < groups_.size(); ++d) {
      const int choice = memo_[d].at(used & future_[d]).choice;
      if (choice >= 0) {
        const int v = groups_[d][choice];
        r.solution[v] = 1;
        used |= row_mask_[v];
      }
    }
    r.objective_value = objective_of(p_, r.solution);
    return r;
  }

 private:
  static constexpr double kNone = -std::numeric_limits<double>::infinity();

  struct Entry {
    double value;
    int choice;  // member index, -1 for none
  };

  double best(std::size_t d, std::uint64_t used) {
    if (d == groups_.size()) return 0.0;
    const std::uint64_t key = used & future_[d];
    if (auto it = memo_[d].find(key); it != memo_[d].end()) return it->second.value;
    if (++nodes_ > budget_) {
      throw SolverFault("winner determination exhausted its budget of " + std::to_string(budget_) +
                        " states");
    }
    Entry e{kNone, -1};
    const auto& members = groups_[d];
    for (std::size_t i = 0; i < members.size(); ++i) {
      const int v = members[i];
      if (!allowed_[d][i] || (row_mask_[v] & key) != 0) continue;
      const double rest = best(d + 1, key | row_mask_[v]);
      if (rest == kNone) continue;
      const double total = p_.objective[v] + rest;
      if (e.value == kNone || total > e.value + improvement_threshold(e.value)) {
        e = {total, static_cast<int>(i)};
      }
    }
    if (none_allowed_[d]) {
      const double rest = best(d + 1, key);
      if (rest != kNone && (e.value == kNone || rest > e.value + improvement_threshold(e.value))) {
        e = {rest, -1};
      }
    }
    memo_[d].emplace(key, e);
    return e.value;
  }

  const ZeroOneProgram& p_;
  std::uint64_t budget_;
  bool ok_ = true;
  bool infeasible_ = false;
  std::vector<std::uint64_t> row_mask_;
  std::vector<std::vector<int>> groups_;
  std::vector<std::vector<char>> allowed_;
  std::vector<char> none_allowed_;
  std::vector<std::uint64_t> future_;
  std::vector<std::unordered_map<std::uint64_t, Entry>> memo_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

SolveResult solve(const ZeroOneProgram& program, const SolveOptions& options) {
  program.validate();
  if (GroupDp::applicable(program)) {
    GroupDp dp(program, options);
    if (dp.ok()) return dp.run();
  }
  return BranchAndBound(program, options).run();
}

SolveResult brute_force(const ZeroOneProgram& program) {
  program.validate();
  const int n = program.n_vars();
  if (n > 25) {
    throw std::invalid_argument("brute_force: " + std::to_string(n) + " variables, limit is 25");
  }
  std::vector<std::vector<int>> var_rows(static_cast<std::size_t>(n));
  for (std::size_t r = 0; r < program.le_rows.size(); ++r) {
    for (int v : program.le_rows[r]) var_rows[v].push_back(static_cast<int>(r));
  }
  std::vector<int> used(program.le_rows.size(), 0);
  std::vector<int> x(static_cast<std::size_t>(n), 0);
  SolveResult best;
  bool found = false;

  // Every le-feasible vector is visited: a set-packing row violated by a
  // partial vector stays violated, so cutting there loses nothing.
  auto visit = [&](auto&& self, int v) -> void {
    ++best.nodes_explored;
    if (v == n) {
      if (!is_feasible(program, x)) return;
      const double value = objective_of(program, x);
      if (!found || value > best.objective_value) {
        found = true;
        best.objective_value = value;
        best.solution = x;
      }
      return;
    }
    self(self, v + 1);
    bool ok = true;
    for (int r : var_rows[v]) ok = ok && used[r] == 0;
    if (!ok) return;
    for (int r : var_rows[v]) ++used[r];
    x[v] = 1;
    self(self, v + 1);
    x[v] = 0;
    for (int r : var_rows[v]) --used[r];
  };
  visit(visit, 0);
  best.status = found ? SolveStatus::Optimal : SolveStatus::Infeasible;
  if (!found) best.objective_value = 0.0;
  return best;
}

}  // namespace mcalloc::ilp
