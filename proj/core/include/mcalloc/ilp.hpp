#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace mcalloc::ilp {

// Linear row  sum coefs[i] * x[vars[i]] >= rhs.
struct GeRow {
  std::vector<int> vars;
  std::vector<double> coefs;
  double rhs = 0.0;
};

// maximize objective . x  over x in {0,1}^n
// subject to  sum_{v in row} x_v <= 1  for every le row (set packing)
//             every ge row
struct ZeroOneProgram {
  std::vector<double> objective;
  std::vector<std::vector<int>> le_rows;
  std::vector<GeRow> ge_rows;

  int n_vars() const { return static_cast<int>(objective.size()); }
  // Throws std::invalid_argument on out-of-range variables or ragged rows.
  void validate() const;
};

enum class SolveStatus { Optimal, Infeasible };

struct SolveResult {
  SolveStatus status = SolveStatus::Infeasible;
  std::vector<int> solution;  // 0/1 per variable when Optimal
  double objective_value = 0.0;
  std::uint64_t nodes_explored = 0;
};

struct SolveOptions {
  std::uint64_t node_budget = 100'000'000;
};

// Raised instead of returning a possibly suboptimal answer.
class SolverFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kFeasibilityTolerance = 1e-9;

// Exact depth-first branch and bound.
//
// Variables are grouped by the first le row that contains them (variables in
// no le row form singleton groups). At most one variable per group can be 1,
// so the sum over open groups of their best still-compatible objective value
// bounds any completion. For a winner determination model whose first rows
// are the one-bundle-per-bidder rows, groups are exactly the bidders. Groups
// are branched in order of their best value, members in descending objective
// order, "none" last. Ge rows prune a node when even the best compatible
// choice in each open group cannot reach the right-hand side.
//
// When the le rows fit in a 64-bit mask and every ge row stays inside one
// group, the same group order is searched with memoization on the set of rows
// still usable by later groups instead, which is exact for that shape and
// much faster on winner determination models.
//
// Deterministic for a given program. Throws SolverFault when the node (or
// memo state) budget runs out.
SolveResult solve(const ZeroOneProgram& program, const SolveOptions& options = {});

// Exhaustive enumeration of every le-feasible 0/1 vector. Reference
// semantics for solve(); limited to 25 variables.
SolveResult brute_force(const ZeroOneProgram& program);

bool is_feasible(const ZeroOneProgram& program, std::span<const int> x,
                 double tolerance = kFeasibilityTolerance);
double objective_of(const ZeroOneProgram& program, std::span<const int> x);

}  // namespace mcalloc::ilp
