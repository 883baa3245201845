#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vbp/core.hpp"

namespace vbp {

/// Raised when the simplex iteration cap is hit. Indicates numerical trouble.
class CycleGuardExceeded : public Error {
 public:
  explicit CycleGuardExceeded(std::size_t iterations);
  std::size_t iterations;
};

enum class Relation { LessEqual, Equal };

struct LpTerm {
  std::size_t var;
  double coef;
};

struct LpRow {
  std::vector<LpTerm> terms;  // sparse; absent variables have coefficient 0
  Relation relation = Relation::LessEqual;
  double rhs = 0.0;
};

/// min objective.x subject to rows, x >= 0.
struct LpModel {
  std::size_t num_vars = 0;
  std::vector<LpRow> rows;
  std::vector<double> objective;  // empty means all zero

  void add_row(std::vector<LpTerm> terms, Relation rel, double rhs);
  void add_dense_row(std::span<const double> coefs, Relation rel, double rhs);

  /// Throws Error if a term references a variable >= num_vars or the
  /// objective has the wrong length.
  void check() const;
};

enum class LpStatus { Feasible, Infeasible, Unbounded };

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> values;      // length num_vars; a vertex when Feasible
  std::vector<std::size_t> basis;  // basic structural variables, ascending
  double objective_value = 0.0;
  std::size_t iterations = 0;
};

struct SimplexOptions {
  double feasibility_tol = 1e-7;  // phase-1 residual accepted as feasible
  double zero_snap = 1e-9;        // |value| below this is reported as 0
  double pivot_tol = 1e-9;
  double cost_tol = 1e-9;
  std::size_t degenerate_streak = 20;  // switch to Bland's rule after this many
  std::size_t iteration_cap = 0;       // 0: 50 * (rows + vars)
};

/// No start column for a row.
inline constexpr std::size_t kNoStart = static_cast<std::size_t>(-1);

/// Two-phase revised simplex on a dense explicit basis inverse.
///
/// Returns a basic feasible solution, so at most rows.size() structural
/// values are nonzero. Pricing is Dantzig's rule; after `degenerate_streak`
/// consecutive zero-length steps it switches to Bland's rule until a step
/// makes progress. Deterministic for a given model and start.
///
/// `start`, if nonempty, has one entry per row: a structural column to place
/// in the initial basis for that row, or kNoStart to keep the row's slack or
/// artificial. Slack rows left negative by the start get an artificial with
/// coefficient -1 instead. A singular start, or one that puts a structural
/// column at a negative value, is discarded.
LpOutcome solve(const LpModel& model, const SimplexOptions& opts = {},
                std::span<const std::size_t> start = {});

/// Largest constraint violation of `values` (0 when every row holds).
/// Negative variables count as violations of x >= 0.
double residual_check(const LpModel& model, std::span<const double> values);

}  // namespace vbp
