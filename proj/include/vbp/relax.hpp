#pragma once

#include <cstddef>
#include <vector>

#include "vbp/core.hpp"
#include "vbp/simplex.hpp"

namespace vbp {

/// LP assignment of n items to m bins; x(i, j) is the fraction of item i in bin j.
struct FractionalSolution {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<double> x;  // row-major n x m

  double operator()(std::size_t i, std::size_t j) const { return x[i * m + j]; }
  double& operator()(std::size_t i, std::size_t j) { return x[i * m + j]; }

  /// Sum over items of column j.
  double column_sum(std::size_t j) const;
};

struct SupportStats {
  std::size_t fractional_items = 0;  // two or more positive entries
  std::size_t integral_items = 0;    // exactly one positive entry
};

/// Variable index of x(i, j) in the assignment LP.
inline std::size_t assignment_var(std::size_t i, std::size_t j, std::size_t m) { return i * m + j; }

/// Feasibility LP for packing `inst` fractionally into m bins.
///
/// Rows 0..n-1 are the equalities sum_j x(i,j) = 1. Rows n + j*d + k are the
/// capacity rows sum_i p_ik x(i,j) <= 1. The objective is zero.
LpModel build_assignment_lp(const Instance& inst, std::size_t m);

struct RelaxResult {
  std::size_t m_prime = 0;
  FractionalSolution solution;
  std::size_t lp_solves = 0;
};

/// Least m for which the assignment LP is feasible, with the vertex solution at that m.
///
/// Searches [max(1, volume bound), first-fit count]. The low end is probed
/// first, then the interval is bisected. Feasibility is monotone in m since
/// an extra empty bin keeps any solution feasible.
RelaxResult min_feasible_bins(const Instance& inst, const SimplexOptions& opts = {});

/// max(1, volume bound) for nonempty instances, 0 otherwise.
///
/// Equals the LP's least feasible m: spreading every item evenly (x = 1/m)
/// satisfies all rows as soon as m covers each column sum, and summing the
/// capacity rows over bins shows no smaller m works.
std::size_t relaxation_bound(const Instance& inst);

/// Counts split versus whole items.
SupportStats support_stats(const FractionalSolution& sol);

/// Worst violation of the assignment and capacity rows (and x >= 0).
double assignment_residual(const Instance& inst, const FractionalSolution& sol);

}  // namespace vbp
