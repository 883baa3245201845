#pragma once

#include <cstddef>
#include <vector>

#include "vbp/relax.hpp"

namespace vbp {

/// Column-normalized multipliers z(i, j) = x(i, j) / sum_i x(i, j).
/// A column with zero sum gets an all-zero z column.
struct DualWeights {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<double> z;  // row-major n x m

  double operator()(std::size_t i, std::size_t j) const { return z[i * m + j]; }
};

/// Diagnostics of a fractional solution under its normalized weights.
///
/// Column statistics run over all n entries of a column, zeros included, so
/// that the column mean of a fully assigned solution averages to 1/m.
struct DualStats {
  double objective = 0.0;                // sum_ij x z
  std::vector<double> per_bin_utility;   // sum_i x z for each bin
  std::vector<double> column_mean;
  std::vector<double> column_rms;
  std::vector<double> column_sigma;      // population standard deviation
  double objective_floor = 0.0;          // see objective_floor()
};

DualWeights dual_weights(const FractionalSolution& sol);

/// sum_j (sum_i x_ij^2) / (sum_i x_ij) over columns with positive sum.
double dual_objective(const FractionalSolution& sol, const DualWeights& w);

/// The j-th summand of the objective, sum_i x_ij z_ij. Throws BadBinIndex.
double bin_utility(const FractionalSolution& sol, const DualWeights& w, std::size_t j);

/// 1 + m (1 - d m / n) (1 - 2 / m): the estimated floor on the objective of a
/// vertex solution when n is much larger than d m. Reported, never enforced:
/// its derivation assumes structure a general vertex need not have.
double objective_floor(std::size_t n, std::size_t d, std::size_t m);

DualStats dual_stats(const FractionalSolution& sol, std::size_t d);

/// (sum x^2) / (sum x) of one column; 0 for a zero column.
double column_value(const std::vector<double>& column);

}  // namespace vbp
