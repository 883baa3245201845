#include "vbp/dual.hpp"

#include <cmath>

namespace vbp {

DualWeights dual_weights(const FractionalSolution& sol) {
  DualWeights w{sol.n, sol.m, std::vector<double>(sol.n * sol.m, 0.0)};
  for (std::size_t j = 0; j < sol.m; ++j) {
    const double s = sol.column_sum(j);
    if (s <= 0.0) continue;
    for (std::size_t i = 0; i < sol.n; ++i) w.z[i * sol.m + j] = sol(i, j) / s;
  }
  return w;
}

double bin_utility(const FractionalSolution& sol, const DualWeights& w, std::size_t j) {
  if (j >= sol.m) throw BadBinIndex(j);
  double u = 0.0;
  for (std::size_t i = 0; i < sol.n; ++i) u += sol(i, j) * w(i, j);
  return u;
}

double dual_objective(const FractionalSolution& sol, const DualWeights& w) {
  double total = 0.0;
  for (std::size_t j = 0; j < sol.m; ++j) total += bin_utility(sol, w, j);
  return total;
}

double objective_floor(std::size_t n, std::size_t d, std::size_t m) {
  if (n == 0 || m == 0) throw Error("objective_floor needs n > 0 and m > 0");
  const double nn = static_cast<double>(n);
  const double dm = static_cast<double>(d) * static_cast<double>(m);
  const double mm = static_cast<double>(m);
  return 1.0 + mm * (1.0 - dm / nn) * (1.0 - 2.0 / mm);
}

DualStats dual_stats(const FractionalSolution& sol, std::size_t d) {
  const auto w = dual_weights(sol);
  DualStats stats;
  stats.per_bin_utility.resize(sol.m);
  stats.column_mean.resize(sol.m);
  stats.column_rms.resize(sol.m);
  stats.column_sigma.resize(sol.m);
  const double n = static_cast<double>(sol.n);
  for (std::size_t j = 0; j < sol.m; ++j) {
    stats.per_bin_utility[j] = bin_utility(sol, w, j);
    stats.objective += stats.per_bin_utility[j];
    if (sol.n == 0) continue;
    double sum = 0.0, sq = 0.0;
    for (std::size_t i = 0; i < sol.n; ++i) {
      sum += sol(i, j);
      sq += sol(i, j) * sol(i, j);
    }
    const double mean = sum / n;
    double dev = 0.0;
    for (std::size_t i = 0; i < sol.n; ++i) dev += (sol(i, j) - mean) * (sol(i, j) - mean);
    stats.column_mean[j] = mean;
    stats.column_rms[j] = std::sqrt(sq / n);
    stats.column_sigma[j] = std::sqrt(dev / n);
  }
  if (sol.n > 0 && sol.m > 0) stats.objective_floor = objective_floor(sol.n, d, sol.m);
  return stats;
}

double column_value(const std::vector<double>& column) {
  double sum = 0.0, sq = 0.0;
  for (double v : column) {
    sum += v;
    sq += v * v;
  }
  return sum > 0.0 ? sq / sum : 0.0;
}

}  // namespace vbp
