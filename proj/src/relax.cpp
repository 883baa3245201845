#include "vbp/relax.hpp"

#include <algorithm>
#include <cmath>

namespace vbp {

double FractionalSolution::column_sum(std::size_t j) const {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i * m + j];
  return s;
}

LpModel build_assignment_lp(const Instance& inst, std::size_t m) {
  if (m == 0) throw Error("bin count must be positive");
  const std::size_t n = inst.size();
  const std::size_t d = inst.dims();
  LpModel model;
  model.num_vars = n * m;
  model.rows.reserve(n + m * d);

  for (std::size_t i = 0; i < n; ++i) {
    std::vector<LpTerm> terms;
    terms.reserve(m);
    for (std::size_t j = 0; j < m; ++j) terms.push_back({assignment_var(i, j, m), 1.0});
    model.add_row(std::move(terms), Relation::Equal, 1.0);
  }
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = 0; k < d; ++k) {
      std::vector<LpTerm> terms;
      for (std::size_t i = 0; i < n; ++i) {
        const double p = inst.item(i)[k];
        if (p != 0.0) terms.push_back({assignment_var(i, j, m), p});
      }
      model.add_row(std::move(terms), Relation::LessEqual, 1.0);
    }
  }
  return model;
}

namespace {

// Starting basis for the simplex: each item's row takes the variable of the
// bin whose peak load grows least, largest items first. Capacity rows keep
// their slacks; overloaded ones get artificials inside the solver.
std::vector<std::size_t> balanced_start(const Instance& inst, std::size_t m) {
  const std::size_t d = inst.dims();
  std::vector<std::size_t> start(inst.size() + m * d, kNoStart);
  std::vector<double> load(m * d, 0.0);
  for (std::size_t i : decreasing_max_order(inst)) {
    const auto p = inst.item(i);
    std::size_t best = 0;
    double best_peak = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      double peak = 0.0;
      for (std::size_t k = 0; k < d; ++k) peak = std::max(peak, load[j * d + k] + p[k]);
      if (j == 0 || peak < best_peak) {
        best = j;
        best_peak = peak;
      }
    }
    for (std::size_t k = 0; k < d; ++k) load[best * d + k] += p[k];
    start[i] = assignment_var(i, best, m);
  }
  return start;
}

}  // namespace

std::size_t relaxation_bound(const Instance& inst) {
  if (inst.empty()) return 0;
  return std::max<std::size_t>(1, volume_lower_bound(inst));
}

RelaxResult min_feasible_bins(const Instance& inst, const SimplexOptions& opts) {
  RelaxResult result;
  if (inst.empty()) return result;

  const std::size_t n = inst.size();
  auto probe = [&](std::size_t m, FractionalSolution& out) {
    ++result.lp_solves;
    const auto outcome = solve(build_assignment_lp(inst, m), opts, balanced_start(inst, m));
    if (outcome.status != LpStatus::Feasible) return false;
    out = FractionalSolution{n, m, outcome.values};
    return true;
  };

  std::size_t lo = std::max<std::size_t>(1, volume_lower_bound(inst));
  std::size_t hi = std::max(lo, first_fit(inst).bin_count);

  FractionalSolution best;
  if (probe(lo, best)) {
    result.m_prime = lo;
    result.solution = std::move(best);
    return result;
  }
  ++lo;
  bool have_hi = false;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    FractionalSolution sol;
    if (probe(mid, sol)) {
      hi = mid;
      best = std::move(sol);
      have_hi = true;
    } else {
      lo = mid + 1;
    }
  }
  if (!have_hi || best.m != hi) {
    if (!probe(hi, best)) throw Error("assignment LP infeasible at the first-fit bin count");
  }
  result.m_prime = hi;
  result.solution = std::move(best);
  return result;
}

SupportStats support_stats(const FractionalSolution& sol) {
  SupportStats stats;
  for (std::size_t i = 0; i < sol.n; ++i) {
    std::size_t positive = 0;
    for (std::size_t j = 0; j < sol.m; ++j)
      if (sol(i, j) > 0.0) ++positive;
    if (positive >= 2)
      ++stats.fractional_items;
    else
      ++stats.integral_items;
  }
  return stats;
}

double assignment_residual(const Instance& inst, const FractionalSolution& sol) {
  if (sol.n != inst.size()) throw Error("solution size does not match instance");
  const std::size_t d = inst.dims();
  double worst = 0.0;
  for (double v : sol.x) worst = std::max(worst, -v);
  for (std::size_t i = 0; i < sol.n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < sol.m; ++j) s += sol(i, j);
    worst = std::max(worst, std::abs(s - 1.0));
  }
  for (std::size_t j = 0; j < sol.m; ++j)
    for (std::size_t k = 0; k < d; ++k) {
      double load = 0.0;
      for (std::size_t i = 0; i < sol.n; ++i) load += inst.item(i)[k] * sol(i, j);
      worst = std::max(worst, load - 1.0);
    }
  return worst;
}

}  // namespace vbp
