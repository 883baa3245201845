#include <algorithm>

#include "doctest.h"
#include "oracles.hpp"
#include "vbp/gen.hpp"
#include "vbp/relax.hpp"

using namespace vbp;

namespace {

std::size_t count_rows(const LpModel& m, Relation rel) {
  return static_cast<std::size_t>(
      std::count_if(m.rows.begin(), m.rows.end(), [rel](const LpRow& r) { return r.relation == rel; }));
}

// Items with two or more positive entries, counted straight from the matrix.
std::size_t split_items(const FractionalSolution& s) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < s.n; ++i) {
    std::size_t pos = 0;
    for (std::size_t j = 0; j < s.m; ++j) pos += s.x[i * s.m + j] > 0.0;
    count += pos >= 2;
  }
  return count;
}

}  // namespace

TEST_CASE("build_assignment_lp shape") {
  const auto a = build_assignment_lp(Instance::validate(1, {{0.5}, {0.7}}), 2);
  CHECK(a.num_vars == 4);
  CHECK(count_rows(a, Relation::Equal) == 2);
  CHECK(count_rows(a, Relation::LessEqual) == 2);

  const auto b = build_assignment_lp(Instance::validate(2, {{0.1, 0.2}, {0.3, 0.4}, {0.5, 0.6}}), 2);
  CHECK(b.num_vars == 6);
  CHECK(count_rows(b, Relation::Equal) == 3);
  CHECK(count_rows(b, Relation::LessEqual) == 4);
  // Row-major (item, bin) variables; capacity row for bin 1, dim 0 is row 3 + 2.
  CHECK(b.rows[0].terms[1].var == assignment_var(0, 1, 2));
  CHECK(b.rows[5].terms[2].var == assignment_var(2, 1, 2));
  CHECK(b.rows[5].terms[2].coef == 0.5);

  const auto empty = build_assignment_lp(Instance::validate(2, {}), 3);
  CHECK(count_rows(empty, Relation::Equal) == 0);
  CHECK(solve(empty).status == LpStatus::Feasible);

  CHECK_THROWS_AS(build_assignment_lp(Instance::validate(1, {{0.5}}), 0), Error);
}

TEST_CASE("min_feasible_bins: three items of 0.6") {
  const auto inst = Instance::validate(1, {{0.6}, {0.6}, {0.6}});
  // Witness at m = 2: item 2 puts 0.4 of load in bin 0 and 0.2 in bin 1.
  const std::vector<double> witness{1, 0, 0, 1, 0.4 / 0.6, 0.2 / 0.6};
  CHECK(residual_check(build_assignment_lp(inst, 2), witness) <= 1e-12);
  // At m = 1 the single capacity row would need 1.8 <= 1.
  CHECK(solve(build_assignment_lp(inst, 1)).status == LpStatus::Infeasible);

  const auto r = min_feasible_bins(inst);
  CHECK(r.m_prime == 2);
  CHECK(r.solution.m == 2);
  CHECK(assignment_residual(inst, r.solution) <= 1e-7);
}

TEST_CASE("min_feasible_bins: full items and empty instance") {
  const auto full = Instance::validate(2, {{1, 1}, {1, 1}, {1, 1}});
  CHECK(min_feasible_bins(full).m_prime == 3);
  const auto none = min_feasible_bins(Instance::validate(2, {}));
  CHECK(none.m_prime == 0);
  CHECK(none.solution.x.empty());
}

TEST_CASE("support_stats") {
  FractionalSolution integral{3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 1}};
  auto s = support_stats(integral);
  CHECK(s.fractional_items == 0);
  CHECK(s.integral_items == 3);

  FractionalSolution split{3, 2, {1, 0, 0.4, 0.6, 0, 1}};
  s = support_stats(split);
  CHECK(s.fractional_items == 1);
  CHECK(s.integral_items == 2);
}

TEST_CASE("vertex solution of a 30-item, d=2, m'=3 instance has at most 6 split items") {
  const auto inst = gen_uniform(30, 2, 0.15, 11);
  const auto r = min_feasible_bins(inst);
  REQUIRE(r.m_prime == 3);
  const auto s = support_stats(r.solution);
  CHECK(s.fractional_items == split_items(r.solution));
  CHECK(s.fractional_items + s.integral_items == 30);
  CHECK(s.fractional_items <= 6);
}

TEST_CASE("relaxation properties on random small instances") {
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    Rng rng(seed);
    const std::size_t n = 1 + rng.below(8);
    const std::size_t d = 1 + rng.below(3);
    const auto inst = gen_uniform(n, d, 0.2 + 0.8 * rng.uniform(), seed + 1000);
    const auto r = min_feasible_bins(inst);
    const auto opt = testing::enumerate_opt(inst);

    CHECK(volume_lower_bound(inst) <= r.m_prime);
    CHECK(r.m_prime <= first_fit(inst).bin_count);
    CHECK(r.m_prime <= opt);
    CHECK(r.m_prime == relaxation_bound(inst));
    CHECK(assignment_residual(inst, r.solution) <= 1e-7);
    CHECK(support_stats(r.solution).fractional_items <= d * r.m_prime);
    if (r.m_prime >= 2)
      CHECK(solve(build_assignment_lp(inst, r.m_prime - 1)).status == LpStatus::Infeasible);
  }
}

TEST_CASE("larger instances keep the vertex support bound") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto inst = gen_uniform(60 + 10 * seed, 1 + seed % 4, 0.2, seed);
    const auto r = min_feasible_bins(inst);
    CHECK(r.lp_solves == 1);
    CHECK(assignment_residual(inst, r.solution) <= 1e-7);
    CHECK(support_stats(r.solution).fractional_items <= inst.dims() * r.m_prime);
  }
}
