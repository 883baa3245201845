#include "doctest.h"
#include "oracles.hpp"
#include "vbp/exact.hpp"
#include "vbp/gen.hpp"

using namespace vbp;

TEST_CASE("small hand-checked optima") {
  auto proved = [](const Instance& inst) {
    const auto r = brute_force_opt(inst);
    CHECK(r.status == ExactStatus::Proved);
    CHECK(check_packing(inst, r.packing).valid);
    CHECK(r.packing.bin_count == r.opt);
    return r.opt;
  };
  CHECK(proved(Instance::validate(1, {{0.6}, {0.6}, {0.6}})) == 3);
  CHECK(proved(Instance::validate(2, {{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}})) == 2);
  CHECK(proved(Instance::validate(2, {{0.6, 0.1}, {0.1, 0.6}, {0.6, 0.1}, {0.1, 0.6}})) == 2);
  CHECK(proved(Instance::validate(3, {})) == 0);
  CHECK(proved(Instance::validate(1, {{0.0}})) == 1);
}

TEST_CASE("first-fit in decreasing order is beaten when it should be") {
  // Decreasing first-fit: .5 .4 .3 .3 -> [.5 .4] [.3 .3 ...] uses 3 bins here,
  // while {.5 .3 .2} {.4 .3 .3} fits in 2.
  const auto inst = Instance::validate(1, {{0.5}, {0.4}, {0.3}, {0.3}, {0.3}, {0.2}});
  CHECK(first_fit(inst, decreasing_max_order(inst)).bin_count == 3);
  CHECK(testing::enumerate_opt(inst) == 2);
  CHECK(brute_force_opt(inst).opt == 2);
}

TEST_CASE("agrees with set-partition enumeration") {
  for (std::uint64_t seed = 1; seed <= 250; ++seed) {
    Rng rng(seed);
    const std::size_t n = 1 + rng.below(8);
    const std::size_t d = 1 + rng.below(3);
    const auto inst = gen_uniform(n, d, 0.2 + 0.8 * rng.uniform(), seed * 31);
    const auto r = brute_force_opt(inst);
    REQUIRE(r.status == ExactStatus::Proved);
    CHECK(r.opt == testing::enumerate_opt(inst));
    CHECK(check_packing(inst, r.packing).valid);
    CHECK(r.packing.bin_count == r.opt);
  }
}

TEST_CASE("node budget aborts with an upper bound") {
  const auto inst = gen_uniform(14, 2, 0.6, 3);
  const auto full = brute_force_opt(inst);
  REQUIRE(full.status == ExactStatus::Proved);
  const auto cut = brute_force_opt(inst, 1);
  if (cut.status == ExactStatus::Aborted) {
    CHECK(cut.opt >= full.opt);
    CHECK(check_packing(inst, cut.packing).valid);
  } else {
    CHECK(cut.opt == full.opt);
  }
  // A search that needs branching cannot finish in zero nodes.
  const auto none = brute_force_opt(Instance::validate(1, {{0.5}, {0.4}, {0.3}, {0.3}, {0.3}, {0.2}}), 0);
  CHECK(none.status == ExactStatus::Aborted);
  CHECK(none.opt == 3);
}
