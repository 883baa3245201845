#include <algorithm>
#include <numeric>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "vbp/core.hpp"
#include "vbp/gen.hpp"

using namespace vbp;

TEST_CASE("validate_instance accepts in-range rows") {
  const auto inst = Instance::validate(1, {{0.5}, {0.5}});
  CHECK(inst.size() == 2);
  CHECK(inst.dims() == 1);
}

TEST_CASE("validate_instance rejects out-of-range component") {
  try {
    Instance::validate(2, {{0.5, 1.2}});
    FAIL("expected ComponentOutOfRange");
  } catch (const ComponentOutOfRange& e) {
    CHECK(e.item == 0);
    CHECK(e.dim == 1);
    CHECK(e.value == doctest::Approx(1.2));
  }
  CHECK_THROWS_AS(Instance::validate(1, {{-0.1}}), ComponentOutOfRange);
  CHECK_THROWS_AS(Instance::validate(1, {{std::nan("")}}), ComponentOutOfRange);
}

TEST_CASE("validate_instance rejects short rows") {
  try {
    Instance::validate(3, {{0.1, 0.2}});
    FAIL("expected RowLengthMismatch");
  } catch (const RowLengthMismatch& e) {
    CHECK(e.item == 0);
  }
  CHECK_THROWS_AS(Instance::validate(0, {}), Error);
}

TEST_CASE("check_packing") {
  SUBCASE("exact fit is valid") {
    const auto inst = Instance::validate(1, {{0.5}, {0.5}});
    const auto r = check_packing(inst, Packing{{0, 0}, 1});
    CHECK(r.valid);
    CHECK(r.violations.empty());
  }
  SUBCASE("overload reported with its load") {
    const auto inst = Instance::validate(1, {{0.6}, {0.5}});
    const auto r = check_packing(inst, Packing{{0, 0}, 1});
    CHECK_FALSE(r.valid);
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].bin == 0);
    CHECK(r.violations[0].dim == 0);
    CHECK(r.violations[0].load == doctest::Approx(1.1));
  }
  SUBCASE("only the overloaded dimension is reported") {
    const auto inst = Instance::validate(2, {{0.7, 0.2}, {0.2, 0.9}});
    const auto r = check_packing(inst, Packing{{0, 0}, 1});
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].dim == 1);
    CHECK(r.violations[0].load == doctest::Approx(1.1));
  }
  SUBCASE("unassigned items listed") {
    const auto inst = Instance::validate(1, {{0.1}, {0.2}, {0.3}});
    const auto r = check_packing(inst, Packing{{0, kUnassigned}, 1});
    CHECK_FALSE(r.valid);
    CHECK(r.unassigned == std::vector<std::size_t>{1, 2});
  }
  SUBCASE("bad indices") {
    const auto inst = Instance::validate(1, {{0.1}});
    CHECK_THROWS_AS(check_packing(inst, Packing{{0, 0}, 1}), BadItemIndex);
    CHECK_THROWS_AS(check_packing(inst, Packing{{3}, 1}), BadBinIndex);
  }
  SUBCASE("capacity tolerance") {
    const auto inst = Instance::validate(1, {{0.5 + 5e-10}, {0.5}});
    CHECK(check_packing(inst, Packing{{0, 0}, 1}).valid);
    const auto over = Instance::validate(1, {{0.5 + 1e-8}, {0.5}});
    CHECK_FALSE(check_packing(over, Packing{{0, 0}, 1}).valid);
  }
}

TEST_CASE("first_fit examples") {
  CHECK(first_fit(Instance::validate(1, {{0.5}, {0.5}, {0.5}, {0.5}})).bin_count == 2);

  // Hand simulation: item 1 joins bin 0 (0.7,0.7); item 2 does not fit there
  // (1.3 in dim 0) and opens bin 1; item 3 fails bin 0 in dim 1, joins bin 1.
  const auto inst = Instance::validate(2, {{0.6, 0.1}, {0.1, 0.6}, {0.6, 0.1}, {0.1, 0.6}});
  const auto p = first_fit(inst);
  CHECK(p.bin_count == 2);
  CHECK(p.assignment == std::vector<std::size_t>{0, 0, 1, 1});
  CHECK(testing::enumerate_opt(inst) == 2);

  CHECK(first_fit(Instance::validate(2, {{1.0, 1.0}})).bin_count == 1);
  CHECK(first_fit(Instance::validate(2, {})).bin_count == 0);
}

TEST_CASE("zero-vector items join the first bin") {
  const auto inst = Instance::validate(2, {{1.0, 1.0}, {0.0, 0.0}, {0.0, 0.0}});
  const auto p = first_fit(inst);
  CHECK(p.bin_count == 1);
  CHECK(check_packing(inst, p).valid);
}

TEST_CASE("decreasing order is available and valid") {
  const auto inst = Instance::validate(1, {{0.2}, {0.9}, {0.5}, {0.5}});
  const auto order = decreasing_max_order(inst);
  CHECK(order == std::vector<std::size_t>{1, 2, 3, 0});
  const auto p = first_fit(inst, order);
  CHECK(check_packing(inst, p).valid);
  CHECK(p.bin_count == 3);
}

TEST_CASE("volume_lower_bound") {
  CHECK(volume_lower_bound(Instance::validate(2, {{0.5, 0.1}, {0.5, 0.1}, {0.5, 0.1}, {0.5, 0.1}})) == 2);
  CHECK(volume_lower_bound(Instance::validate(3, {})) == 0);
  CHECK(volume_lower_bound(Instance::validate(1, {{0.3}, {0.3}, {0.5}})) == 2);
  // Sums to 1.0000000000000002 in floating point; the bound stays 1.
  CHECK(volume_lower_bound(Instance::validate(1, {{0.2}, {0.4}, {0.3}, {0.1}})) == 1);
}

TEST_CASE("first_fit properties over random instances and orders") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    Rng rng(seed);
    const std::size_t n = 1 + rng.below(40);
    const std::size_t d = 1 + rng.below(4);
    const double scale = 0.1 + 0.9 * rng.uniform();
    const auto inst = gen_uniform(n, d, scale, seed * 7919);
    auto order = identity_order(n);
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);

    const auto p = first_fit(inst, order);
    const auto report = check_packing(inst, p);
    CHECK(report.valid);
    CHECK(p.bin_count <= n);
    CHECK(p.bin_count >= volume_lower_bound(inst));

    // Pure: a second call gives an identical report.
    const auto again = check_packing(inst, p);
    CHECK(again.valid == report.valid);
    CHECK(again.violations.size() == report.violations.size());

    // Dropping an item and compacting keeps the packing valid.
    const std::size_t drop = rng.below(n);
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < n; ++i)
      if (i != drop) keep.push_back(i);
    const auto sub = inst.subset(keep);
    Packing q;
    for (std::size_t i : keep) q.assignment.push_back(p.assignment[i]);
    q.bin_count = p.bin_count;
    q.compact();
    CHECK(check_packing(sub, q).valid);
    CHECK(q.bin_count <= p.bin_count);
  }
}

TEST_CASE("Packing helpers") {
  auto p = Packing::from_bins(4, {{2}, {}, {0, 3}, {1}});
  CHECK(p.bin_count == 3);
  CHECK(p.assignment == std::vector<std::size_t>{1, 2, 0, 1});
  CHECK(p.bins() == std::vector<std::vector<std::size_t>>{{2}, {0, 3}, {1}});

  Packing gaps{{5, 2, 5}, 6};
  gaps.compact();
  CHECK(gaps.bin_count == 2);
  CHECK(gaps.assignment == std::vector<std::size_t>{0, 1, 0});
}

TEST_CASE(".vbp reading and writing") {
  SUBCASE("round trip preserves every bit") {
    const auto inst = gen_uniform(25, 3, 0.7, 42);
    std::stringstream ss;
    write_vbp(ss, inst);
    CHECK(read_vbp(ss) == inst);
  }
  SUBCASE("parse") {
    std::istringstream in("2 2\n0.5 0.25\n1 0\n");
    const auto inst = read_vbp(in);
    CHECK(inst.size() == 2);
    CHECK(inst.item(1)[0] == 1.0);
  }
  SUBCASE("rejects bad input") {
    auto parse = [](const char* text) {
      std::istringstream in(text);
      return read_vbp(in);
    };
    CHECK_THROWS_AS(parse("1 1\nnan\n"), ParseError);
    CHECK_THROWS_AS(parse("1 1\ninf\n"), ParseError);
    CHECK_THROWS_AS(parse("1 1\n1.5\n"), ComponentOutOfRange);
    CHECK_THROWS_AS(parse("1 2\n0.5\n"), RowLengthMismatch);
    CHECK_THROWS_AS(parse("2 1\n0.5\n"), ParseError);
    CHECK_THROWS_AS(parse("1 1\n0.5\n0.5\n"), ParseError);
    CHECK_THROWS_AS(parse("1 1\nabc\n"), ParseError);
    CHECK_THROWS_AS(parse(""), ParseError);
  }
}
