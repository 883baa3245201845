#pragma once

#include <cstddef>
#include <cstdint>

#include "vbp/core.hpp"

namespace vbp {

enum class ExactStatus { Proved, Aborted };

struct ExactResult {
  std::size_t opt = 0;  // an upper bound only when Aborted
  Packing packing;
  std::uint64_t nodes = 0;
  ExactStatus status = ExactStatus::Proved;
};

inline constexpr std::uint64_t kDefaultNodeBudget = 10'000'000;

/// Depth-first branch and bound for the minimum bin count.
///
/// Items are placed largest-component first, each into an open bin or one new
/// bin. Branches are cut when they cannot beat the incumbent (first-fit in the
/// same order), and bins with identical loads are tried only once. Meant for
/// n up to about 14.
ExactResult brute_force_opt(const Instance& inst, std::uint64_t node_budget = kDefaultNodeBudget);

}  // namespace vbp
