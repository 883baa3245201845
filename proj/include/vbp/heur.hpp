#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "vbp/core.hpp"
#include "vbp/relax.hpp"
#include "vbp/simplex.hpp"

namespace vbp {

/// Raised when the round loop exceeds HeurConfig::max_rounds. Always a defect.
class RoundLimitExceeded : public Error {
 public:
  explicit RoundLimitExceeded(std::size_t rounds);
};

enum class RoundKind { FirstFit, GreedyLP, IterativePack, Fallback };

enum class Algorithm {
  Auto,       // case dispatch on the LP bin count
  FirstFit,   // plain first-fit, no LP
  GreedyLP,   // greedy rounding every round
  Iterative,  // utility-threshold rounding every round
};

/// Order among equal LP values. Values always sort descending first.
enum class TieBreak { ItemThenBin, BinThenItem };

std::string_view to_string(RoundKind kind);
std::string_view to_string(Algorithm algo);
Algorithm parse_algorithm(std::string_view name);

struct TraceRound {
  RoundKind kind;
  std::size_t items_packed = 0;
  std::size_t bins_opened = 0;
  std::size_t m_prime = 0;
};

struct AlgorithmTrace {
  std::vector<TraceRound> rounds;

  std::size_t items_packed() const;
  /// "GreedyLP:38/4;FirstFit:2/1" (kind:items/bins per round).
  std::string summary() const;
};

struct HeurConfig {
  std::size_t max_rounds = 0;  // 0 means 2n
  double epsilon_fit = kCapacityEps;
  TieBreak tie_break = TieBreak::ItemThenBin;
  SimplexOptions simplex;
  /// Called with each round's sub-instance and the LP solution it was rounded from.
  std::function<void(const Instance&, const FractionalSolution&)> on_lp_solution;
};

/// Bins over a subset of an instance; indices refer to that instance.
struct PartialPacking {
  std::vector<std::vector<std::size_t>> bins;
  std::vector<std::size_t> leftover;  // ascending

  std::size_t packed_count() const;
};

struct HeurResult {
  Packing packing;
  AlgorithmTrace trace;
};

/// Visits positive x(i, j) from largest to smallest and packs item i into
/// LP bin j whenever it is still loose and fits there.
PartialPacking greedy_lp(const Instance& inst, const FractionalSolution& sol,
                         const HeurConfig& cfg = {});

/// For every LP bin whose utility sum_i x z reaches 1/2, packs its loose items
/// with x >= 1/2 (largest x first) into that bin, or into one companion bin
/// opened for it when they do not fit. Everything else is left over.
PartialPacking iterative_pack(const Instance& inst, const FractionalSolution& sol,
                              const HeurConfig& cfg = {});

/// LP-guided case dispatch, repeated on leftovers with fresh bins:
///   m' >= n/2        first-fit on everything left, stop
///   m'^2 d <= n      greedy_lp
///   otherwise        iterative_pack
/// A round that packs nothing finishes the remainder with first-fit.
HeurResult packing_vectors(const Instance& inst, const HeurConfig& cfg = {});

/// Runs one algorithm. GreedyLP and Iterative use the same round loop as
/// packing_vectors but always pick that rounding.
HeurResult run_algorithm(const Instance& inst, Algorithm algo, const HeurConfig& cfg = {});

}  // namespace vbp
