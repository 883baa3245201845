#include "vbp/heur.hpp"

#include <algorithm>
#include <tuple>

#include "vbp/dual.hpp"

namespace vbp {
namespace {

// Slack on the 1/2 thresholds, so LP values like 0.4999999999 still qualify.
constexpr double kThresholdEps = 1e-9;

class BinLoads {
 public:
  BinLoads(std::size_t bins, std::size_t d, double eps) : d_(d), eps_(eps), loads_(bins * d, 0.0) {}

  std::size_t add_bin() {
    loads_.resize(loads_.size() + d_, 0.0);
    return loads_.size() / d_ - 1;
  }

  bool fits(std::size_t bin, const ItemVector& p) const {
    for (std::size_t k = 0; k < d_; ++k)
      if (loads_[bin * d_ + k] + p[k] > 1.0 + eps_) return false;
    return true;
  }

  void add(std::size_t bin, const ItemVector& p) {
    for (std::size_t k = 0; k < d_; ++k) loads_[bin * d_ + k] += p[k];
  }

 private:
  std::size_t d_;
  double eps_;
  std::vector<double> loads_;
};

std::vector<std::size_t> loose_items(const std::vector<char>& packed) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < packed.size(); ++i)
    if (!packed[i]) out.push_back(i);
  return out;
}

std::vector<std::vector<std::size_t>> non_empty(std::vector<std::vector<std::size_t>> bins) {
  std::erase_if(bins, [](const auto& b) { return b.empty(); });
  return bins;
}

}  // namespace

RoundLimitExceeded::RoundLimitExceeded(std::size_t rounds)
    : Error("packing did not finish within " + std::to_string(rounds) + " rounds") {}

std::string_view to_string(RoundKind kind) {
  switch (kind) {
    case RoundKind::FirstFit: return "FirstFit";
    case RoundKind::GreedyLP: return "GreedyLP";
    case RoundKind::IterativePack: return "IterativePack";
    case RoundKind::Fallback: return "Fallback";
  }
  return "?";
}

std::string_view to_string(Algorithm algo) {
  switch (algo) {
    case Algorithm::Auto: return "auto";
    case Algorithm::FirstFit: return "firstfit";
    case Algorithm::GreedyLP: return "greedylp";
    case Algorithm::Iterative: return "iterative";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  for (auto a : {Algorithm::Auto, Algorithm::FirstFit, Algorithm::GreedyLP, Algorithm::Iterative})
    if (to_string(a) == name) return a;
  throw Error("unknown algorithm '" + std::string(name) + "'");
}

std::size_t AlgorithmTrace::items_packed() const {
  std::size_t total = 0;
  for (const auto& r : rounds) total += r.items_packed;
  return total;
}

std::string AlgorithmTrace::summary() const {
  std::string out;
  for (const auto& r : rounds) {
    if (!out.empty()) out += ';';
    out += std::string(to_string(r.kind)) + ':' + std::to_string(r.items_packed) + '/' +
           std::to_string(r.bins_opened);
  }
  return out;
}

std::size_t PartialPacking::packed_count() const {
  std::size_t total = 0;
  for (const auto& b : bins) total += b.size();
  return total;
}

PartialPacking greedy_lp(const Instance& inst, const FractionalSolution& sol,
                         const HeurConfig& cfg) {
  if (sol.n != inst.size()) throw Error("LP solution does not match instance");
  struct Entry {
    double value;
    std::size_t item;
    std::size_t bin;
  };
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < sol.n; ++i)
    for (std::size_t j = 0; j < sol.m; ++j)
      if (sol(i, j) > 0.0) entries.push_back({sol(i, j), i, j});

  const bool item_first = cfg.tie_break == TieBreak::ItemThenBin;
  std::sort(entries.begin(), entries.end(), [item_first](const Entry& a, const Entry& b) {
    if (a.value != b.value) return a.value > b.value;
    return item_first ? std::tie(a.item, a.bin) < std::tie(b.item, b.bin)
                      : std::tie(a.bin, a.item) < std::tie(b.bin, b.item);
  });

  BinLoads loads(sol.m, inst.dims(), cfg.epsilon_fit);
  std::vector<std::vector<std::size_t>> bins(sol.m);
  std::vector<char> packed(sol.n, 0);
  for (const auto& e : entries) {
    if (packed[e.item] || !loads.fits(e.bin, inst.item(e.item))) continue;
    loads.add(e.bin, inst.item(e.item));
    bins[e.bin].push_back(e.item);
    packed[e.item] = 1;
  }
  for (auto& b : bins) std::sort(b.begin(), b.end());
  return {non_empty(std::move(bins)), loose_items(packed)};
}

PartialPacking iterative_pack(const Instance& inst, const FractionalSolution& sol,
                              const HeurConfig& cfg) {
  if (sol.n != inst.size()) throw Error("LP solution does not match instance");
  const auto w = dual_weights(sol);

  // Bin 2j is LP bin j, bin 2j+1 its companion.
  BinLoads loads(2 * sol.m, inst.dims(), cfg.epsilon_fit);
  std::vector<std::vector<std::size_t>> bins(2 * sol.m);
  std::vector<char> packed(sol.n, 0);

  for (std::size_t j = 0; j < sol.m; ++j) {
    if (bin_utility(sol, w, j) < 0.5 - kThresholdEps) continue;
    std::vector<std::size_t> heavy;
    for (std::size_t i = 0; i < sol.n; ++i)
      if (!packed[i] && sol(i, j) >= 0.5 - kThresholdEps) heavy.push_back(i);
    std::stable_sort(heavy.begin(), heavy.end(),
                     [&](std::size_t a, std::size_t b) { return sol(a, j) > sol(b, j); });
    for (std::size_t i : heavy) {
      const auto& p = inst.item(i);
      for (std::size_t target : {2 * j, 2 * j + 1}) {
        if (!loads.fits(target, p)) continue;
        loads.add(target, p);
        bins[target].push_back(i);
        packed[i] = 1;
        break;
      }
    }
  }
  for (auto& b : bins) std::sort(b.begin(), b.end());
  return {non_empty(std::move(bins)), loose_items(packed)};
}

HeurResult run_algorithm(const Instance& inst, Algorithm algo, const HeurConfig& cfg) {
  const std::size_t n = inst.size();
  const std::size_t d = inst.dims();
  const std::size_t max_rounds = cfg.max_rounds ? cfg.max_rounds : std::max<std::size_t>(1, 2 * n);

  HeurResult result;
  std::vector<std::vector<std::size_t>> bins;  // global item indices
  std::vector<std::size_t> remaining = identity_order(n);

  auto take_bins = [&](const std::vector<std::vector<std::size_t>>& local) {
    for (const auto& b : local) {
      std::vector<std::size_t> global;
      global.reserve(b.size());
      for (std::size_t i : b) global.push_back(remaining[i]);
      bins.push_back(std::move(global));
    }
  };
  auto finish_first_fit = [&](const Instance& sub, RoundKind kind, std::size_t m_prime) {
    const auto ff = first_fit(sub, cfg.epsilon_fit);
    take_bins(ff.bins());
    result.trace.rounds.push_back({kind, sub.size(), ff.bin_count, m_prime});
    remaining.clear();
  };

  std::size_t rounds = 0;
  while (!remaining.empty()) {
    if (++rounds > max_rounds) throw RoundLimitExceeded(max_rounds);
    const Instance sub = inst.subset(remaining);
    const std::size_t count = sub.size();

    if (algo == Algorithm::FirstFit) {
      finish_first_fit(sub, RoundKind::FirstFit, relaxation_bound(sub));
      break;
    }
    // The case-1 test only needs m', which is known without the LP.
    if (algo == Algorithm::Auto && 2 * relaxation_bound(sub) >= count) {
      finish_first_fit(sub, RoundKind::FirstFit, relaxation_bound(sub));
      break;
    }

    const auto relax = min_feasible_bins(sub, cfg.simplex);
    if (cfg.on_lp_solution) cfg.on_lp_solution(sub, relax.solution);
    const std::size_t mp = relax.m_prime;

    RoundKind kind = RoundKind::IterativePack;
    if (algo == Algorithm::GreedyLP) {
      kind = RoundKind::GreedyLP;
    } else if (algo == Algorithm::Auto) {
      if (2 * mp >= count) {
        finish_first_fit(sub, RoundKind::FirstFit, mp);
        break;
      }
      if (mp * mp * d <= count) kind = RoundKind::GreedyLP;
    }

    const auto partial = kind == RoundKind::GreedyLP ? greedy_lp(sub, relax.solution, cfg)
                                                     : iterative_pack(sub, relax.solution, cfg);
    if (partial.packed_count() == 0) {
      finish_first_fit(sub, RoundKind::Fallback, mp);
      break;
    }
    take_bins(partial.bins);
    result.trace.rounds.push_back({kind, partial.packed_count(), partial.bins.size(), mp});

    std::vector<std::size_t> next;
    next.reserve(partial.leftover.size());
    for (std::size_t i : partial.leftover) next.push_back(remaining[i]);
    remaining = std::move(next);
  }

  result.packing = Packing::from_bins(n, bins);
  return result;
}

HeurResult packing_vectors(const Instance& inst, const HeurConfig& cfg) {
  return run_algorithm(inst, Algorithm::Auto, cfg);
}

}  // namespace vbp
