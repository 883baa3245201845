#include "vbp/gen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "vbp/relax.hpp"

namespace vbp {

GuardUnsatisfied::GuardUnsatisfied(std::size_t m_prime, std::size_t n, std::size_t d)
    : Error("LP bin count " + std::to_string(m_prime) + " exceeds sqrt(n/d) for n=" +
            std::to_string(n) + ", d=" + std::to_string(d)) {}

std::uint64_t Rng::below(std::uint64_t bound) {
  // Rejection sampling keeps the draw unbiased.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return v % bound;
}

std::string_view to_string(GenKind kind) {
  switch (kind) {
    case GenKind::Uniform: return "uniform";
    case GenKind::KnownOpt: return "knownopt";
    case GenKind::Case2Regime: return "case2";
  }
  return "?";
}

GenKind parse_gen_kind(std::string_view name) {
  for (auto k : {GenKind::Uniform, GenKind::KnownOpt, GenKind::Case2Regime})
    if (to_string(k) == name) return k;
  throw Error("unknown generator kind '" + std::string(name) + "'");
}

Instance gen_uniform(std::size_t n, std::size_t d, double scale, std::uint64_t seed) {
  if (!(scale > 0.0 && scale <= 1.0)) throw Error("scale must lie in (0, 1]");
  Rng rng(seed);
  std::vector<ItemVector> rows(n, ItemVector(d));
  for (auto& row : rows)
    for (auto& c : row) c = rng.uniform() * scale;
  return Instance::validate(d, std::move(rows));
}

KnownOptInstance gen_known_opt(std::size_t m, std::size_t items_per_bin, std::size_t d,
                               std::uint64_t seed, double load_scale) {
  if (items_per_bin == 0) throw Error("items_per_bin must be at least 1");
  if (!(load_scale > 0.0 && load_scale <= 1.0)) throw Error("load scale must lie in (0, 1]");
  Rng rng(seed);
  const std::size_t n = m * items_per_bin;
  std::vector<ItemVector> rows(n, ItemVector(d));
  std::vector<std::size_t> home(n);
  std::vector<double> cuts(items_per_bin + 1);
  for (std::size_t b = 0; b < m; ++b) {
    for (std::size_t k = 0; k < d; ++k) {
      const double load = load_scale * (0.75 + 0.25 * rng.uniform());
      cuts.front() = 0.0;
      cuts.back() = load;
      for (std::size_t t = 1; t < items_per_bin; ++t) cuts[t] = rng.uniform() * load;
      std::sort(cuts.begin() + 1, cuts.end() - 1);
      for (std::size_t t = 0; t < items_per_bin; ++t)
        rows[b * items_per_bin + t][k] = cuts[t + 1] - cuts[t];
    }
    for (std::size_t t = 0; t < items_per_bin; ++t) home[b * items_per_bin + t] = b;
  }
  // Fisher-Yates, drawing from our own stream.
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = rng.below(i);
    std::swap(rows[i - 1], rows[j]);
    std::swap(home[i - 1], home[j]);
  }
  KnownOptInstance out;
  out.instance = Instance::validate(d, std::move(rows));
  out.m_upper = m;
  out.witness.assignment = home;
  out.witness.bin_count = m;
  return out;
}

Instance gen_case2(std::size_t m, std::size_t d, std::size_t k, std::uint64_t seed) {
  if (m == 0 || d == 0) throw Error("m and d must be positive");
  if (k < m) throw Error("regime multiplier k must be at least m");
  Rng rng(seed);
  const std::size_t n = k * d * m;
  std::vector<ItemVector> rows(n, ItemVector(d));
  for (auto& row : rows)
    for (auto& c : row) c = 0.05 + rng.uniform();
  const double target = static_cast<double>(m) - 0.25;
  for (std::size_t dim = 0; dim < d; ++dim) {
    double sum = 0.0;
    for (const auto& row : rows) sum += row[dim];
    const double f = target / sum;
    for (auto& row : rows) row[dim] = std::min(1.0, row[dim] * f);
  }
  auto inst = Instance::validate(d, std::move(rows));
  const std::size_t mp = relaxation_bound(inst);
  if (mp * mp * d > n) throw GuardUnsatisfied(mp, n, d);
  return inst;
}

Generated generate(const GenSpec& spec) {
  switch (spec.kind) {
    case GenKind::Uniform:
      return {gen_uniform(spec.n, spec.d, spec.scale, spec.seed), std::nullopt};
    case GenKind::KnownOpt: {
      auto ko = gen_known_opt(spec.m, spec.items_per_bin, spec.d, spec.seed, spec.scale);
      return {std::move(ko.instance), std::move(ko.witness)};
    }
    case GenKind::Case2Regime:
      return {gen_case2(spec.m, spec.d, spec.k, spec.seed), std::nullopt};
  }
  throw Error("unknown generator kind");
}

}  // namespace vbp
