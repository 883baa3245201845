#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

#include "vbp/core.hpp"

namespace vbp {

/// Raised by gen_case2 when the instance's LP bin count exceeds sqrt(n/d).
class GuardUnsatisfied : public Error {
 public:
  GuardUnsatisfied(std::size_t m_prime, std::size_t n, std::size_t d);
};

/// Seeded generator. mt19937_64 is fully specified by the standard, and the
/// conversions below avoid the library-defined distributions, so a seed gives
/// the same stream on every conforming toolchain.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

enum class GenKind { Uniform, KnownOpt, Case2Regime };

std::string_view to_string(GenKind kind);
GenKind parse_gen_kind(std::string_view name);

struct GenSpec {
  GenKind kind = GenKind::Uniform;
  std::size_t n = 0;              // Uniform: item count
  std::size_t d = 1;
  std::size_t m = 0;              // KnownOpt: template bins; Case2Regime: target bin count
  double scale = 1.0;             // Uniform: component ceiling; KnownOpt: load ceiling
  std::size_t k = 0;              // Case2Regime: n = k d m
  std::size_t items_per_bin = 1;  // KnownOpt
  std::uint64_t seed = 0;
};

/// Components i.i.d. uniform on [0, scale].
Instance gen_uniform(std::size_t n, std::size_t d, double scale, std::uint64_t seed);

struct KnownOptInstance {
  Instance instance;
  std::size_t m_upper = 0;  // OPT <= m_upper
  Packing witness;          // packing into m_upper bins
};

/// m template bins, each dimension's load (drawn from [0.75, 1] * load_scale)
/// split into items_per_bin exchangeable shares by uniform stick breaking.
/// Items are shuffled; the witness maps them back to their template bins.
KnownOptInstance gen_known_opt(std::size_t m, std::size_t items_per_bin, std::size_t d,
                               std::uint64_t seed, double load_scale = 1.0);

/// n = k d m small items whose column sums are scaled to m - 1/4, so the LP
/// needs exactly m bins and, since k >= m, m <= sqrt(n / d).
/// Throws Error when k < m and GuardUnsatisfied if the guard fails.
Instance gen_case2(std::size_t m, std::size_t d, std::size_t k, std::uint64_t seed);

struct Generated {
  Instance instance;
  std::optional<Packing> witness;
};

Generated generate(const GenSpec& spec);

}  // namespace vbp
