#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vbp {

/// Absolute slack allowed on every bin-capacity comparison.
inline constexpr double kCapacityEps = 1e-9;

/// Marks an item that no bin has claimed.
inline constexpr std::size_t kUnassigned = std::numeric_limits<std::size_t>::max();

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ComponentOutOfRange : public Error {
 public:
  ComponentOutOfRange(std::size_t item, std::size_t dim, double value);
  std::size_t item;
  std::size_t dim;
  double value;
};

class RowLengthMismatch : public Error {
 public:
  RowLengthMismatch(std::size_t item, std::size_t got, std::size_t want);
  std::size_t item;
};

class BadItemIndex : public Error {
 public:
  explicit BadItemIndex(std::size_t index);
  std::size_t index;
};

class BadBinIndex : public Error {
 public:
  explicit BadBinIndex(std::size_t index);
  std::size_t index;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line;
};

/// One item's demand, one fraction of a bin per dimension.
using ItemVector = std::vector<double>;

/// A vector bin packing instance: n items in [0,1]^d.
///
/// Instances are only constructed through validate(), so every value of this
/// type satisfies the range and shape invariants.
class Instance {
 public:
  Instance() = default;

  /// Checks shape and range of raw rows and builds an instance.
  /// Throws ComponentOutOfRange (also for NaN/inf) or RowLengthMismatch.
  static Instance validate(std::size_t d, std::vector<ItemVector> rows);

  std::size_t size() const { return items_.size(); }
  std::size_t dims() const { return d_; }
  bool empty() const { return items_.empty(); }

  const ItemVector& item(std::size_t i) const { return items_.at(i); }
  std::span<const ItemVector> items() const { return items_; }

  /// Sub-instance holding items[indices[0]], items[indices[1]], ... in that order.
  Instance subset(std::span<const std::size_t> indices) const;

  /// Per-dimension sum over all items.
  std::vector<double> column_sums() const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  Instance(std::size_t d, std::vector<ItemVector> items) : d_(d), items_(std::move(items)) {}

  std::size_t d_ = 1;
  std::vector<ItemVector> items_;
};

/// Integral assignment of items to bins.
struct Packing {
  std::vector<std::size_t> assignment;  // item -> bin, kUnassigned if none
  std::size_t bin_count = 0;

  /// Builds a packing over n items from explicit bin contents. Empty groups are dropped.
  static Packing from_bins(std::size_t n, const std::vector<std::vector<std::size_t>>& bins);

  /// Items of each bin, in ascending item order.
  std::vector<std::vector<std::size_t>> bins() const;

  /// Renumbers bins to 0..k-1 in order of first use, dropping empty ones.
  void compact();

  friend bool operator==(const Packing&, const Packing&) = default;
};

struct LoadViolation {
  std::size_t bin;
  std::size_t dim;
  double load;
};

struct ValidityReport {
  bool valid = true;
  std::vector<LoadViolation> violations;
  std::vector<std::size_t> unassigned;
};

/// Lists every overloaded (bin, dimension) and every item without a bin.
/// Throws BadItemIndex if the assignment covers more than n items and
/// BadBinIndex if it names a bin >= bin_count.
ValidityReport check_packing(const Instance& inst, const Packing& pack);

/// Per-dimension load of every bin of a packing.
std::vector<std::vector<double>> bin_loads(const Instance& inst, const Packing& pack);

/// Input order 0..n-1.
std::vector<std::size_t> identity_order(std::size_t n);

/// Items sorted by their largest component, largest first; ties by index.
std::vector<std::size_t> decreasing_max_order(const Instance& inst);

/// First-fit in input order.
Packing first_fit(const Instance& inst, double eps = kCapacityEps);

/// First-fit over the given permutation of item indices.
Packing first_fit(const Instance& inst, std::span<const std::size_t> order,
                  double eps = kCapacityEps);

/// ceil(max_k sum_i p_ik), 0 for an empty instance.
std::size_t volume_lower_bound(const Instance& inst);

/// Reads the ".vbp" text format: "n d" then n rows of d decimals.
Instance read_vbp(std::istream& in);
Instance read_vbp_file(const std::string& path);

/// Writes ".vbp" with shortest round-trip decimal representation.
void write_vbp(std::ostream& out, const Instance& inst);
void write_vbp_file(const std::string& path, const Instance& inst);

}  // namespace vbp
