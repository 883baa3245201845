#include "vbp/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace vbp {

ComponentOutOfRange::ComponentOutOfRange(std::size_t item_, std::size_t dim_, double value_)
    : Error("item " + std::to_string(item_) + " dimension " + std::to_string(dim_) +
            ": component " + std::to_string(value_) + " outside [0,1]"),
      item(item_),
      dim(dim_),
      value(value_) {}

RowLengthMismatch::RowLengthMismatch(std::size_t item_, std::size_t got, std::size_t want)
    : Error("item " + std::to_string(item_) + ": expected " + std::to_string(want) +
            " components, got " + std::to_string(got)),
      item(item_) {}

BadItemIndex::BadItemIndex(std::size_t index_)
    : Error("item index " + std::to_string(index_) + " out of range"), index(index_) {}

BadBinIndex::BadBinIndex(std::size_t index_)
    : Error("bin index " + std::to_string(index_) + " out of range"), index(index_) {}

ParseError::ParseError(std::size_t line_, const std::string& what)
    : Error("line " + std::to_string(line_) + ": " + what), line(line_) {}

Instance Instance::validate(std::size_t d, std::vector<ItemVector> rows) {
  if (d == 0) throw Error("dimension count must be positive");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != d) throw RowLengthMismatch(i, rows[i].size(), d);
    for (std::size_t k = 0; k < d; ++k) {
      const double c = rows[i][k];
      // Written so that NaN fails too.
      if (!(c >= 0.0 && c <= 1.0)) throw ComponentOutOfRange(i, k, c);
    }
  }
  return Instance(d, std::move(rows));
}

Instance Instance::subset(std::span<const std::size_t> indices) const {
  std::vector<ItemVector> rows;
  rows.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= items_.size()) throw BadItemIndex(i);
    rows.push_back(items_[i]);
  }
  return Instance(d_, std::move(rows));
}

std::vector<double> Instance::column_sums() const {
  std::vector<double> sums(d_, 0.0);
  for (const auto& item : items_)
    for (std::size_t k = 0; k < d_; ++k) sums[k] += item[k];
  return sums;
}

Packing Packing::from_bins(std::size_t n, const std::vector<std::vector<std::size_t>>& bins) {
  Packing p;
  p.assignment.assign(n, kUnassigned);
  for (const auto& bin : bins) {
    if (bin.empty()) continue;
    for (std::size_t i : bin) {
      if (i >= n) throw BadItemIndex(i);
      p.assignment[i] = p.bin_count;
    }
    ++p.bin_count;
  }
  return p;
}

std::vector<std::vector<std::size_t>> Packing::bins() const {
  std::vector<std::vector<std::size_t>> out(bin_count);
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    const std::size_t b = assignment[i];
    if (b == kUnassigned) continue;
    if (b >= bin_count) throw BadBinIndex(b);
    out[b].push_back(i);
  }
  return out;
}

void Packing::compact() {
  std::vector<std::size_t> remap(bin_count, kUnassigned);
  std::size_t next = 0;
  for (auto& b : assignment) {
    if (b == kUnassigned) continue;
    if (b >= bin_count) throw BadBinIndex(b);
    if (remap[b] == kUnassigned) remap[b] = next++;
    b = remap[b];
  }
  bin_count = next;
}

std::vector<std::vector<double>> bin_loads(const Instance& inst, const Packing& pack) {
  if (pack.assignment.size() > inst.size()) throw BadItemIndex(inst.size());
  std::vector<std::vector<double>> loads(pack.bin_count, std::vector<double>(inst.dims(), 0.0));
  for (std::size_t i = 0; i < pack.assignment.size(); ++i) {
    const std::size_t b = pack.assignment[i];
    if (b == kUnassigned) continue;
    if (b >= pack.bin_count) throw BadBinIndex(b);
    for (std::size_t k = 0; k < inst.dims(); ++k) loads[b][k] += inst.item(i)[k];
  }
  return loads;
}

ValidityReport check_packing(const Instance& inst, const Packing& pack) {
  ValidityReport report;
  const auto loads = bin_loads(inst, pack);
  for (std::size_t b = 0; b < loads.size(); ++b)
    for (std::size_t k = 0; k < inst.dims(); ++k)
      if (loads[b][k] > 1.0 + kCapacityEps) report.violations.push_back({b, k, loads[b][k]});
  for (std::size_t i = 0; i < inst.size(); ++i)
    if (i >= pack.assignment.size() || pack.assignment[i] == kUnassigned)
      report.unassigned.push_back(i);
  report.valid = report.violations.empty() && report.unassigned.empty();
  return report;
}

std::vector<std::size_t> identity_order(std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  return order;
}

std::vector<std::size_t> decreasing_max_order(const Instance& inst) {
  auto order = identity_order(inst.size());
  std::vector<double> key(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i)
    key[i] = *std::max_element(inst.item(i).begin(), inst.item(i).end());
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return key[a] > key[b]; });
  return order;
}

Packing first_fit(const Instance& inst, double eps) {
  const auto order = identity_order(inst.size());
  return first_fit(inst, order, eps);
}

Packing first_fit(const Instance& inst, std::span<const std::size_t> order, double eps) {
  const std::size_t d = inst.dims();
  Packing pack;
  pack.assignment.assign(inst.size(), kUnassigned);
  std::vector<double> loads;  // bin-major, d per bin
  for (std::size_t i : order) {
    if (i >= inst.size()) throw BadItemIndex(i);
    const auto& p = inst.item(i);
    std::size_t target = pack.bin_count;
    for (std::size_t b = 0; b < pack.bin_count && target == pack.bin_count; ++b) {
      bool fits = true;
      for (std::size_t k = 0; k < d && fits; ++k) fits = loads[b * d + k] + p[k] <= 1.0 + eps;
      if (fits) target = b;
    }
    if (target == pack.bin_count) {
      loads.resize(loads.size() + d, 0.0);
      ++pack.bin_count;
    }
    for (std::size_t k = 0; k < d; ++k) loads[target * d + k] += p[k];
    pack.assignment[i] = target;
  }
  return pack;
}

std::size_t volume_lower_bound(const Instance& inst) {
  if (inst.empty()) return 0;
  const auto sums = inst.column_sums();
  const double top = *std::max_element(sums.begin(), sums.end());
  const double bound = std::ceil(top - kCapacityEps);
  return bound > 0.0 ? static_cast<std::size_t>(bound) : 0;
}

}  // namespace vbp
