#include "vbp/exact.hpp"

#include <algorithm>
#include <vector>

namespace vbp {
namespace {

class BranchAndBound {
 public:
  BranchAndBound(const Instance& inst, std::uint64_t budget)
      : inst_(inst),
        d_(inst.dims()),
        order_(decreasing_max_order(inst)),
        budget_(budget),
        loads_(inst.size() * inst.dims(), 0.0),
        current_(inst.size(), kUnassigned) {}

  ExactResult run() {
    ExactResult res;
    const std::size_t n = inst_.size();
    best_pack_ = first_fit(inst_, order_);
    best_ = best_pack_.bin_count;
    floor_ = n == 0 ? 0 : std::max<std::size_t>(1, volume_lower_bound(inst_));
    if (best_ > floor_) search(0, 0);
    res.opt = best_;
    res.packing = best_pack_;
    res.packing.compact();
    res.nodes = nodes_;
    res.status = aborted_ ? ExactStatus::Aborted : ExactStatus::Proved;
    return res;
  }

 private:
  bool fits(std::size_t bin, const ItemVector& p) const {
    for (std::size_t k = 0; k < d_; ++k)
      if (loads_[bin * d_ + k] + p[k] > 1.0 + kCapacityEps) return false;
    return true;
  }

  bool same_load(std::size_t a, std::size_t b) const {
    return std::equal(loads_.begin() + a * d_, loads_.begin() + (a + 1) * d_,
                      loads_.begin() + b * d_);
  }

  void place(std::size_t item, std::size_t bin, double sign) {
    const auto& p = inst_.item(item);
    for (std::size_t k = 0; k < d_; ++k) loads_[bin * d_ + k] += sign * p[k];
    current_[item] = sign > 0 ? bin : kUnassigned;
  }

  void search(std::size_t depth, std::size_t open) {
    if (aborted_ || best_ == floor_) return;
    if (++nodes_ > budget_) {
      aborted_ = true;
      return;
    }
    if (depth == order_.size()) {
      best_ = open;
      best_pack_.assignment = current_;
      best_pack_.bin_count = open;
      return;
    }
    if (open >= best_) return;

    const std::size_t item = order_[depth];
    const auto& p = inst_.item(item);
    for (std::size_t b = 0; b < open; ++b) {
      if (!fits(b, p)) continue;
      bool repeat = false;
      for (std::size_t a = 0; a < b && !repeat; ++a) repeat = same_load(a, b);
      if (repeat) continue;
      place(item, b, 1.0);
      search(depth + 1, open);
      place(item, b, -1.0);
      if (aborted_ || best_ == floor_) return;
    }
    // Opening a bin only helps if the result can still beat the incumbent.
    if (open + 1 < best_) {
      place(item, open, 1.0);
      search(depth + 1, open + 1);
      place(item, open, -1.0);
      // Undo by subtraction can leave -0.0 or rounding dust in an empty bin.
      std::fill(loads_.begin() + open * d_, loads_.begin() + (open + 1) * d_, 0.0);
    }
  }

  const Instance& inst_;
  std::size_t d_;
  std::vector<std::size_t> order_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  std::size_t best_ = 0;
  std::size_t floor_ = 0;
  Packing best_pack_;
  std::vector<double> loads_;
  std::vector<std::size_t> current_;
};

}  // namespace

ExactResult brute_force_opt(const Instance& inst, std::uint64_t node_budget) {
  return BranchAndBound(inst, node_budget).run();
}

}  // namespace vbp
