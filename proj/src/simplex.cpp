#include "vbp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace vbp {

CycleGuardExceeded::CycleGuardExceeded(std::size_t iterations_)
    : Error("simplex iteration cap reached after " + std::to_string(iterations_) + " pivots"),
      iterations(iterations_) {}

void LpModel::add_row(std::vector<LpTerm> terms, Relation rel, double rhs) {
  rows.push_back({std::move(terms), rel, rhs});
}

void LpModel::add_dense_row(std::span<const double> coefs, Relation rel, double rhs) {
  LpRow row{{}, rel, rhs};
  for (std::size_t j = 0; j < coefs.size(); ++j)
    if (coefs[j] != 0.0) row.terms.push_back({j, coefs[j]});
  rows.push_back(std::move(row));
}

void LpModel::check() const {
  if (!objective.empty() && objective.size() != num_vars)
    throw Error("objective length " + std::to_string(objective.size()) + " != num_vars " +
                std::to_string(num_vars));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& t : rows[r].terms)
      if (t.var >= num_vars)
        throw Error("row " + std::to_string(r) + " references variable " + std::to_string(t.var));
}

double residual_check(const LpModel& model, std::span<const double> values) {
  if (values.size() != model.num_vars) throw Error("value vector has wrong length");
  double worst = 0.0;
  for (double v : values) worst = std::max(worst, -v);
  for (const auto& row : model.rows) {
    double lhs = 0.0;
    for (const auto& t : row.terms) lhs += t.coef * values[t.var];
    const double viol =
        row.relation == Relation::Equal ? std::abs(lhs - row.rhs) : std::max(0.0, lhs - row.rhs);
    worst = std::max(worst, viol);
  }
  return worst;
}

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

class RevisedSimplex {
 public:
  RevisedSimplex(const LpModel& model, const SimplexOptions& opts) : model_(model), opts_(opts) {
    model.check();
    rows_ = model.rows.size();
    structural_ = model.num_vars;
    build_columns();
    cap_ = opts.iteration_cap ? opts.iteration_cap : 50 * (rows_ + structural_);
    refactor_period_ = std::max<std::size_t>(64, rows_);
  }

  // Installs caller-chosen structural columns as the starting basis.
  void apply_start(std::span<const std::size_t> start) {
    if (start.empty()) return;
    if (start.size() != rows_) throw Error("start basis length does not match row count");
    for (std::size_t r = 0; r < rows_; ++r) {
      if (start[r] == kNoStart) continue;
      if (start[r] >= structural_) throw Error("start basis references a non-structural column");
      if (pos_[start[r]] != kNone) return reset_basis();  // repeated column
      pos_[basis_[r]] = kNone;
      basis_[r] = start[r];
      pos_[start[r]] = r;
    }
    if (!refactor()) return reset_basis();

    for (std::size_t r = 0; r < rows_; ++r) {
      if (xb_[r] >= 0.0) continue;
      if (basis_[r] < structural_ || artificial_[basis_[r]]) return reset_basis();
    }
    // Negative slacks: swap in an artificial with coefficient -1, which
    // flips the sign of that row of the inverse.
    for (std::size_t r = 0; r < rows_; ++r) {
      if (xb_[r] >= 0.0) continue;
      col_row_.push_back(r);
      col_val_.push_back(-1.0);
      col_start_.push_back(col_row_.size());
      artificial_.push_back(1);
      pos_.push_back(r);
      pos_[basis_[r]] = kNone;
      basis_[r] = cols() - 1;
      double* row = &binv_[r * rows_];
      for (std::size_t k = 0; k < rows_; ++k) row[k] = -row[k];
      xb_[r] = -xb_[r];
    }
    has_artificials_ = std::any_of(basis_.begin(), basis_.end(),
                                   [this](std::size_t j) { return artificial_[j] != 0; });
  }

  LpOutcome run() {
    LpOutcome out;

    if (has_artificials_) {
      std::vector<double> phase1(cols(), 0.0);
      for (std::size_t j = 0; j < cols(); ++j)
        if (artificial_[j]) phase1[j] = 1.0;
      iterate(phase1, /*allow_artificial=*/true);
      double infeasibility = 0.0;
      for (std::size_t r = 0; r < rows_; ++r)
        if (artificial_[basis_[r]]) infeasibility += std::max(0.0, xb_[r]);
      if (infeasibility > opts_.feasibility_tol) {
        out.status = LpStatus::Infeasible;
        finish(out);
        return out;
      }
      drive_out_artificials();
    }

    out.status = LpStatus::Feasible;
    const bool has_objective =
        std::any_of(model_.objective.begin(), model_.objective.end(), [](double c) { return c != 0; });
    if (has_objective) {
      std::vector<double> phase2(cols(), 0.0);
      std::copy(model_.objective.begin(), model_.objective.end(), phase2.begin());
      if (!iterate(phase2, /*allow_artificial=*/false)) out.status = LpStatus::Unbounded;
    }
    finish(out);
    return out;
  }

 private:
  std::size_t cols() const { return col_start_.size() - 1; }

  void push_entry(std::vector<std::vector<std::pair<std::size_t, double>>>& per_col,
                  std::size_t col, std::size_t row, double v) {
    per_col[col].emplace_back(row, v);
  }

  void build_columns() {
    b_.resize(rows_);
    std::vector<std::vector<std::pair<std::size_t, double>>> per_col(structural_);
    std::vector<double> sign(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      const auto& row = model_.rows[r];
      sign[r] = row.rhs < 0 ? -1.0 : 1.0;
      b_[r] = sign[r] * row.rhs;
      for (const auto& t : row.terms)
        if (t.coef != 0.0) push_entry(per_col, t.var, r, sign[r] * t.coef);
    }

    basis_.assign(rows_, kNone);
    for (std::size_t r = 0; r < rows_; ++r) {
      const auto rel = model_.rows[r].relation;
      if (rel == Relation::LessEqual) {
        per_col.push_back({{r, sign[r]}});  // slack, or surplus when the row was negated
        if (sign[r] > 0) basis_[r] = per_col.size() - 1;
      }
      if (basis_[r] == kNone) {
        per_col.push_back({{r, 1.0}});
        basis_[r] = per_col.size() - 1;
        artificial_.resize(per_col.size(), 0);
        artificial_.back() = 1;
        has_artificials_ = true;
      }
    }
    artificial_.resize(per_col.size(), 0);

    col_start_.assign(1, 0);
    for (auto& col : per_col) {
      std::sort(col.begin(), col.end());
      for (const auto& [r, v] : col) {
        col_row_.push_back(r);
        col_val_.push_back(v);
      }
      col_start_.push_back(col_row_.size());
    }

    initial_basis_ = basis_;
    reset_basis();
  }

  void reset_basis() {
    basis_ = initial_basis_;
    pos_.assign(cols(), kNone);
    for (std::size_t r = 0; r < rows_; ++r) pos_[basis_[r]] = r;
    binv_.assign(rows_ * rows_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r) binv_[r * rows_ + r] = 1.0;
    xb_ = b_;
    has_artificials_ = std::any_of(basis_.begin(), basis_.end(),
                                   [this](std::size_t j) { return artificial_[j] != 0; });
  }

  // Returns false if the objective is unbounded below.
  bool iterate(const std::vector<double>& cost, bool allow_artificial) {
    std::vector<double> y(rows_), alpha(rows_);
    std::size_t streak = 0;
    for (;;) {
      std::fill(y.begin(), y.end(), 0.0);
      for (std::size_t r = 0; r < rows_; ++r) {
        const double c = cost[basis_[r]];
        if (c == 0.0) continue;
        const double* row = &binv_[r * rows_];
        for (std::size_t k = 0; k < rows_; ++k) y[k] += c * row[k];
      }

      // Bland's rule scans from column 0 and takes the first improving one.
      // Otherwise pricing is partial: segments are scanned from a rotating
      // cursor and the best column of the first improving segment enters.
      const bool bland = streak >= opts_.degenerate_streak;
      const std::size_t total = cols();
      const std::size_t segment = bland ? total : std::max<std::size_t>(512, total / 8);
      std::size_t entering = kNone;
      double best = -opts_.cost_tol;
      std::size_t j = bland ? 0 : cursor_ % std::max<std::size_t>(total, 1);
      for (std::size_t scanned = 0; scanned < total && entering == kNone;) {
        const std::size_t chunk = std::min(segment, total - scanned);
        for (std::size_t t = 0; t < chunk; ++t, j = j + 1 == total ? 0 : j + 1) {
          if (pos_[j] != kNone || (!allow_artificial && artificial_[j])) continue;
          double dj = cost[j];
          for (std::size_t e = col_start_[j]; e < col_start_[j + 1]; ++e)
            dj -= y[col_row_[e]] * col_val_[e];
          if (dj < best) {
            entering = j;
            best = dj;
            if (bland) break;
          }
        }
        scanned += chunk;
      }
      cursor_ = j;
      if (entering == kNone) return true;

      column_times_inverse(entering, alpha);

      std::size_t leave = kNone;
      double best_ratio = 0.0;
      for (std::size_t r = 0; r < rows_; ++r) {
        if (alpha[r] <= opts_.pivot_tol) continue;
        const double ratio = std::max(0.0, xb_[r]) / alpha[r];
        if (leave == kNone || ratio < best_ratio - 1e-12) {
          leave = r;
          best_ratio = ratio;
        } else if (ratio <= best_ratio + 1e-12) {
          const bool take = bland ? basis_[r] < basis_[leave] : alpha[r] > alpha[leave];
          if (take) {
            leave = r;
            best_ratio = std::min(best_ratio, ratio);
          }
        }
      }
      if (leave == kNone) return false;

      const double step = std::max(0.0, xb_[leave]) / alpha[leave];
      streak = step <= 1e-12 ? streak + 1 : 0;
      pivot(leave, entering, alpha, step);
    }
  }

  void column_times_inverse(std::size_t j, std::vector<double>& alpha) const {
    std::fill(alpha.begin(), alpha.end(), 0.0);
    for (std::size_t e = col_start_[j]; e < col_start_[j + 1]; ++e) {
      const std::size_t k = col_row_[e];
      const double v = col_val_[e];
      for (std::size_t r = 0; r < rows_; ++r) alpha[r] += binv_[r * rows_ + k] * v;
    }
  }

  void pivot(std::size_t leave, std::size_t entering, const std::vector<double>& alpha,
             double step) {
    if (++iterations_ > cap_) throw CycleGuardExceeded(iterations_);

    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == leave) continue;
      xb_[r] -= step * alpha[r];
      if (xb_[r] < 0.0 && xb_[r] > -opts_.zero_snap) xb_[r] = 0.0;
    }
    xb_[leave] = step;

    double* prow = &binv_[leave * rows_];
    const double inv = 1.0 / alpha[leave];
    for (std::size_t k = 0; k < rows_; ++k) prow[k] *= inv;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == leave || alpha[r] == 0.0) continue;
      double* row = &binv_[r * rows_];
      const double f = alpha[r];
      for (std::size_t k = 0; k < rows_; ++k) row[k] -= f * prow[k];
    }

    pos_[basis_[leave]] = kNone;
    basis_[leave] = entering;
    pos_[entering] = leave;

    if (++since_refactor_ >= refactor_period_) refactor();
  }

  // Rebuilds the inverse from the basis columns by Gauss-Jordan elimination.
  // A numerically singular basis leaves the current inverse alone.
  bool refactor() {
    since_refactor_ = 0;
    const std::size_t n = rows_;
    std::vector<double> a(n * n, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
      const std::size_t j = basis_[r];
      for (std::size_t e = col_start_[j]; e < col_start_[j + 1]; ++e)
        a[col_row_[e] * n + r] = col_val_[e];
    }
    std::vector<double> inv(n * n, 0.0);
    for (std::size_t r = 0; r < n; ++r) inv[r * n + r] = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t p = c;
      for (std::size_t r = c + 1; r < n; ++r)
        if (std::abs(a[r * n + c]) > std::abs(a[p * n + c])) p = r;
      if (std::abs(a[p * n + c]) < 1e-13) return false;
      if (p != c) {
        std::swap_ranges(a.begin() + p * n, a.begin() + (p + 1) * n, a.begin() + c * n);
        std::swap_ranges(inv.begin() + p * n, inv.begin() + (p + 1) * n, inv.begin() + c * n);
      }
      const double d = 1.0 / a[c * n + c];
      for (std::size_t k = 0; k < n; ++k) {
        a[c * n + k] *= d;
        inv[c * n + k] *= d;
      }
      for (std::size_t r = 0; r < n; ++r) {
        if (r == c) continue;
        const double f = a[r * n + c];
        if (f == 0.0) continue;
        for (std::size_t k = 0; k < n; ++k) {
          a[r * n + k] -= f * a[c * n + k];
          inv[r * n + k] -= f * inv[c * n + k];
        }
      }
    }
    binv_ = std::move(inv);
    for (std::size_t r = 0; r < n; ++r) {
      double v = 0.0;
      for (std::size_t k = 0; k < n; ++k) v += binv_[r * n + k] * b_[k];
      xb_[r] = (v < 0.0 && v > -opts_.zero_snap) ? 0.0 : v;
    }
    return true;
  }

  // After phase 1, swaps zero-level artificials for structural or slack columns.
  // Rows where no such column has a nonzero entry are redundant and keep theirs.
  void drive_out_artificials() {
    std::vector<double> alpha(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (!artificial_[basis_[r]]) continue;
      const double* rho = &binv_[r * rows_];
      std::size_t best = kNone;
      double best_abs = 1e-7;
      for (std::size_t j = 0; j < cols(); ++j) {
        if (pos_[j] != kNone || artificial_[j]) continue;
        double a = 0.0;
        for (std::size_t e = col_start_[j]; e < col_start_[j + 1]; ++e)
          a += rho[col_row_[e]] * col_val_[e];
        if (std::abs(a) > best_abs) {
          best_abs = std::abs(a);
          best = j;
        }
      }
      if (best == kNone) continue;
      column_times_inverse(best, alpha);
      pivot(r, best, alpha, xb_[r] / alpha[r]);
    }
  }

  void finish(LpOutcome& out) const {
    out.values.assign(structural_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r) {
      const std::size_t j = basis_[r];
      if (j < structural_) {
        out.values[j] = xb_[r];
        out.basis.push_back(j);
      }
    }
    for (double& v : out.values)
      if (std::abs(v) < opts_.zero_snap) v = 0.0;
    std::sort(out.basis.begin(), out.basis.end());
    out.objective_value = 0.0;
    for (std::size_t j = 0; j < model_.objective.size(); ++j)
      out.objective_value += model_.objective[j] * out.values[j];
    out.iterations = iterations_;
  }

  const LpModel& model_;
  SimplexOptions opts_;
  std::size_t rows_ = 0;
  std::size_t structural_ = 0;
  std::size_t cap_ = 0;
  std::size_t refactor_period_ = 0;
  std::size_t since_refactor_ = 0;
  std::size_t iterations_ = 0;
  std::size_t cursor_ = 0;
  bool has_artificials_ = false;

  std::vector<std::size_t> col_start_;
  std::vector<std::size_t> col_row_;
  std::vector<double> col_val_;
  std::vector<char> artificial_;
  std::vector<double> b_;

  std::vector<std::size_t> initial_basis_;
  std::vector<std::size_t> basis_;  // row -> column
  std::vector<std::size_t> pos_;    // column -> row, kNone if nonbasic
  std::vector<double> binv_;        // row-major rows_ x rows_
  std::vector<double> xb_;
};

}  // namespace

LpOutcome solve(const LpModel& model, const SimplexOptions& opts,
                std::span<const std::size_t> start) {
  RevisedSimplex solver(model, opts);
  solver.apply_start(start);
  return solver.run();
}

}  // namespace vbp
