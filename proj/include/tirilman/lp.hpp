#ifndef TIRILMAN_LP_HPP
#define TIRILMAN_LP_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "tirilman/error.hpp"

namespace tirilman {

struct LinearConstraint {
  std::vector<double> row;
  double rhs = 0.0;
};

/// maximize <objective, a>  s.t.  <row, a> <= rhs for every constraint,
///                                0 <= a_i <= upper_i.
/// Right-hand sides must be >= 0, so the origin is feasible; the box keeps
/// the region bounded.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<LinearConstraint> constraints;
  std::vector<double> upper;
};

struct LpSolution {
  double optimum = 0.0;
  std::vector<double> point;
  std::size_t pivots = 0;
};

struct LpOptions {
  std::size_t max_variables = 64;
  std::size_t max_constraints = 20000;
  std::size_t max_pivots = 200000;
  /// Bland's rule throughout (default), or largest-violation / most
  /// negative multiplier pricing that falls back to Bland after a run of
  /// degenerate pivots.
  bool bland_only = true;
};

/// Dense simplex on the vertex representation of a small LP: a vertex is a
/// set of n tight constraints (rows, upper bounds or a_i >= 0), held as an
/// n x n basis matrix. Cheap when n is small and the row count is large,
/// which is the cutting-plane regime.
///
/// solve() runs primal simplex from the current (feasible) basis, starting
/// at the origin. add_constraint() + solve() re-optimizes from the previous
/// optimal basis with dual simplex, then finishes with a primal pass.
/// Both phases use Bland's smallest-index rule for every choice, which rules
/// out cycling and makes the pivot sequence a deterministic function of the
/// constraint order.
class DenseSimplex {
 public:
  explicit DenseSimplex(LinearProgram lp, LpOptions opts = {}) : lp_(std::move(lp)), opts_(opts) {
    n_ = lp_.objective.size();
    if (lp_.upper.size() != n_) throw invalid_input("LP: upper bound count must equal variable count");
    if (n_ > opts_.max_variables)
      throw cap_exceeded("LP: " + std::to_string(n_) + " variables exceed cap " + std::to_string(opts_.max_variables));
    for (double u : lp_.upper)
      if (!(u >= 0.0) || !std::isfinite(u)) throw invalid_input("LP: upper bounds must be finite and >= 0");
    for (const auto& c : lp_.constraints) validate(c);
    check_row_cap(lp_.constraints.size());
    for (double c : lp_.objective) {
      if (!std::isfinite(c)) throw invalid_input("LP: objective must be finite");
      cscale_ = std::max(cscale_, std::abs(c));
    }
    // Start at the origin: every a_i >= 0 tight. Nonnegativity rows get
    // indices after the user rows, so they are tracked by an offset.
    basis_.resize(n_);
    for (std::size_t j = 0; j < n_; ++j) basis_[j] = Slot{Slot::nonneg, j};
    x_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_));
  }

  std::size_t variables() const noexcept { return n_; }
  std::size_t rows() const noexcept { return lp_.constraints.size(); }

  void add_constraint(LinearConstraint c) {
    validate(c);
    check_row_cap(lp_.constraints.size() + 1);
    lp_.constraints.push_back(std::move(c));
  }

  LpSolution solve() {
    LpSolution sol;
    sol.point.assign(n_, 0.0);
    if (n_ == 0 || cscale_ == 0.0) return sol;
    factor();
    dual_phase(sol.pivots);
    primal_phase(sol.pivots);
    for (std::size_t j = 0; j < n_; ++j) sol.point[j] = std::max(0.0, x_[static_cast<Eigen::Index>(j)]);
    double opt = 0.0;
    for (std::size_t j = 0; j < n_; ++j) opt += lp_.objective[j] * sol.point[j];
    sol.optimum = opt;
    return sol;
  }

 private:
  // A constraint slot: a user row, an upper bound a_j <= u_j, or a_j >= 0.
  // Bland order: rows, then upper bounds, then nonnegativity.
  struct Slot {
    enum Kind { row, upper, nonneg } kind;
    std::size_t index;

    std::size_t order(std::size_t m, std::size_t n) const {
      return kind == row ? index : kind == upper ? m + index : m + n + index;
    }
    friend bool operator==(const Slot&, const Slot&) = default;
  };

  void validate(const LinearConstraint& c) const {
    if (c.row.size() != n_) throw invalid_input("LP: constraint row has wrong length");
    if (!(c.rhs >= 0.0) || !std::isfinite(c.rhs)) throw invalid_input("LP: right-hand sides must be finite and >= 0");
    for (double v : c.row)
      if (!std::isfinite(v)) throw invalid_input("LP: constraint coefficients must be finite");
  }

  void check_row_cap(std::size_t m) const {
    if (m > opts_.max_constraints)
      throw cap_exceeded("LP: " + std::to_string(m) + " constraints exceed cap " +
                         std::to_string(opts_.max_constraints));
  }

  double coeff(const Slot& s, std::size_t j) const {
    switch (s.kind) {
      case Slot::row:
        return lp_.constraints[s.index].row[j];
      case Slot::upper:
        return s.index == j ? 1.0 : 0.0;
      case Slot::nonneg:
        return s.index == j ? -1.0 : 0.0;
    }
    return 0.0;
  }

  double rhs(const Slot& s) const {
    return s.kind == Slot::row ? lp_.constraints[s.index].rhs : s.kind == Slot::upper ? lp_.upper[s.index] : 0.0;
  }

  double dot(const Slot& s, const Eigen::VectorXd& v) const {
    if (s.kind == Slot::row) {
      const auto& r = lp_.constraints[s.index].row;
      double acc = 0.0;
      for (std::size_t j = 0; j < n_; ++j) acc += r[j] * v[static_cast<Eigen::Index>(j)];
      return acc;
    }
    const double vj = v[static_cast<Eigen::Index>(s.index)];
    return s.kind == Slot::upper ? vj : -vj;
  }

  template <class F>
  void for_each_nonbasic(F&& f) const {
    const std::size_t m = lp_.constraints.size();
    std::vector<char> used_row(m, 0), used_up(n_, 0), used_nn(n_, 0);
    for (const auto& s : basis_) {
      (s.kind == Slot::row ? used_row[s.index] : s.kind == Slot::upper ? used_up[s.index] : used_nn[s.index]) = 1;
    }
    for (std::size_t k = 0; k < m; ++k)
      if (!used_row[k]) f(Slot{Slot::row, k});
    for (std::size_t j = 0; j < n_; ++j)
      if (!used_up[j]) f(Slot{Slot::upper, j});
    for (std::size_t j = 0; j < n_; ++j)
      if (!used_nn[j]) f(Slot{Slot::nonneg, j});
  }

  void factor() {
    Eigen::MatrixXd B(n_, n_);
    Eigen::VectorXd h(n_);
    for (std::size_t r = 0; r < n_; ++r) {
      for (std::size_t j = 0; j < n_; ++j)
        B(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = coeff(basis_[r], j);
      h[static_cast<Eigen::Index>(r)] = rhs(basis_[r]);
    }
    lu_.compute(B);
    if (!(std::abs(lu_.determinant()) > 0.0)) throw numerical_failure("LP: singular basis");
    x_ = lu_.solve(h);
    const Eigen::Map<const Eigen::VectorXd> c(lp_.objective.data(), static_cast<Eigen::Index>(n_));
    y_ = lu_.transpose().solve(c);
  }

  void count_pivot(std::size_t& pivots) const {
    if (++pivots > opts_.max_pivots) throw numerical_failure("LP: pivot cap reached");
  }

  std::size_t order(const Slot& s) const { return s.order(lp_.constraints.size(), n_); }

  std::size_t stall_limit() const noexcept { return opts_.bland_only ? 0 : 2 * n_ + 8; }

  double row_scale(const Slot& s) const {
    if (s.kind != Slot::row) return 1.0;
    double acc = 0.0;
    for (double v : lp_.constraints[s.index].row) acc += v * v;
    return std::sqrt(acc);
  }

  // Restores primal feasibility while keeping the multipliers y >= 0.
  // Entering: the most violated constraint (violation over row scale);
  // after a run of degenerate pivots, the violated constraint of smallest
  // Bland order, until the objective moves again.
  void dual_phase(std::size_t& pivots) {
    std::size_t stall = 0;
    for (;;) {
      const bool bland = stall >= stall_limit();
      bool found = false;
      Slot enter{Slot::row, 0};
      double worst = 0.0;
      for_each_nonbasic([&](const Slot& s) {
        if (found && bland) return;
        const double viol = dot(s, x_) - rhs(s);
        if (viol <= 1e-11 * std::max(1.0, std::abs(rhs(s)))) return;
        const double score = viol / row_scale(s);
        if (!found || score > worst) {
          worst = score;
          enter = s;
          found = true;
        }
      });
      if (!found) return;
      Eigen::VectorXd g(n_);
      for (std::size_t j = 0; j < n_; ++j) g[static_cast<Eigen::Index>(j)] = coeff(enter, j);
      const Eigen::VectorXd alpha = lu_.transpose().solve(g);
      std::size_t leave = n_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < n_; ++r) {
        const double a = alpha[static_cast<Eigen::Index>(r)];
        if (a <= 1e-11) continue;
        const double ratio = std::max(0.0, y_[static_cast<Eigen::Index>(r)]) / a;
        if (leave == n_ || ratio < best - 1e-13 * std::max(1.0, best) ||
            (std::abs(ratio - best) <= 1e-13 * std::max(1.0, best) && order(basis_[r]) < order(basis_[leave]))) {
          best = ratio;
          leave = r;
        }
      }
      if (leave == n_) throw numerical_failure("LP: dual simplex found no pivot (infeasible?)");
      stall = best <= 1e-13 ? stall + 1 : 0;
      basis_[leave] = enter;
      count_pivot(pivots);
      factor();
    }
  }

  void primal_phase(std::size_t& pivots) {
    const double dual_tol = 1e-12 * cscale_;
    const double dir_tol = 1e-11;
    std::size_t stall = 0;
    for (;;) {
      // Leaving: most negative multiplier, or the basic constraint of
      // smallest Bland order with y < 0 once pivots stall.
      const bool bland = stall >= stall_limit();
      std::size_t leave = n_;
      for (std::size_t r = 0; r < n_; ++r) {
        const double y = y_[static_cast<Eigen::Index>(r)];
        if (y >= -dual_tol) continue;
        if (leave == n_ || (bland ? order(basis_[r]) < order(basis_[leave]) : y < y_[static_cast<Eigen::Index>(leave)]))
          leave = r;
      }
      if (leave == n_) return;

      Eigen::VectorXd unit = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_));
      unit[static_cast<Eigen::Index>(leave)] = -1.0;
      const Eigen::VectorXd d = lu_.solve(unit);
      const double dnorm = std::max(1.0, d.cwiseAbs().maxCoeff());

      // Ratio test; ties go to the smallest Bland order (nonbasic slots are
      // visited in increasing order).
      bool found = false;
      Slot enter{Slot::row, 0};
      double step = 0.0;
      for_each_nonbasic([&](const Slot& s) {
        const double gd = dot(s, d);
        if (gd <= dir_tol * dnorm) return;
        const double slack = std::max(0.0, rhs(s) - dot(s, x_));
        const double t = slack / gd;
        if (!found || t < step - 1e-13 * std::max(1.0, step)) {
          step = t;
          enter = s;
          found = true;
        }
      });
      if (!found) throw numerical_failure("LP: unbounded direction");
      stall = step <= 1e-13 ? stall + 1 : 0;
      basis_[leave] = enter;
      count_pivot(pivots);
      factor();
    }
  }

  LinearProgram lp_;
  LpOptions opts_;
  std::size_t n_ = 0;
  double cscale_ = 0.0;
  std::vector<Slot> basis_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
  Eigen::VectorXd x_;
  Eigen::VectorXd y_;
};

/// One-shot solve of a small LP from the origin. Returns an optimal vertex;
/// throws numerical_failure if pivoting stalls.
inline LpSolution solve_small_lp(const LinearProgram& lp, const LpOptions& opts = {}) {
  DenseSimplex s(lp, opts);
  return s.solve();
}

}  // namespace tirilman

#endif  // TIRILMAN_LP_HPP
