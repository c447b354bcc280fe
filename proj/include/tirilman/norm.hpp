#ifndef TIRILMAN_NORM_HPP
#define TIRILMAN_NORM_HPP

// Exact evaluation of the implicit norm
//
//   ||a|| = max( ||a||_inf , gamma * sup_{E_1 < ... < E_n} sum_j ||E_j a|| / n^{1/q} )
//
// on finitely supported vectors, by dynamic programming over intervals of the
// (reindexed) support.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "tirilman/error.hpp"
#include "tirilman/params.hpp"
#include "tirilman/tree.hpp"
#include "tirilman/vector.hpp"

namespace tirilman {

struct NormOptions {
  /// Largest support accepted by ti_norm. Cost grows like N^4 / 24 max-plus
  /// steps: roughly 0.1 s at N = 200 and a few seconds at N = 512.
  std::size_t support_cap = 512;
};

struct NormResult {
  double value = 0.0;
  /// Leaf at an argmax position when ||v||_inf attains, empty for v = 0.
  PartitionTree certificate;
  /// Nesting depth of the certificate.
  int levels_used = 0;
};

namespace detail {

/// max_t (x[t] + y[t]) over t < count; -inf when count == 0. Four independent
/// accumulators; max is exact, so the result does not depend on the order.
inline double max_plus(const double* x, const double* y, std::size_t count) noexcept {
  constexpr double lowest = -std::numeric_limits<double>::infinity();
  double m0 = lowest, m1 = lowest, m2 = lowest, m3 = lowest;
  std::size_t t = 0;
  for (; t + 4 <= count; t += 4) {
    m0 = std::max(m0, x[t] + y[t]);
    m1 = std::max(m1, x[t + 1] + y[t + 1]);
    m2 = std::max(m2, x[t + 2] + y[t + 2]);
    m3 = std::max(m3, x[t + 3] + y[t + 3]);
  }
  for (; t < count; ++t) m0 = std::max(m0, x[t] + y[t]);
  return std::max(std::max(m0, m1), std::max(m2, m3));
}

inline std::vector<double> split_weights(std::size_t n, const SpaceParams& params) {
  std::vector<double> w(n + 1, 0.0);
  for (std::size_t k = 2; k <= n; ++k) w[k] = params.split_weight(k);
  return w;
}

/// Values f(a, c) of the norm restricted to every interval [a, c] of a
/// magnitude array, stored column-major (index c * n + a) so that the
/// inner split loop walks contiguous memory.
class IntervalTable {
 public:
  /// Fixed-point table: parts are measured with the table being built.
  IntervalTable(std::span<const double> mags, const SpaceParams& params)
      : mags_(mags.begin(), mags.end()), weights_(split_weights(mags.size(), params)) {
    build(nullptr);
  }

  /// One recursion level: parts are measured with `parts` (the previous level).
  IntervalTable(std::span<const double> mags, const SpaceParams& params, const IntervalTable& parts)
      : mags_(mags.begin(), mags.end()), weights_(split_weights(mags.size(), params)) {
    build(&parts.f_);
  }

  /// Level-0 table: f(a, c) = max |v_t| over the interval.
  static IntervalTable sup_level(std::span<const double> mags, const SpaceParams& params) {
    IntervalTable t(mags, params, Level0{});
    return t;
  }

  std::size_t size() const noexcept { return mags_.size(); }

  double value(std::size_t a, std::size_t c) const noexcept { return f_[c * size() + a]; }

  /// Certificate for the interval [a, c]; `positions` maps indices to
  /// ambient positions. Only meaningful on a fixed-point table.
  PartitionTree backtrace(std::size_t a, std::size_t c, std::span<const Position> positions) const {
    std::size_t arg = a;
    double runmax = mags_[a];
    for (std::size_t t = a + 1; t <= c; ++t)
      if (mags_[t] > runmax) {
        runmax = mags_[t];
        arg = t;
      }
    if (runmax >= value(a, c)) return PartitionTree::leaf(positions[arg]);

    const std::size_t n = size();
    const std::size_t len = c - a + 1;
    // best[k][t]: best k-part sum over [a, t]
    std::vector<double> best((len + 1) * n, 0.0);
    for (std::size_t col = a; col <= c; ++col) {
      const double* fc = f_.data() + col * n;
      for (std::size_t k = 2; k <= col - a + 1; ++k) {
        const double* prev = best.data() + (k - 1) * n;
        const std::size_t lo = a + k - 2;
        best[k * n + col] = max_plus(prev + lo, fc + lo + 1, col - lo);
      }
      best[n + col] = value(a, col);
    }
    double split = 0.0;
    for (std::size_t k = 2; k <= len; ++k) split = std::max(split, weights_[k] * best[k * n + c]);
    std::size_t parts = 2;
    while (parts < len && weights_[parts] * best[parts * n + c] != split) ++parts;

    std::vector<std::size_t> ends;  // right ends of parts, last part first
    std::size_t end = c;
    for (std::size_t k = parts; k >= 2; --k) {
      const double target = best[k * n + end];
      const double* fc = f_.data() + end * n;
      std::size_t t = a + k - 2;
      while (t + 1 < end && best[(k - 1) * n + t] + fc[t + 1] != target) ++t;
      ends.push_back(end);
      end = t;
    }
    ends.push_back(end);
    std::reverse(ends.begin(), ends.end());

    std::vector<PartitionTree> kids;
    kids.reserve(ends.size());
    std::size_t lo = a;
    for (std::size_t e : ends) {
      kids.push_back(backtrace(lo, e, positions));
      lo = e + 1;
    }
    return PartitionTree::internal(weights_[parts], std::move(kids));
  }

 private:
  struct Level0 {};

  IntervalTable(std::span<const double> mags, const SpaceParams& params, Level0)
      : mags_(mags.begin(), mags.end()), weights_(split_weights(mags.size(), params)) {
    const std::size_t n = size();
    f_.assign(n * n, 0.0);
    for (std::size_t a = 0; a < n; ++a) {
      double m = 0.0;
      for (std::size_t c = a; c < n; ++c) {
        m = std::max(m, mags_[c]);
        f_[c * n + a] = m;
      }
    }
  }

  void build(const std::vector<double>* part_table) {
    const std::size_t n = size();
    f_.assign(n * n, 0.0);
    if (n == 0) return;
    const double* src = part_table ? part_table->data() : f_.data();
    std::vector<double> best((n + 1) * n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
      double runmax = 0.0;
      for (std::size_t c = i; c < n; ++c) {
        runmax = std::max(runmax, mags_[c]);
        const double* fc = src + c * n;
        double split = 0.0;
        for (std::size_t k = 2; k <= c - i + 1; ++k) {
          const double* prev = best.data() + (k - 1) * n;
          const std::size_t lo = i + k - 2;
          const double b = max_plus(prev + lo, fc + lo + 1, c - lo);
          best[k * n + c] = b;
          split = std::max(split, weights_[k] * b);
        }
        const double fv = std::max(runmax, split);
        f_[c * n + i] = fv;
        best[n + c] = part_table ? src[c * n + i] : fv;
      }
    }
  }

  std::vector<double> mags_;
  std::vector<double> weights_;
  std::vector<double> f_;
};

inline void check_cap(const FiniteVector& v, const NormOptions& opts) {
  if (v.size() > opts.support_cap)
    throw cap_exceeded("support size " + std::to_string(v.size()) + " exceeds cap " +
                       std::to_string(opts.support_cap));
}

}  // namespace detail

/// Norm value only; skips certificate extraction.
inline double ti_norm_value(const FiniteVector& v, const SpaceParams& params, const NormOptions& opts = {}) {
  detail::check_cap(v, opts);
  if (v.empty()) return 0.0;
  const auto mags = v.magnitudes();
  const detail::IntervalTable table(mags, params);
  return table.value(0, mags.size() - 1);
}

/// Exact norm together with a norming partition tree.
inline NormResult ti_norm(const FiniteVector& v, const SpaceParams& params, const NormOptions& opts = {}) {
  detail::check_cap(v, opts);
  NormResult r;
  if (v.empty()) return r;
  const auto mags = v.magnitudes();
  const auto positions = v.support();
  const detail::IntervalTable table(mags, params);
  r.value = table.value(0, mags.size() - 1);
  r.certificate = table.backtrace(0, mags.size() - 1, positions);
  r.levels_used = r.certificate.depth();
  return r;
}

inline PartitionTree norming_tree(const FiniteVector& v, const SpaceParams& params,
                                  const NormOptions& opts = {}) {
  return ti_norm(v, params, opts).certificate;
}

/// Level m of the recursive norm sequence: level 0 is ||v||_inf, level m+1
/// applies the defining formula with level-m norms on the parts.
/// Stabilizes at ti_norm once m >= |support(v)|.
inline double ti_norm_level(const FiniteVector& v, const SpaceParams& params, int m,
                            const NormOptions& opts = {}) {
  if (m < 0) throw invalid_input("ti_norm_level: level must be >= 0");
  detail::check_cap(v, opts);
  if (v.empty()) return 0.0;
  const auto mags = v.magnitudes();
  auto table = detail::IntervalTable::sup_level(mags, params);
  const int levels = std::min<int>(m, static_cast<int>(mags.size()));
  for (int l = 0; l < levels; ++l) table = detail::IntervalTable(mags, params, table);
  return table.value(0, mags.size() - 1);
}

/// Validation oracle: literal enumeration of every family E_1 < ... < E_n of
/// consecutive sets (non-covering families, empty members, n up to 2N) at
/// every nesting depth, iterated to the fixed point. Support <= 7.
inline double oracle_norm(const FiniteVector& v, const SpaceParams& params) {
  constexpr std::size_t kMax = 7;
  if (v.size() > kMax)
    throw cap_exceeded("oracle_norm: support " + std::to_string(v.size()) + " exceeds 7");
  if (v.empty()) return 0.0;
  const auto mags = v.magnitudes();
  const std::size_t n = mags.size();
  const std::size_t max_members = 2 * n;
  std::vector<double> inv_root(max_members + 1, 0.0);
  for (std::size_t k = 1; k <= max_members; ++k)
    inv_root[k] = std::pow(static_cast<double>(k), -1.0 / params.q());

  auto idx = [n](std::size_t a, std::size_t c) { return a * n + c; };
  std::vector<double> sup(n * n, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    double m = 0.0;
    for (std::size_t c = a; c < n; ++c) {
      m = std::max(m, mags[c]);
      sup[idx(a, c)] = m;
    }
  }

  std::vector<double> g = sup;
  for (int iter = 0; iter < 64; ++iter) {
    std::vector<double> next(n * n, 0.0);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t c = a; c < n; ++c) {
        double best = 0.0;
        // Enumerate every selection of disjoint increasing nonempty runs
        // inside [a, c]; elements not covered by a run are gaps. The family
        // may add any number of empty members up to 2N in total.
        auto visit = [&](auto&& self, std::size_t s, double sum, std::size_t k) -> void {
          if (s > c) {
            if (k == 0) return;
            for (std::size_t members = k; members <= max_members; ++members)
              best = std::max(best, params.gamma() * sum * inv_root[members]);
            return;
          }
          self(self, s + 1, sum, k);
          for (std::size_t e = s; e <= c; ++e) self(self, e + 1, sum + g[idx(s, e)], k + 1);
        };
        visit(visit, a, 0.0, 0);
        next[idx(a, c)] = std::max(sup[idx(a, c)], best);
      }
    }
    if (next == g) break;
    g = std::move(next);
  }
  return g[idx(0, n - 1)];
}

}  // namespace tirilman

#endif  // TIRILMAN_NORM_HPP
