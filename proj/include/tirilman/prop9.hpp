#ifndef TIRILMAN_PROP9_HPP
#define TIRILMAN_PROP9_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tirilman/checks.hpp"
#include "tirilman/dual.hpp"
#include "tirilman/error.hpp"
#include "tirilman/norm.hpp"
#include "tirilman/params.hpp"
#include "tirilman/report.hpp"
#include "tirilman/rng.hpp"
#include "tirilman/sampling.hpp"
#include "tirilman/vector.hpp"

namespace tirilman {

struct Prop9Params {
  int m = 2;
  double epsilon = 0.0;
  double delta = 0.0;
  /// Strict upper bound for delta'.
  double delta_prime_bound = 0.0;
  /// (gamma delta')^{-p}: support needed before ||x_i||_inf < delta' is
  /// compatible with norm 1.
  double required_support_estimate = 0.0;
  /// Empty when the estimate exceeds 1e9 (infeasible at desk scale).
  std::optional<std::uint64_t> M_hint;
};

/// Constants of the asymptotic-l_q argument, with epsilon at half of its
/// upper bound 1/(4 m 3^{1/q}).
inline Prop9Params prop9_parameters(int m, const SpaceParams& params) {
  if (m < 2) throw invalid_input("prop9_parameters: m must be >= 2");
  Prop9Params r;
  r.m = m;
  const double md = static_cast<double>(m);
  r.epsilon = 0.5 / (4.0 * md * params.three_pow_inv_q());
  r.delta = r.epsilon / (6.0 / params.gamma() * md);
  r.delta_prime_bound = std::pow(r.delta, params.q() + 1.0) / (std::pow(params.gamma(), -params.q()) * md);
  r.required_support_estimate = std::pow(params.gamma() * r.delta_prime_bound, -params.p());
  if (r.required_support_estimate <= 1e9)
    r.M_hint = static_cast<std::uint64_t>(std::ceil(r.required_support_estimate));
  return r;
}

struct ChunkDecomposition {
  /// n_i full chunks followed by the remainder chunk (possibly zero).
  std::vector<FiniteVector> chunks;
  std::vector<double> norms;
  /// norm - delta for each full chunk, and the bound it is held to: the
  /// magnitude of the coordinate that closed the chunk.
  std::vector<double> overshoot;
  std::vector<double> overshoot_bound;
  std::size_t n_i = 0;
  double delta = 0.0;
  double delta_prime = 0.0;
  /// 3 |a|^q / delta^q
  double count_bound = 0.0;
  bool count_bound_holds = false;
};

/// Greedy left-to-right cut of a*y into successive chunks of norm >= delta,
/// each chunk closed at the first coordinate where its norm reaches delta.
/// Chunk norms are taken on y's side (dual_norm for dual y). Throws
/// invalid_input when a coordinate of a*y exceeds delta + delta_prime.
inline ChunkDecomposition chunk_decompose(const FiniteVector& y, double a, double delta, double delta_prime,
                                          const SpaceParams& params, const LabOptions& opts = {}) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw invalid_input("chunk_decompose: delta must be > 0");
  if (!(delta_prime > 0.0) || !std::isfinite(delta_prime))
    throw invalid_input("chunk_decompose: delta_prime must be > 0");
  const auto s = y.scaled(a);
  for (const auto& e : s.entries())
    if (std::abs(e.value) > delta + delta_prime)
      throw invalid_input("chunk_decompose: block too coarse, |a y_" + std::to_string(e.position) +
                          "| = " + detail::format_exact(std::abs(e.value)) + " > delta + delta'");

  ChunkDecomposition r;
  r.delta = delta;
  r.delta_prime = delta_prime;
  const auto& ent = s.entries();
  auto piece = [&](std::size_t lo, std::size_t hi) {  // entries [lo, hi)
    return FiniteVector(std::vector<Entry>(ent.begin() + static_cast<std::ptrdiff_t>(lo),
                                           ent.begin() + static_cast<std::ptrdiff_t>(hi)),
                        y.side());
  };
  auto norm = [&](const FiniteVector& v) { return side_norm(v, params, opts); };

  std::size_t at = 0;
  for (;;) {
    const auto rest = piece(at, ent.size());
    const double rest_norm = norm(rest);
    if (rest_norm < delta) {
      r.chunks.push_back(rest);
      r.norms.push_back(rest_norm);
      break;
    }
    // Smallest end with norm >= delta; the norm of a prefix is monotone in
    // its length by 1-unconditionality.
    std::size_t lo = at + 1, hi = ent.size();
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (norm(piece(at, mid)) >= delta)
        hi = mid;
      else
        lo = mid + 1;
    }
    auto chunk = piece(at, lo);
    const double cn = norm(chunk);
    r.overshoot.push_back(cn - delta);
    r.overshoot_bound.push_back(std::abs(ent[lo - 1].value));
    r.chunks.push_back(std::move(chunk));
    r.norms.push_back(cn);
    ++r.n_i;
    at = lo;
  }
  r.count_bound = 3.0 * std::pow(std::abs(a), params.q()) / std::pow(delta, params.q());
  r.count_bound_holds = static_cast<double>(r.n_i) <= r.count_bound;
  return r;
}

namespace detail {

/// min(n, n^{1/q} / gamma): an upper bound for dual_norm(ones*(n)) that
/// follows from the definition alone (sup term and the all-singletons
/// family); n / ti_norm(ones(n)) is a matching lower bound via the flat
/// witness.
inline double flat_dual_upper(std::size_t n, const SpaceParams& params) {
  const double nd = static_cast<double>(n);
  return std::min(nd, std::pow(nd, 1.0 / params.q()) / params.gamma());
}

/// Smallest block length whose normalized flat dual block has sup norm <= eta.
inline std::optional<std::size_t> flat_block_length(double eta, std::size_t budget, const SpaceParams& params) {
  for (std::size_t n = 1; n <= budget; ++n)
    if (1.0 / flat_dual_upper(n, params) <= eta) return n;
  return std::nullopt;
}

}  // namespace detail

/// Two-sided estimate 3^{-1/q} <= ||sum a_i y_i|| <= 3^{q+1} gamma^{-q} for
/// unit-l_q coefficients and m normalized dual blocks with ||y_i||_inf <= eta.
///
/// Blocks are flat with random signs and random gaps. Their dual norm is
/// certified in closed form (the two bounds in flat_dual_upper must agree to
/// 1e-12), so blocks can be far longer than the cutting-plane cap. R is then
/// bracketed: R >= <b, w> / ||w|| with the Lemma 4 witness
/// w = sum sign(a_i)|a_i|^{q-1} x_i, and R <= sum |a_i| by the triangle
/// inequality. When the total support fits the dual cap the bracket comes
/// from dual_norm instead.
inline CheckReport asymptotic_lq_profile(const SpaceParams& params, int m, double eta, std::size_t support_budget,
                                         std::size_t trials, std::uint64_t seed, const LabOptions& opts = {}) {
  detail::require_strict(params, "prop9");
  if (m < 1) throw invalid_input("asymptotic_lq_profile: m must be >= 1");
  if (!(eta > 0.0)) throw invalid_input("asymptotic_lq_profile: eta must be > 0");
  const auto len = detail::flat_block_length(eta, support_budget, params);
  if (!len)
    throw invalid_input("asymptotic_lq_profile: eta = " + detail::format_exact(eta) +
                        " needs blocks longer than the support budget " + std::to_string(support_budget));
  const std::size_t n_min = *len;
  const std::size_t jitter = std::min<std::size_t>(4, support_budget - n_min);

  CheckReport r("prop9", params, trials, seed);
  r.relaxed = true;
  const double q = params.q();
  const double lower = 1.0 / params.three_pow_inv_q();
  const double upper = std::pow(3.0, q + 1.0) * std::pow(params.gamma(), -q);
  const auto pp = prop9_parameters(std::max(m, 2), params);
  const double eps = pp.epsilon;
  const double md = static_cast<double>(m);
  r.constants["m"] = md;
  r.constants["eta"] = eta;
  r.constants["block_length_min"] = static_cast<double>(n_min);
  r.constants["lower_bound"] = lower;
  r.constants["upper_bound"] = upper;
  r.constants["theory_epsilon"] = pp.epsilon;
  r.constants["theory_delta"] = pp.delta;
  r.constants["theory_delta_prime_bound"] = pp.delta_prime_bound;
  r.constants["theory_required_support_estimate"] = pp.required_support_estimate;
  r.constants["big_part_lower"] = lower * std::pow(std::max(0.0, 1.0 - eps * md), 1.0 / q);
  r.constants["small_part_bound"] = md * eps;

  std::map<std::size_t, double> ones_norm;  // n -> ti_norm(ones(n))
  double cert_gap = 0.0;
  auto flat_norm = [&](std::size_t n) {
    auto it = ones_norm.find(n);
    if (it != ones_norm.end()) return it->second;
    const double v = ti_norm_value(FiniteVector::ones(n), params, opts.norm);
    const double gap = detail::rel_gap(static_cast<double>(n) / v, detail::flat_dual_upper(n, params));
    if (gap > kExactTol)
      throw numerical_failure("flat dual block norm not certified at n = " + std::to_string(n));
    cert_gap = std::max(cert_gap, gap);
    return ones_norm[n] = v;
  };

  std::size_t exact = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(trial_seed(seed, "prop9/" + std::to_string(m), t));
    // Unit-l_q coefficients.
    std::vector<double> a(static_cast<std::size_t>(m), 0.0);
    if (t == 0) {
      a[0] = 1.0;
    } else if (t == 1) {
      std::fill(a.begin(), a.end(), std::pow(md, -1.0 / q));
    } else {
      a = sample_coefficients(rng, a.size(), random_pattern(rng));
      const double s = detail::lq_norm(a, q);
      for (auto& x : a) x /= s;
    }

    // Flat blocks y_i with entries +-1/D(n_i) and matching witnesses x_i.
    std::vector<Entry> yb, yw, ywb;
    std::vector<std::size_t> sizes;
    Position pos = 1 + rng.integer(0, 3);
    double r_hi = 0.0, r_hi_small = 0.0, best_single = 0.0, big_q = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const std::size_t n = n_min + (jitter ? rng.index(jitter + 1) : 0);
      sizes.push_back(n);
      const double height = 1.0 / detail::flat_dual_upper(n, params);
      const double xh = 1.0 / flat_norm(n);
      const double wc = std::copysign(std::pow(std::abs(a[i]), q - 1.0), a[i]);
      const bool big = std::abs(a[i]) >= eps;
      for (std::size_t k = 0; k < n; ++k) {
        const double sg = rng.sign();
        if (a[i] != 0.0) {
          yb.push_back({pos, a[i] * sg * height});
          yw.push_back({pos, wc * sg * xh});
          if (big) ywb.push_back({pos, wc * sg * xh});
        }
        pos += 1 + (rng.chance(0.1) ? rng.integer(1, 3) : 0);
      }
      pos += rng.integer(0, 3);
      r_hi += std::abs(a[i]);
      if (big)
        big_q += std::pow(std::abs(a[i]), q);
      else
        r_hi_small += std::abs(a[i]);
      // ||a_i y_i|| >= |a_i| (n / ||ones(n)||) / D(n), and R dominates it.
      best_single = std::max(best_single, std::abs(a[i]) * static_cast<double>(n) * xh * height);
    }
    const FiniteVector b(yb, Side::dual);
    const FiniteVector w(yw, Side::primal);
    double r_lo = std::max(best_single, b.dot(w.with_side(Side::dual)) / ti_norm_value(w, params, opts.norm));

    // Big-coefficient part, bracketed from below by the same witness
    // restricted to the big blocks.
    const FiniteVector wb(ywb, Side::primal);
    double r_lo_big = 0.0;
    if (wb.size() == w.size())
      r_lo_big = r_lo;
    else if (!wb.empty())
      r_lo_big = b.dot(wb.with_side(Side::dual)) / ti_norm_value(wb, params, opts.norm);

    if (b.size() <= opts.dual.support_cap) {
      const auto br = detail::dual_bracket(b, params, opts);
      r_lo = std::max(r_lo, br.lo);
      r_hi = std::min(r_hi, br.hi);
      ++exact;
    }

    auto text = [&] {
      std::string s = "a=" + CheckReport::list(a) + " block_lengths=[";
      for (std::size_t i = 0; i < sizes.size(); ++i) s += (i ? "," : "") + std::to_string(sizes[i]);
      return s + "] R_lo=" + detail::format_exact(r_lo) + " R_hi=" + detail::format_exact(r_hi);
    };
    r.record("lower", r_lo - lower, kDualTol, text);
    r.record("upper", upper - r_hi, kDualTol, text);
    r.record("upper_qpower", upper - std::pow(r_hi, q), kDualTol, text);
    r.record("big_part", r_lo_big - r.constants["big_part_lower"], kDualTol, text);
    r.record("big_part_lq", r_lo_big - lower * std::pow(big_q, 1.0 / q), kDualTol, text);
    r.record("small_part", md * eps - r_hi_small, kDualTol, text);
    ++r.instances;
  }
  r.constants["flat_certificate_max_rel_gap"] = cert_gap;
  r.constants["exact_dual_samples"] = static_cast<double>(exact);
  return r;
}

}  // namespace tirilman

#endif  // TIRILMAN_PROP9_HPP
