#ifndef TIRILMAN_CHECKS_HPP
#define TIRILMAN_CHECKS_HPP

// Property suites. Each trial draws from its own generator seeded by
// trial_seed(seed, suite, t), so reports depend only on (params, trials, seed).
// Dual-side margins use the conservative end of the cutting-plane bracket
// [lower_bound, value]: the lower end where the inequality needs the dual
// norm to be large, the upper end where it needs it to be small.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "tirilman/block.hpp"
#include "tirilman/dual.hpp"
#include "tirilman/error.hpp"
#include "tirilman/norm.hpp"
#include "tirilman/params.hpp"
#include "tirilman/report.hpp"
#include "tirilman/rng.hpp"
#include "tirilman/sampling.hpp"
#include "tirilman/vector.hpp"

namespace tirilman {

inline constexpr double kPrimalTol = 1e-9;
inline constexpr double kDualTol = 1e-6;
inline constexpr double kExactTol = 1e-12;

/// Total primal support per instance in the block suites; keeps each DP
/// under ~10 ms while still allowing single blocks of 64 coordinates.
inline constexpr std::size_t kPrimalBudget = 128;
inline constexpr std::size_t kPrimalBlockCap = 64;
/// Total dual support per instance in the dual suites.
inline constexpr std::size_t kDualBudget = 10;

inline std::string describe(const FiniteVector& v) {
  std::string s = "{";
  bool first = true;
  for (const auto& e : v.entries()) {
    if (!first) s += ",";
    first = false;
    s += std::to_string(e.position) + ":" + detail::format_exact(e.value);
  }
  return s + "}";
}

inline std::string describe(const BlockBasis& b) {
  std::string s = "[";
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (j) s += ",";
    s += describe(b[j]);
  }
  return s + "]";
}

namespace detail {

inline void require_strict(const SpaceParams& params, const char* suite) {
  if (!params.strict_regime())
    throw regime_error(std::string(suite) + " requires gamma < 3^(-1/q); got gamma=" + format_exact(params.gamma()) +
                       ", p=" + format_exact(params.p()));
}

/// n block sizes, each in [1, min(block_cap, budget / n)].
inline std::vector<std::size_t> block_sizes(Rng& rng, std::size_t n, std::size_t block_cap, std::size_t budget) {
  const std::size_t per = std::max<std::size_t>(1, std::min(block_cap, budget / n));
  std::vector<std::size_t> s(n);
  for (auto& x : s) x = 1 + rng.index(per);
  return s;
}

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
};

inline Bracket dual_bracket(const FiniteVector& b, const SpaceParams& params, const LabOptions& opts) {
  const auto r = dual_norm(b.with_side(Side::dual), params, opts.dual);
  if (!r.converged) throw numerical_failure("dual_norm did not converge within the cut cap");
  return {r.lower_bound, r.value};
}

inline double lq_norm(const std::vector<double>& a, double q) {
  double s = 0.0;
  for (double x : a) s += std::pow(std::abs(x), q);
  return std::pow(s, 1.0 / q);
}

inline double rel_gap(double x, double y) { return std::abs(x - y) / std::max(1.0, std::abs(y)); }

inline void put_params(CheckReport& r, const SpaceParams& params) {
  r.constants["three_pow_inv_q"] = 1.0 / params.three_pow_inv_q();
  r.constants["three_pow_1_over_q"] = params.three_pow_inv_q();
}

}  // namespace detail

/// Prop 1: sum a_j e_j is 1-dominated by sum a_j x_j for normalized blocks.
inline CheckReport check_prop1(const SpaceParams& params, std::size_t trials, std::uint64_t seed,
                               const LabOptions& opts = {}) {
  CheckReport r("prop1", params, trials, seed);
  double kmax = 0.0, rmin = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(trial_seed(seed, "prop1", t));
    const std::size_t n = 1 + rng.index(8);
    const auto x = t == 0 ? BlockBasis::canonical(n, Side::primal)
                          : sample_blocks(rng, params, detail::block_sizes(rng, n, kPrimalBlockCap, kPrimalBudget),
                                          Side::primal, true, opts);
    const auto a = sample_coefficients(rng, n, random_pattern(rng));
    const double blocks = ti_norm_value(x.combine(a), params, opts.norm);
    const double canon = ti_norm_value(FiniteVector::from_values(a), params, opts.norm);
    kmax = std::max(kmax, canon / blocks);
    rmin = std::min(rmin, blocks / canon);
    r.record("domination", blocks - canon, kPrimalTol,
             [&] { return "blocks=" + describe(x) + " a=" + CheckReport::list(a); });
    ++r.instances;
  }
  r.constants["K_lower_canonical_over_blocks"] = kmax;
  r.constants["min_ratio_blocks_over_canonical"] = rmin;
  return r;
}

/// Prop 2(i): gamma n^{1/p} <= ||sum x_j|| <= 3^{1/q} n^{1/p}. n = 0 draws
/// n in [1, 8] per trial.
inline CheckReport check_prop2(const SpaceParams& params, std::size_t n, std::size_t trials, std::uint64_t seed,
                               const LabOptions& opts = {}) {
  detail::require_strict(params, "prop2");
  CheckReport r("prop2", params, trials, seed);
  detail::put_params(r, params);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(trial_seed(seed, "prop2", t));
    const std::size_t k = n ? n : 1 + rng.index(8);
    const auto x = t == 0 ? BlockBasis::canonical(k, Side::primal)
                          : sample_blocks(rng, params, detail::block_sizes(rng, k, kPrimalBlockCap, kPrimalBudget),
                                          Side::primal, true, opts);
    const double value = ti_norm_value(x.sum(), params, opts.norm);
    const double root = std::pow(static_cast<double>(k), 1.0 / params.p());
    auto text = [&] { return "n=" + std::to_string(k) + " value=" + detail::format_exact(value) + " blocks=" + describe(x); };
    r.record("lower", value - params.gamma() * root, kPrimalTol, text);
    r.record("upper", params.three_pow_inv_q() * root - value, kPrimalTol, text);
    ++r.instances;
  }
  return r;
}

/// Prop 3: ||sum x_j|| <= 3^{1/q} (sum ||x_j||^p)^{1/p} for unnormalized
/// consecutive blocks.
inline CheckReport check_prop3(const SpaceParams& params, std::size_t trials, std::uint64_t seed,
                               const LabOptions& opts = {}) {
  detail::require_strict(params, "prop3");
  CheckReport r("prop3", params, trials, seed);
  detail::put_params(r, params);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(trial_seed(seed, "prop3", t));
    const std::size_t n = 1 + rng.index(8);
    const auto raw = sample_blocks(rng, params, detail::block_sizes(rng, n, kPrimalBlockCap, kPrimalBudget),
                                   Side::primal, false, opts);
    std::vector<FiniteVector> scaled;
    for (const auto& b : raw.blocks()) scaled.push_back(b.scaled(std::exp(rng.uniform(-3.0, 3.0))));
    const BlockBasis x(std::move(scaled), Side::primal);
    double sp = 0.0;
    for (const auto& b : x.blocks()) sp += std::pow(ti_norm_value(b, params, opts.norm), params.p());
    const double bound = params.three_pow_inv_q() * std::pow(sp, 1.0 / params.p());
    const double value = ti_norm_value(x.sum(), params, opts.norm);
    r.record("upper", bound - value, kPrimalTol, [&] { return "blocks=" + describe(x); });
    ++r.instances;
  }
  return r;
}

/// Lemma 4: ||sum a_j x_j*|| >= 3^{-1/q} (sum |a_j|^q)^{1/q} for normalized
/// dual blocks.
inline CheckReport check_lemma4(const SpaceParams& params, std::size_t trials, std::uint64_t seed,
                                const LabOptions& opts = {}) {
  detail::require_strict(params, "lemma4");
  CheckReport r("lemma4", params, trials, seed);
  detail::put_params(r, params);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(trial_seed(seed, "lemma4", t));
    std::size_t n;
    BlockBasis x;
    std::vector<double> a;
    if (t == 0) {
      n = 2;
      x = BlockBasis::canonical(2, Side::dual);
      a = {1.0, 1.0};
    } else {
      n = 1 + rng.index(6);
      x = sample_blocks(rng, params, detail::block_sizes(rng, n, kDualBudget, kDualBudget), Side::dual, true, opts);
      a = sample_coefficients(rng, n, random_pattern(rng));
    }
    const auto v = detail::dual_bracket(x.combine(a), params, opts);
    const double bound = detail::lq_norm(a, params.q()) / params.three_pow_inv_q();
    r.record("lower_lq", v.lo - bound, kDualTol,
             [&] { return "blocks=" + describe(x) + " a=" + CheckReport::list(a); });
    ++r.instances;
  }
  return r;
}

/// Lemma 7: ||sum_{j<=n} x_j*|| <= n^{1/q} / gamma. n = 0 draws n in [1, 8].
inline CheckReport check_lemma7(const SpaceParams& params, std::size_t n, std::size_t trials, std::uint64_t seed,
                                const LabOptions& opts = {}) {
  CheckReport r("lemma7", params, trials, seed);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(trial_seed(seed, "lemma7", t));
    const std::size_t k = n ? n : 1 + rng.index(8);
    const std::size_t budget = std::max(kDualBudget, k);
    const auto x = t == 0 ? BlockBasis::canonical(k, Side::dual)
                          : sample_blocks(rng, params, detail::block_sizes(rng, k, budget, budget), Side::dual, true, opts);
    const auto v = detail::dual_bracket(x.sum(), params, opts);
    const double bound = std::pow(static_cast<double>(k), 1.0 / params.q()) / params.gamma();
    r.record("upper_flat", bound - v.hi, kDualTol, [&] {
      return "n=" + std::to_string(k) + " value=" + detail::format_exact(v.hi) + " blocks=" + describe(x);
    });
    ++r.instances;
  }
  return r;
}

/// Lemma 6 with K = 1: ||sum a_j x_j*|| <= ||sum a_j e_j*|| for normalized
/// dual blocks.
inline CheckReport check_lemma6(const SpaceParams& params, std::size_t trials, std::uint64_t seed,
                                const LabOptions& opts = {}) {
  CheckReport r("lemma6", params, trials, seed);
  double kmax = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(trial_seed(seed, "lemma6", t));
    const std::size_t n = 1 + rng.index(6);
    const auto x = t == 0 ? BlockBasis::canonical(n, Side::dual)
                          : sample_blocks(rng, params, detail::block_sizes(rng, n, kDualBudget, kDualBudget),
                                          Side::dual, true, opts);
    const auto a = sample_coefficients(rng, n, random_pattern(rng));
    const auto blocks = detail::dual_bracket(x.combine(a), params, opts);
    const auto canon = detail::dual_bracket(FiniteVector::from_values(a, Side::dual), params, opts);
    kmax = std::max(kmax, blocks.hi / canon.lo);
    r.record("domination", canon.lo - blocks.hi, kDualTol,
             [&] { return "blocks=" + describe(x) + " a=" + CheckReport::list(a); });
    r.record("ratio", 1.0 - blocks.hi / canon.lo, kDualTol,
             [&] { return "blocks=" + describe(x) + " a=" + CheckReport::list(a); });
    ++r.instances;
  }
  r.constants["K_lower_blocks_over_canonical"] = kmax;
  return r;
}

struct DominationReport {
  /// Ratios are norm(sum a_i y_i) / norm(sum a_i x_i).
  std::string direction = "y over x";
  double empirical_K_lower = 0.0;
  double min_ratio = 0.0;
  std::size_t samples = 0;
  std::vector<double> best_coefficients;
};

/// Samples coefficient vectors (random, sparse, flat and the four patterns)
/// and reports the largest observed ratio, a lower bound for the smallest K
/// with norm(sum a y) <= K norm(sum a x).
inline DominationReport check_domination(const BlockBasis& x, const BlockBasis& y, const SpaceParams& params,
                                         std::size_t trials, std::uint64_t seed, const LabOptions& opts = {}) {
  if (x.size() != y.size()) throw invalid_input("check_domination: block counts differ");
  if (x.side() != y.side()) throw invalid_input("check_domination: bases live on different sides");
  DominationReport rep;
  rep.min_ratio = std::numeric_limits<double>::infinity();
  const std::size_t n = x.size();
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(trial_seed(seed, "domination", t));
    std::vector<double> a;
    switch (t % 3) {
      case 0:
        a = sample_coefficients(rng, n, random_pattern(rng));
        break;
      case 1:  // sparse
        a = sample_coefficients(rng, n, Pattern::random);
        for (auto& c : a)
          if (rng.chance(0.5)) c = 0.0;
        break;
      default:
        a = sample_coefficients(rng, n, Pattern::flat);
    }
    const double den = side_norm(x.combine(a), params, opts);
    if (!(den > 0.0)) continue;
    const double ratio = side_norm(y.combine(a), params, opts) / den;
    ++rep.samples;
    rep.min_ratio = std::min(rep.min_ratio, ratio);
    if (ratio > rep.empirical_K_lower) {
      rep.empirical_K_lower = ratio;
      rep.best_coefficients = a;
    }
  }
  if (rep.samples == 0) rep.min_ratio = 0.0;
  return rep;
}

/// Unconditionality, subsymmetry and monotonicity of ti_norm.
inline CheckReport check_invariance(const SpaceParams& params, std::size_t trials, std::uint64_t seed,
                                    const LabOptions& opts = {}) {
  CheckReport r("invariance", params, trials, seed);
  const std::size_t monotone = std::max<std::size_t>(1, trials / 5);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(trial_seed(seed, "invariance", t));
    const auto v = random_vector(rng, 24);
    const double base = ti_norm_value(v, params, opts.norm);
    auto text = [&] { return "v=" + describe(v); };

    std::vector<Entry> flipped = v.entries();
    for (auto& e : flipped) e.value *= rng.sign();
    r.record("sign_flip", -detail::rel_gap(ti_norm_value(FiniteVector(flipped), params, opts.norm), base), kExactTol,
             text);

    std::vector<Position> targets;
    Position at = 0;
    for (std::size_t i = 0; i < v.size(); ++i) targets.push_back(at += 1 + rng.integer(0, 5));
    r.record("spread", -detail::rel_gap(ti_norm_value(spread(v, targets), params, opts.norm), base), kExactTol, text);

    if (t < monotone) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        std::vector<Entry> z = v.entries();
        z.erase(z.begin() + static_cast<std::ptrdiff_t>(i));
        const double smaller = ti_norm_value(FiniteVector(z), params, opts.norm);
        r.record("monotone", (base - smaller) / std::max(1.0, base), kExactTol,
                 [&] { return "v=" + describe(v) + " zeroed index " + std::to_string(i); });
      }
    }
    ++r.instances;
  }
  return r;
}

/// DP against the literal enumeration oracle, support <= 7.
inline CheckReport check_oracle_norm(const SpaceParams& params, std::size_t trials, std::uint64_t seed,
                                     const LabOptions& opts = {}) {
  CheckReport r("oracle-norm", params, trials, seed);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(trial_seed(seed, "oracle-norm", t));
    const auto v = random_vector(rng, 7);
    const double dp = ti_norm_value(v, params, opts.norm);
    const double oracle = oracle_norm(v, params);
    r.record("oracle_gap", -detail::rel_gap(dp, oracle), kPrimalTol, [&] {
      return "v=" + describe(v) + " dp=" + detail::format_exact(dp) + " oracle=" + detail::format_exact(oracle);
    });
    ++r.instances;
  }
  return r;
}

/// Cutting plane against full facet enumeration, support <= 5.
inline CheckReport check_oracle_dual(const SpaceParams& params, std::size_t trials, std::uint64_t seed,
                                     const LabOptions& opts = {}) {
  CheckReport r("oracle-dual", params, trials, seed);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(trial_seed(seed, "oracle-dual", t));
    const auto b = random_vector(rng, 5, Side::dual);
    const auto cp = detail::dual_bracket(b, params, opts);
    const double oracle = oracle_dual_norm(b, params);
    r.record("oracle_gap", -detail::rel_gap(cp.hi, oracle), 1e-7, [&] {
      return "b=" + describe(b) + " cutting_plane=" + detail::format_exact(cp.hi) +
             " oracle=" + detail::format_exact(oracle);
    });
    ++r.instances;
  }
  return r;
}

/// Norming trees reproduce the norm and their functionals lie in the dual ball.
inline CheckReport check_certificate(const SpaceParams& params, std::size_t trials, std::uint64_t seed,
                                     const LabOptions& opts = {}) {
  CheckReport r("certificate", params, trials, seed);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(trial_seed(seed, "certificate", t));
    const auto v = random_vector(rng, 24);
    const auto res = ti_norm(v, params, opts.norm);
    const double eval = evaluate_functional(res.certificate, v);
    auto text = [&] { return "v=" + describe(v) + " tree=" + res.certificate.serialize(); };
    r.record("reproduce", -std::abs(eval - res.value) / res.value, kExactTol, text);
    const auto ball = detail::dual_bracket(res.certificate.functional(), params, opts);
    r.record("dual_ball", 1.0 - ball.hi, kDualTol, text);
    ++r.instances;
  }
  return r;
}

/// ti_norm(ones(n)) = max(1, gamma n^{1/p}) for n <= max_n; the oracle
/// confirms n <= 7.
inline CheckReport check_flat_law(const SpaceParams& params, std::size_t max_n = 64, const LabOptions& opts = {}) {
  CheckReport r("flat-law", params, max_n, 0);
  for (std::size_t n = 1; n <= max_n; ++n) {
    const auto v = FiniteVector::ones(n);
    const double law = std::max(1.0, params.gamma() * std::pow(static_cast<double>(n), 1.0 / params.p()));
    const double dp = ti_norm_value(v, params, opts.norm);
    r.record("law", -std::abs(dp - law), kPrimalTol, [&] { return "n=" + std::to_string(n); });
    if (n <= 7) r.record("oracle", -std::abs(oracle_norm(v, params) - law), kPrimalTol, [&] { return "n=" + std::to_string(n); });
    ++r.instances;
  }
  return r;
}

/// dual_norm(ones*(n)) = min(n, n^{1/q} / gamma) for n <= max_n.
inline CheckReport check_dual_flat(const SpaceParams& params, std::size_t max_n = 12, const LabOptions& opts = {}) {
  CheckReport r("dual-flat", params, max_n, 0);
  for (std::size_t n = 1; n <= max_n; ++n) {
    const auto b = detail::dual_bracket(FiniteVector::ones(n, Side::dual), params, opts);
    const double law = std::min(static_cast<double>(n), std::pow(static_cast<double>(n), 1.0 / params.q()) / params.gamma());
    r.record("law", -std::max(std::abs(b.hi - law), std::abs(b.lo - law)), kDualTol, [&] {
      return "n=" + std::to_string(n) + " value=" + detail::format_exact(b.hi);
    });
    ++r.instances;
  }
  return r;
}

}  // namespace tirilman

#endif  // TIRILMAN_CHECKS_HPP
