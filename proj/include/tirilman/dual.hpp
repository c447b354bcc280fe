#ifndef TIRILMAN_DUAL_HPP
#define TIRILMAN_DUAL_HPP

// Norm of the dual space on finitely supported vectors:
//
//   ||b||_* = sup { <b, a> : ||a|| <= 1 }.
//
// By unconditionality it suffices to maximize <|b|, a> over a >= 0. On the
// positive orthant the unit ball is the polytope cut out by the box a_i <= 1
// and <c(T), a> <= 1 for every partition tree T, so the dual norm is an LP
// with exponentially many rows. dual_norm generates the rows lazily, using
// the primal norm engine (and its norming tree) as separation oracle.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "tirilman/error.hpp"
#include "tirilman/lp.hpp"
#include "tirilman/norm.hpp"
#include "tirilman/params.hpp"
#include "tirilman/tree.hpp"
#include "tirilman/vector.hpp"

namespace tirilman {

struct DualOptions {
  double tol = 1e-7;
  std::size_t support_cap = 64;
  std::size_t max_cuts = 10000;
  /// Seed the LP with the all-singletons functional gamma N^{-1/q} sum e_i.
  bool singleton_warm_start = true;
  /// In-out separation: cuts are taken at w * vertex + (1 - w) * core, where
  /// core is the best scaled feasible point so far, whenever that point lies
  /// outside the ball (such a cut also cuts off the vertex). 1 gives plain
  /// Kelley cuts at the vertex. Convergence is still tested at the vertex.
  double in_out_weight = 0.3;
};

struct DualNormResult {
  /// LP optimum <|b|, a> at the final vertex; an upper bound on the dual norm,
  /// and within a factor 1 + tol of it when converged.
  double value = 0.0;
  /// value / max(1, ||witness||): a certified lower bound.
  double lower_bound = 0.0;
  /// Primal vector with ||witness|| <= 1 + tol and <b, witness> = value.
  FiniteVector witness;
  /// Facet rows in the final LP (box bounds not counted).
  std::size_t facets_used = 0;
  bool converged = false;
  /// LP optimum after each solve; nonincreasing.
  std::vector<double> bound_history;
  /// Serialized facet trees, in the order they were added.
  std::vector<std::string> facets;
};

struct Separation {
  double norm = 0.0;
  PartitionTree facet;
};

/// Norm of a together with its norming tree. When norm > 1 the tree gives a
/// cutting plane <c(T), |.|> <= 1 that a violates.
inline Separation separation(const FiniteVector& a, const SpaceParams& params, const NormOptions& opts = {}) {
  auto r = ti_norm(a, params, opts);
  return {r.value, std::move(r.certificate)};
}

namespace detail {

/// Dense row of c(T) over variables at positions 1..n.
inline std::vector<double> facet_row(const PartitionTree& tree, std::size_t n) {
  std::vector<double> row(n, 0.0);
  const auto c = tree.functional();
  for (const auto& e : c.entries()) row[static_cast<std::size_t>(e.position - 1)] = e.value;
  return row;
}

inline double lp_objective_at(const FiniteVector& b, std::size_t i) { return std::abs(b.entries()[i].value); }

inline FiniteVector restore_signs(const FiniteVector& b, const std::vector<double>& a) {
  std::vector<Entry> out;
  const auto& be = b.entries();
  for (std::size_t i = 0; i < be.size(); ++i)
    if (a[i] != 0.0) out.push_back({be[i].position, std::copysign(a[i], be[i].value)});
  return FiniteVector(std::move(out), Side::primal);
}

}  // namespace detail

inline DualNormResult dual_norm(const FiniteVector& b, const SpaceParams& params, const DualOptions& opts = {}) {
  if (!(opts.tol > 0.0)) throw invalid_input("dual_norm: tol must be > 0");
  if (!(opts.in_out_weight > 0.0 && opts.in_out_weight <= 1.0)) throw invalid_input("dual_norm: in_out_weight must be in (0, 1]");
  if (b.size() > opts.support_cap)
    throw cap_exceeded("dual support " + std::to_string(b.size()) + " exceeds cap " +
                       std::to_string(opts.support_cap));
  DualNormResult res;
  res.witness = FiniteVector({}, Side::primal);
  if (b.empty()) {
    res.converged = true;
    return res;
  }
  const std::size_t n = b.size();
  LinearProgram lp;
  lp.objective = b.magnitudes();
  lp.upper.assign(n, 1.0);

  std::unordered_set<std::string> seen;
  if (opts.singleton_warm_start && n >= 2) {
    std::vector<PartitionTree> leaves;
    for (std::size_t i = 1; i <= n; ++i) leaves.push_back(PartitionTree::leaf(static_cast<Position>(i)));
    const auto tree = PartitionTree::internal(params.split_weight(n), std::move(leaves));
    lp.constraints.push_back({detail::facet_row(tree, n), 1.0});
    res.facets.push_back(tree.serialize());
    seen.insert(res.facets.back());
  }

  NormOptions nopts;
  nopts.support_cap = std::max<std::size_t>(n, nopts.support_cap);
  LpOptions lopts;
  lopts.max_variables = std::max<std::size_t>(n, lopts.max_variables);
  lopts.max_constraints = std::max(lopts.max_constraints, opts.max_cuts + 1);

  DenseSimplex simplex(std::move(lp), lopts);
  std::vector<double> core(n, 0.0);
  double core_value = 0.0;
  auto add_cut = [&](const PartitionTree& facet) {
    if (!facet.is_internal()) return false;
    auto key = facet.serialize();
    if (!seen.insert(key).second) return false;
    simplex.add_constraint({detail::facet_row(facet, n), 1.0});
    res.facets.push_back(std::move(key));
    return true;
  };
  for (;;) {
    const auto sol = simplex.solve();
    res.bound_history.push_back(sol.optimum);
    const auto a = FiniteVector::from_values(sol.point);
    const auto sep = separation(a, params, nopts);
    res.value = sol.optimum;
    res.lower_bound = sol.optimum / std::max(1.0, sep.norm);
    res.witness = detail::restore_signs(b, sol.point);
    res.facets_used = simplex.rows();
    if (sep.norm <= 1.0 + opts.tol) {
      res.converged = true;
      break;
    }
    if (simplex.rows() >= opts.max_cuts) break;
    if (res.lower_bound > core_value) {
      core_value = res.lower_bound;
      for (std::size_t i = 0; i < n; ++i) core[i] = sol.point[i] / sep.norm;
    }
    bool cut = false;
    if (opts.in_out_weight < 1.0) {
      std::vector<double> z(n);
      for (std::size_t i = 0; i < n; ++i) z[i] = opts.in_out_weight * sol.point[i] + (1.0 - opts.in_out_weight) * core[i];
      const auto mid = separation(FiniteVector::from_values(z), params, nopts);
      if (mid.norm > 1.0) {
        cut = add_cut(mid.facet);
      } else {
        double v = 0.0;
        for (std::size_t i = 0; i < n; ++i) v += detail::lp_objective_at(b, i) * z[i];
        if (v > core_value) {
          core_value = v;
          core = std::move(z);
        }
      }
    }
    if (!cut && !add_cut(sep.facet))
      throw numerical_failure("dual_norm: separation returned a cut already in the LP (degenerate accumulation)");
  }
  return res;
}

/// Validation oracle: enumerates every partition tree over the support (at
/// most 5 coordinates), forms the full facet list and solves one LP.
inline double oracle_dual_norm(const FiniteVector& b, const SpaceParams& params) {
  constexpr std::size_t kMax = 5;
  if (b.size() > kMax)
    throw cap_exceeded("oracle_dual_norm: support " + std::to_string(b.size()) + " exceeds 5");
  if (b.empty()) return 0.0;
  const std::size_t n = b.size();
  using Functional = std::vector<double>;
  // trees[a][c]: functionals of every tree over the interval [a, c].
  std::vector<std::vector<std::vector<Functional>>> trees(n, std::vector<std::vector<Functional>>(n));
  for (std::size_t len = 1; len <= n; ++len) {
    for (std::size_t a = 0; a + len <= n; ++a) {
      const std::size_t c = a + len - 1;
      auto& out = trees[a][c];
      for (std::size_t t = a; t <= c; ++t) {
        Functional f(n, 0.0);
        f[t] = 1.0;
        out.push_back(std::move(f));
      }
      // Every composition of [a, c] into k >= 2 consecutive parts, every
      // choice of subtree per part.
      auto compose = [&](auto&& self, std::size_t start, std::vector<std::pair<std::size_t, std::size_t>>& parts) -> void {
        if (start > c) {
          if (parts.size() < 2) return;
          const double w = params.split_weight(parts.size());
          std::vector<std::size_t> pick(parts.size(), 0);
          for (;;) {
            Functional f(n, 0.0);
            for (std::size_t j = 0; j < parts.size(); ++j) {
              const auto& sub = trees[parts[j].first][parts[j].second][pick[j]];
              for (std::size_t i = 0; i < n; ++i) f[i] += w * sub[i];
            }
            out.push_back(std::move(f));
            std::size_t j = 0;
            while (j < parts.size()) {
              if (++pick[j] < trees[parts[j].first][parts[j].second].size()) break;
              pick[j] = 0;
              ++j;
            }
            if (j == parts.size()) break;
          }
          return;
        }
        for (std::size_t e = start; e <= c; ++e) {
          if (start == a && e == c) continue;  // single part
          parts.emplace_back(start, e);
          self(self, e + 1, parts);
          parts.pop_back();
        }
      };
      std::vector<std::pair<std::size_t, std::size_t>> parts;
      compose(compose, a, parts);
    }
  }
  LinearProgram lp;
  lp.objective = b.magnitudes();
  lp.upper.assign(n, 1.0);
  for (auto& f : trees[0][n - 1]) {
    std::size_t nz = 0;
    for (double x : f) nz += (x != 0.0);
    if (nz >= 2) lp.constraints.push_back({std::move(f), 1.0});
  }
  return solve_small_lp(lp).optimum;
}

}  // namespace tirilman

#endif  // TIRILMAN_DUAL_HPP
