#ifndef TIRILMAN_WITNESS_HPP
#define TIRILMAN_WITNESS_HPP

// Exploratory search for coefficient permutations that change the norm.
// The norm is invariant under spreading but not under permutation; a ratio
// above 1 shows the canonical basis is not 1-symmetric at this N, nothing
// more.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "tirilman/error.hpp"
#include "tirilman/norm.hpp"
#include "tirilman/params.hpp"
#include "tirilman/rng.hpp"
#include "tirilman/sampling.hpp"
#include "tirilman/vector.hpp"

namespace tirilman {

struct WitnessResult {
  FiniteVector vector;
  /// permuted[i] = vector[permutation[i]] (0-based over the N coordinates)
  std::vector<std::size_t> permutation;
  double ratio = 1.0;
  std::size_t evaluations = 0;
};

namespace detail {

inline std::vector<std::vector<double>> witness_grid(std::size_t n) {
  std::vector<std::vector<double>> g;
  for (std::size_t at = 0; at < n; ++at) {
    std::vector<double> v(n, 0.25);
    v[at] = 1.0;
    g.push_back(v);
  }
  for (double h : {0.25, 0.5}) {
    std::vector<double> v(n, 1.0);
    for (std::size_t i = n / 2; i < n; ++i) v[i] = h;
    g.push_back(v);
  }
  for (double r : {0.5, 0.8}) {
    std::vector<double> v(n, 1.0);
    for (std::size_t i = 1; i < n; ++i) v[i] = v[i - 1] * r;
    g.push_back(v);
  }
  std::vector<double> alt(n);
  for (std::size_t i = 0; i < n; ++i) alt[i] = i % 2 ? 0.3 : 1.0;
  g.push_back(alt);
  return g;
}

}  // namespace detail

/// Maximizes ti_norm(permuted) / ti_norm(original) over grid and random
/// vectors of length N and over all (N <= 6) or sampled permutations.
/// budget bounds the number of permuted norms evaluated.
inline WitnessResult symmetry_witness_search(const SpaceParams& params, std::size_t n, std::size_t budget,
                                             std::uint64_t seed) {
  if (n < 1 || n > 12) throw invalid_input("symmetry_witness_search: N must be in [1, 12]");
  Rng rng(mix64(seed ^ fnv1a("search-witness")));
  WitnessResult best;
  best.vector = FiniteVector::ones(n);
  best.permutation.resize(n);
  std::iota(best.permutation.begin(), best.permutation.end(), 0);

  auto candidates = detail::witness_grid(n);
  std::size_t next = 0;
  while (best.evaluations < budget) {
    std::vector<double> v;
    if (next < candidates.size()) {
      v = candidates[next++];
    } else {
      // Alternate wide and near-flat magnitudes; the latter keep the sup
      // term from attaining, which is where orderings can matter.
      v.resize(n);
      const double lo = next++ % 2 ? 0.05 : 0.5;
      for (auto& x : v) x = rng.uniform(lo, 1.0);
    }
    const double base = ti_norm_value(FiniteVector::from_values(v), params);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    auto try_perm = [&] {
      std::vector<double> w(n);
      for (std::size_t i = 0; i < n; ++i) w[i] = v[perm[i]];
      const double ratio = ti_norm_value(FiniteVector::from_values(w), params) / base;
      ++best.evaluations;
      if (ratio > best.ratio) {
        best.ratio = ratio;
        best.vector = FiniteVector::from_values(v);
        best.permutation = perm;
      }
    };
    if (n <= 6) {
      do try_perm();
      while (best.evaluations < budget && std::next_permutation(perm.begin(), perm.end()));
    } else {
      for (int k = 0; k < 64 && best.evaluations < budget; ++k) {
        for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.index(i)]);
        try_perm();
      }
    }
  }
  return best;
}

}  // namespace tirilman

#endif  // TIRILMAN_WITNESS_HPP
