#ifndef TIRILMAN_SAMPLING_HPP
#define TIRILMAN_SAMPLING_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tirilman/block.hpp"
#include "tirilman/dual.hpp"
#include "tirilman/error.hpp"
#include "tirilman/norm.hpp"
#include "tirilman/params.hpp"
#include "tirilman/rng.hpp"
#include "tirilman/vector.hpp"

namespace tirilman {

struct LabOptions {
  NormOptions norm;
  DualOptions dual = [] {
    DualOptions d;
    d.tol = 1e-9;
    return d;
  }();
};

enum class Pattern { flat, geometric, spike, random };

inline const char* to_string(Pattern p) {
  switch (p) {
    case Pattern::flat:
      return "flat";
    case Pattern::geometric:
      return "geometric";
    case Pattern::spike:
      return "spike";
    case Pattern::random:
      return "random";
  }
  return "?";
}

inline Pattern random_pattern(Rng& rng) { return static_cast<Pattern>(rng.index(4)); }

/// n nonzero coefficients of the given shape; every entry gets a random sign.
inline std::vector<double> sample_coefficients(Rng& rng, std::size_t n, Pattern pattern) {
  std::vector<double> c(n, 1.0);
  switch (pattern) {
    case Pattern::flat:
      break;
    case Pattern::geometric: {
      const double r = rng.uniform(0.3, 0.95);
      for (std::size_t i = 1; i < n; ++i) c[i] = c[i - 1] * r;
      if (rng.chance(0.5)) std::reverse(c.begin(), c.end());
      break;
    }
    case Pattern::spike: {
      const double rest = rng.uniform(0.01, 0.1);
      const std::size_t at = rng.index(n);
      for (std::size_t i = 0; i < n; ++i) c[i] = i == at ? 1.0 : rest;
      break;
    }
    case Pattern::random:
      for (auto& x : c) x = rng.uniform(0.05, 1.0);
      break;
  }
  for (auto& x : c) x *= rng.sign();
  return c;
}

/// Norm on the vector's own side: ti_norm for primal vectors, the converged
/// cutting-plane value (an upper bound within tol) for dual ones.
inline double side_norm(const FiniteVector& v, const SpaceParams& params, const LabOptions& opts = {}) {
  if (v.side() == Side::primal) return ti_norm_value(v, params, opts.norm);
  const auto r = dual_norm(v, params, opts.dual);
  if (!r.converged) throw numerical_failure("dual_norm did not converge within the cut cap");
  return r.value;
}

/// Successive blocks of the given sizes starting at position >= first, with
/// random gaps between and inside blocks. Coefficients follow a random
/// pattern per block. When normalize is set each block is divided by its
/// side norm.
inline BlockBasis sample_blocks(Rng& rng, const SpaceParams& params, std::span<const std::size_t> sizes, Side side,
                                bool normalize, const LabOptions& opts = {}, Position first = 1) {
  constexpr int kRetries = 8;
  std::vector<FiniteVector> blocks;
  Position pos = first + rng.integer(0, 2);
  for (std::size_t s : sizes) {
    if (s == 0) throw invalid_input("block size must be >= 1");
    FiniteVector block;
    for (int attempt = 0;; ++attempt) {
      if (attempt == kRetries) throw numerical_failure("block normalization failed after retries");
      const auto coeffs = sample_coefficients(rng, s, random_pattern(rng));
      std::vector<Entry> e;
      Position at = pos;
      for (double c : coeffs) {
        e.push_back({at, c});
        at += 1 + (rng.chance(0.2) ? 1 : 0);
      }
      block = FiniteVector(std::move(e), side);
      if (!normalize) break;
      const double nrm = side_norm(block, params, opts);
      if (nrm > 0.0 && std::isfinite(nrm)) {
        block = block.scaled(1.0 / nrm);
        break;
      }
    }
    pos = block.max_position() + 1 + rng.integer(0, 3);
    blocks.push_back(std::move(block));
  }
  return BlockBasis(std::move(blocks), side, normalize);
}

/// count normalized blocks with supports of random size in [1, max_block_support].
inline BlockBasis random_block_basis(const SpaceParams& params, std::size_t count, std::size_t max_block_support,
                                     Side side, std::uint64_t seed, const LabOptions& opts = {}) {
  if (count < 1) throw invalid_input("random_block_basis: count must be >= 1");
  if (max_block_support < 1) throw invalid_input("random_block_basis: max_block_support must be >= 1");
  Rng rng(seed);
  std::vector<std::size_t> sizes(count);
  for (auto& s : sizes) s = 1 + rng.index(max_block_support);
  return sample_blocks(rng, params, sizes, side, true, opts);
}

/// Random vector with support size in [1, max_support] and a random pattern.
inline FiniteVector random_vector(Rng& rng, std::size_t max_support, Side side = Side::primal) {
  const std::size_t n = 1 + rng.index(max_support);
  const auto c = sample_coefficients(rng, n, random_pattern(rng));
  return FiniteVector::from_values(c, side, 1 + rng.integer(0, 3));
}

}  // namespace tirilman

#endif  // TIRILMAN_SAMPLING_HPP
