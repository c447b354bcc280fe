#ifndef TIRILMAN_BLOCK_HPP
#define TIRILMAN_BLOCK_HPP

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tirilman/error.hpp"
#include "tirilman/vector.hpp"

namespace tirilman {

/// Finite sequence of nonzero vectors with successive supports: the support
/// of block j lies entirely below the support of block j+1.
class BlockBasis {
 public:
  BlockBasis() = default;

  BlockBasis(std::vector<FiniteVector> blocks, Side side, bool normalized = false)
      : blocks_(std::move(blocks)), side_(side), normalized_(normalized) {
    for (std::size_t j = 0; j < blocks_.size(); ++j) {
      if (blocks_[j].empty()) throw invalid_input("block " + std::to_string(j + 1) + " is zero");
      if (j > 0 && blocks_[j - 1].max_position() >= blocks_[j].min_position())
        throw invalid_input("blocks must have successive supports");
      blocks_[j] = blocks_[j].with_side(side);
    }
  }

  /// The unit vectors e_first, ..., e_{first+n-1}.
  static BlockBasis canonical(std::size_t n, Side side, Position first = 1) {
    std::vector<FiniteVector> b;
    b.reserve(n);
    for (std::size_t j = 0; j < n; ++j)
      b.push_back(FiniteVector::unit(first + static_cast<Position>(j), side));
    return BlockBasis(std::move(b), side, true);
  }

  const std::vector<FiniteVector>& blocks() const noexcept { return blocks_; }
  const FiniteVector& operator[](std::size_t j) const { return blocks_[j]; }
  std::size_t size() const noexcept { return blocks_.size(); }
  Side side() const noexcept { return side_; }
  bool normalized() const noexcept { return normalized_; }

  /// sum_j coeffs[j] * block_j
  FiniteVector combine(std::span<const double> coeffs) const {
    if (coeffs.size() != blocks_.size())
      throw invalid_input("combine: coefficient count does not match block count");
    std::vector<Entry> out;
    for (std::size_t j = 0; j < blocks_.size(); ++j) {
      if (coeffs[j] == 0.0) continue;
      for (const auto& e : blocks_[j].entries()) out.push_back({e.position, coeffs[j] * e.value});
    }
    return FiniteVector(std::move(out), side_);
  }

  /// Sum of all blocks.
  FiniteVector sum() const {
    std::vector<double> ones(blocks_.size(), 1.0);
    return combine(ones);
  }

 private:
  std::vector<FiniteVector> blocks_;
  Side side_ = Side::primal;
  bool normalized_ = false;
};

}  // namespace tirilman

#endif  // TIRILMAN_BLOCK_HPP
