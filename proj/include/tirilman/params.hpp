#ifndef TIRILMAN_PARAMS_HPP
#define TIRILMAN_PARAMS_HPP

#include <cmath>
#include <cstddef>
#include <string>

#include "tirilman/error.hpp"

namespace tirilman {

/// Relative tolerance used for every norm comparison in the library.
inline constexpr double kRelTol = 1e-12;

/// Parameters (p, gamma) of the space together with the conjugate exponent q.
///
/// Only obtainable through make_space_params, so a live instance always
/// satisfies 1 < p < inf, 0 < gamma < 1 and 1/p + 1/q = 1.
class SpaceParams {
 public:
  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }
  double gamma() const noexcept { return gamma_; }

  /// gamma * 3^{1/q} < 1, the regime where the upper block estimates hold.
  bool strict_regime() const noexcept { return strict_regime_; }

  /// Weight gamma * k^{-1/q} applied to a split of an interval into k parts.
  double split_weight(std::size_t k) const noexcept {
    return gamma_ * std::pow(static_cast<double>(k), -1.0 / q_);
  }

  /// 3^{1/q}
  double three_pow_inv_q() const noexcept { return std::pow(3.0, 1.0 / q_); }

  friend bool operator==(const SpaceParams&, const SpaceParams&) = default;

 private:
  friend SpaceParams make_space_params(double p, double gamma);

  SpaceParams(double p, double q, double gamma, bool strict)
      : p_(p), q_(q), gamma_(gamma), strict_regime_(strict) {}

  double p_;
  double q_;
  double gamma_;
  bool strict_regime_;
};

inline SpaceParams make_space_params(double p, double gamma) {
  if (!std::isfinite(p) || !(p > 1.0))
    throw invalid_input("p must be a finite real > 1, got " + std::to_string(p));
  if (!std::isfinite(gamma) || !(gamma > 0.0) || !(gamma < 1.0))
    throw invalid_input("gamma must lie in (0,1), got " + std::to_string(gamma));
  const double q = p / (p - 1.0);
  if (!std::isfinite(q))
    throw invalid_input("conjugate exponent is not finite for p=" + std::to_string(p));
  const bool strict = gamma * std::pow(3.0, 1.0 / q) < 1.0;
  return SpaceParams(p, q, gamma, strict);
}

}  // namespace tirilman

#endif  // TIRILMAN_PARAMS_HPP
