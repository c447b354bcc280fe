#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "tirilman/dual.hpp"

using namespace tirilman;

namespace {

FiniteVector dvec(std::vector<double> v) { return FiniteVector::from_values(v, Side::dual); }

FiniteVector random_dual(std::mt19937_64& gen, std::size_t n) {
  std::uniform_real_distribution<double> mag(0.05, 2.0);
  std::bernoulli_distribution neg(0.5);
  std::vector<double> v(n);
  for (auto& x : v) x = neg(gen) ? -mag(gen) : mag(gen);
  return dvec(v);
}

}  // namespace

TEST(DualNorm, UnitFunctional) {
  const auto sp = make_space_params(2, 0.5);
  const auto r = dual_norm(FiniteVector::unit(1, Side::dual), sp);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 1.0, 1e-12);
  EXPECT_NEAR(oracle_dual_norm(FiniteVector::unit(1, Side::dual), sp), 1.0, 1e-12);
}

TEST(DualNorm, TwoOnes) {
  const auto sp = make_space_params(2, 0.5);
  const auto b = dvec({1, 1});
  EXPECT_NEAR(oracle_dual_norm(b, sp), 2.0, 1e-12);
  const auto r = dual_norm(b, sp);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 2.0, 1e-9);
  EXPECT_NEAR(r.witness.at(1), 1.0, 1e-9);
  EXPECT_NEAR(r.witness.at(2), 1.0, 1e-9);
}

TEST(DualNorm, ThreeOnesMatchesOracle) {
  // Frozen from oracle_dual_norm: min(3, sqrt(3) / 0.5) = 3.
  const auto sp = make_space_params(2, 0.5);
  const auto b = dvec({1, 1, 1});
  const double oracle = oracle_dual_norm(b, sp);
  EXPECT_NEAR(oracle, 3.0, 1e-12);
  EXPECT_NEAR(dual_norm(b, sp).value, oracle, 1e-7);
}

TEST(DualNorm, FlatNineIsLemmaSevenBound) {
  const auto sp = make_space_params(2, 0.5);
  const auto b = FiniteVector::ones(9, Side::dual);
  const auto r = dual_norm(b, sp);
  ASSERT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 6.0, 1e-6);
  EXPECT_LE(ti_norm_value(r.witness, sp), 1.0 + 1e-7);
  EXPECT_NEAR(b.dot(r.witness), r.value, 1e-9);
}

TEST(DualNorm, SmallFlatIsL1) {
  const auto sp = make_space_params(2, 0.5);
  for (std::size_t n = 1; n <= 4; ++n)
    EXPECT_NEAR(dual_norm(FiniteVector::ones(n, Side::dual), sp).value, static_cast<double>(n), 1e-9);
}

TEST(DualNorm, ZeroAndCaps) {
  const auto sp = make_space_params(2, 0.5);
  EXPECT_EQ(dual_norm(FiniteVector({}, Side::dual), sp).value, 0.0);
  EXPECT_THROW(dual_norm(FiniteVector::ones(65, Side::dual), sp), cap_exceeded);
  EXPECT_THROW(oracle_dual_norm(FiniteVector::ones(6, Side::dual), sp), cap_exceeded);
  DualOptions bad;
  bad.tol = 0.0;
  EXPECT_THROW(dual_norm(dvec({1}), sp, bad), invalid_input);
}

TEST(DualNorm, CutCapReportsNonConvergence) {
  const auto sp = make_space_params(2, 0.5);
  DualOptions o;
  o.max_cuts = 1;
  const auto r = dual_norm(FiniteVector::ones(9, Side::dual), sp, o);
  EXPECT_FALSE(r.converged);
  EXPECT_GE(r.value, 6.0 - 1e-9);
}

TEST(DualNorm, MatchesOracleAndBoundsAreMonotone) {
  std::mt19937_64 gen(19);
  for (double p : {1.5, 2.0, 3.0})
    for (double g : {0.3, 0.5}) {
      const auto sp = make_space_params(p, g);
      for (int trial = 0; trial < 8; ++trial) {
        const auto b = random_dual(gen, 1 + trial % 5);
        const double oracle = oracle_dual_norm(b, sp);
        const auto r = dual_norm(b, sp);
        ASSERT_TRUE(r.converged);
        EXPECT_NEAR(r.value, oracle, 1e-7 * std::max(1.0, oracle));
        EXPECT_LE(r.lower_bound, oracle * (1 + 1e-12) + 1e-12);
        for (std::size_t i = 1; i < r.bound_history.size(); ++i)
          EXPECT_LE(r.bound_history[i], r.bound_history[i - 1] * (1 + 1e-12) + 1e-12);
        for (double bound : r.bound_history) EXPECT_GE(bound, oracle * (1 - 1e-9));
        EXPECT_GE(r.value, b.sup_norm() * (1 - 1e-12));
      }
    }
}

TEST(DualNorm, WeakDualityAgainstFacets) {
  std::mt19937_64 gen(23);
  const auto sp = make_space_params(2, 0.4);
  for (int trial = 0; trial < 6; ++trial) {
    const auto b = random_dual(gen, 4 + trial);
    const auto r = dual_norm(b, sp);
    ASSERT_TRUE(r.converged);
    const auto w = r.witness.abs();
    // Witness coordinates are listed at b's ambient positions; facets at 1..N.
    const auto aligned = FiniteVector::from_values(
        [&] {
          std::vector<double> v;
          for (auto pos : b.support()) v.push_back(w.at(pos));
          return v;
        }());
    for (const auto& f : r.facets) EXPECT_LE(evaluate_functional(PartitionTree::parse(f), aligned), 1.0 + 1e-7);
  }
}

TEST(DualNorm, PairingInequality) {
  std::mt19937_64 gen(29);
  const auto sp = make_space_params(3, 0.3);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 10; ++trial) {
    const auto b = random_dual(gen, 1 + trial % 6);
    std::vector<double> v(b.size());
    for (auto& x : v) x = nd(gen);
    const auto pv = FiniteVector::from_values(v);
    const double lhs = std::abs(b.with_side(Side::primal).dot(pv));
    EXPECT_LE(lhs, dual_norm(b, sp).value * ti_norm_value(pv, sp) * (1 + 1e-6));
  }
}

TEST(Separation, Examples) {
  const auto sp = make_space_params(2, 0.5);
  const auto s = separation(FiniteVector({{1, 2.0}}), sp);
  EXPECT_EQ(s.norm, 2.0);
  EXPECT_EQ(s.facet, PartitionTree::leaf(1));
  const auto nine = separation(FiniteVector::ones(9), sp);
  EXPECT_NEAR(nine.norm, 1.5, 1e-12);
  EXPECT_EQ(nine.facet.children().size(), 9u);
  const auto small = FiniteVector::from_values(std::vector<double>{0.3, 0.2, 0.4});
  const auto s3 = separation(small, sp);
  EXPECT_LE(s3.norm, 1.0);
  EXPECT_LE(evaluate_functional(s3.facet, small), 1.0);
}
