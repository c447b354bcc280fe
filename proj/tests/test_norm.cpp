#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "tirilman/norm.hpp"

using namespace tirilman;

namespace {

FiniteVector vec(std::vector<double> v) { return FiniteVector::from_values(v); }

FiniteVector random_vector(std::mt19937_64& gen, std::size_t n) {
  std::uniform_real_distribution<double> mag(0.05, 2.0);
  std::bernoulli_distribution neg(0.5), spike(0.15);
  std::vector<double> v(n);
  for (auto& x : v) {
    x = mag(gen) * (spike(gen) ? 4.0 : 1.0);
    if (neg(gen)) x = -x;
  }
  return vec(v);
}

double flat_law(std::size_t n, const SpaceParams& sp) {
  return std::max(1.0, sp.gamma() * std::pow(static_cast<double>(n), 1.0 / sp.p()));
}

}  // namespace

TEST(TiNorm, ZeroVector) {
  const auto sp = make_space_params(2, 0.5);
  const auto r = ti_norm(FiniteVector{}, sp);
  EXPECT_EQ(r.value, 0.0);
  EXPECT_TRUE(r.certificate.is_empty());
}

TEST(TiNorm, TwoOnesIsSupNorm) {
  // Hand enumeration: the only split is into singletons, 0.5 * 2 / sqrt 2 < 1.
  const auto sp = make_space_params(2, 0.5);
  const auto v = vec({1, 1});
  EXPECT_DOUBLE_EQ(oracle_norm(v, sp), 1.0);
  const auto r = ti_norm(v, sp);
  EXPECT_DOUBLE_EQ(r.value, 1.0);
  ASSERT_TRUE(r.certificate.is_leaf());
  EXPECT_EQ(r.certificate.position(), 1);
}

TEST(TiNorm, FlatVectors) {
  const auto sp = make_space_params(2, 0.5);
  EXPECT_NEAR(ti_norm_value(FiniteVector::ones(9), sp), 1.5, 1e-12);
  EXPECT_NEAR(ti_norm_value(FiniteVector::ones(4), make_space_params(2, 0.6)), 1.2, 1e-12);
  EXPECT_NEAR(oracle_norm(FiniteVector::ones(4), make_space_params(2, 0.6)), 1.2, 1e-12);
  EXPECT_NEAR(oracle_norm(FiniteVector::ones(5), sp), std::sqrt(5.0) / 2.0, 1e-12);
}

TEST(TiNorm, NineSingletonCertificate) {
  const auto sp = make_space_params(2, 0.5);
  const auto v = FiniteVector::ones(9);
  const auto tree = norming_tree(v, sp);
  ASSERT_TRUE(tree.is_internal());
  ASSERT_EQ(tree.children().size(), 9u);
  for (std::size_t j = 0; j < 9; ++j) {
    ASSERT_TRUE(tree.children()[j].is_leaf());
    EXPECT_EQ(tree.children()[j].position(), static_cast<Position>(j + 1));
  }
  EXPECT_NEAR(evaluate_functional(tree, v), 1.5, 1e-12);
}

TEST(TiNorm, SingleEntry) {
  const auto sp = make_space_params(3, 0.3);
  const FiniteVector v({{4, -2.5}});
  EXPECT_DOUBLE_EQ(ti_norm_value(v, sp), 2.5);
  EXPECT_DOUBLE_EQ(oracle_norm(v, sp), 2.5);
  const auto t = norming_tree(FiniteVector({{1, 2.0}}), sp);
  ASSERT_TRUE(t.is_leaf());
  EXPECT_EQ(t.position(), 1);
  EXPECT_DOUBLE_EQ(evaluate_functional(t, FiniteVector({{1, 2.0}})), 2.0);
}

TEST(TiNorm, MatchesOracleOnRandomVectors) {
  std::mt19937_64 gen(7);
  for (double p : {1.5, 2.0, 3.0})
    for (double g : {0.3, 0.5, 0.9}) {
      const auto sp = make_space_params(p, g);
      for (int trial = 0; trial < 30; ++trial) {
        const auto v = random_vector(gen, 1 + trial % 7);
        const double dp = ti_norm_value(v, sp);
        const double oracle = oracle_norm(v, sp);
        EXPECT_NEAR(dp, oracle, 1e-9 * std::max(1.0, oracle)) << "p=" << p << " gamma=" << g;
      }
    }
}

TEST(TiNorm, FlatLawAgainstOracleSmallN) {
  for (double p : {1.5, 2.0, 3.0})
    for (double g : {0.3, 0.5}) {
      const auto sp = make_space_params(p, g);
      for (std::size_t n = 1; n <= 7; ++n)
        EXPECT_NEAR(oracle_norm(FiniteVector::ones(n), sp), flat_law(n, sp), 1e-12);
    }
}

TEST(TiNorm, LevelsNondecreasingAndStabilize) {
  std::mt19937_64 gen(11);
  const auto sp = make_space_params(2, 0.7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto v = random_vector(gen, 2 + trial % 9);
    EXPECT_EQ(ti_norm_level(v, sp, 0), v.sup_norm());
    double prev = 0.0;
    for (int m = 0; m <= static_cast<int>(v.size()); ++m) {
      const double lv = ti_norm_level(v, sp, m);
      EXPECT_GE(lv, prev);
      prev = lv;
    }
    EXPECT_NEAR(prev, ti_norm_value(v, sp), 1e-12 * prev);
    EXPECT_NEAR(ti_norm_level(v, sp, 100), prev, 1e-12 * prev);
  }
}

TEST(TiNorm, FlatLevelOne) {
  const auto sp = make_space_params(2, 0.5);
  EXPECT_NEAR(ti_norm_level(FiniteVector::ones(9), sp, 1), 1.5, 1e-12);
}

TEST(TiNorm, CertificateReproducesValue) {
  std::mt19937_64 gen(3);
  const auto sp = make_space_params(1.5, 0.4);
  for (int trial = 0; trial < 40; ++trial) {
    const auto v = random_vector(gen, 1 + trial);
    const auto r = ti_norm(v, sp);
    EXPECT_NEAR(evaluate_functional(r.certificate, v), r.value, 1e-12 * r.value);
    EXPECT_EQ(r.levels_used, r.certificate.depth());
    EXPECT_NEAR(ti_norm_level(v, sp, r.levels_used), r.value, 1e-12 * r.value);
  }
}

TEST(TiNorm, SupportCap) {
  const auto sp = make_space_params(2, 0.5);
  NormOptions opts;
  opts.support_cap = 4;
  EXPECT_THROW(ti_norm_value(FiniteVector::ones(5), sp, opts), cap_exceeded);
  EXPECT_THROW(oracle_norm(FiniteVector::ones(8), sp), cap_exceeded);
  EXPECT_THROW(ti_norm_level(FiniteVector::ones(2), sp, -1), invalid_input);
}
