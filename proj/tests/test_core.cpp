#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "tirilman/block.hpp"
#include "tirilman/params.hpp"
#include "tirilman/tree.hpp"
#include "tirilman/vector.hpp"

using namespace tirilman;

TEST(SpaceParams, ConjugateAndRegime) {
  const auto a = make_space_params(2, 0.5);
  EXPECT_DOUBLE_EQ(a.q(), 2.0);
  EXPECT_TRUE(a.strict_regime());
  const auto b = make_space_params(2, 0.6);
  EXPECT_DOUBLE_EQ(b.q(), 2.0);
  EXPECT_FALSE(b.strict_regime());
  const auto c = make_space_params(3, 0.3);
  EXPECT_DOUBLE_EQ(c.q(), 1.5);
  EXPECT_NEAR(1 / c.p() + 1 / c.q(), 1.0, 1e-15);
}

TEST(SpaceParams, RejectsBadInput) {
  EXPECT_THROW(make_space_params(1, 0.5), invalid_input);
  EXPECT_THROW(make_space_params(0.5, 0.5), invalid_input);
  EXPECT_THROW(make_space_params(INFINITY, 0.5), invalid_input);
  EXPECT_THROW(make_space_params(NAN, 0.5), invalid_input);
  EXPECT_THROW(make_space_params(2, 0.0), invalid_input);
  EXPECT_THROW(make_space_params(2, 1.0), invalid_input);
}

TEST(FiniteVector, DropsZerosAndValidatesOrder) {
  const FiniteVector v({{1, 2.0}, {3, 0.0}, {4, -1.0}});
  EXPECT_EQ(v.size(), 2u);
  EXPECT_EQ(v.support(), (std::vector<Position>{1, 4}));
  EXPECT_THROW(FiniteVector({{2, 1.0}, {2, 1.0}}), invalid_input);
  EXPECT_THROW(FiniteVector({{0, 1.0}}), invalid_input);
  EXPECT_THROW(FiniteVector({{1, NAN}}), invalid_input);
  EXPECT_EQ(v.at(4), -1.0);
  EXPECT_EQ(v.at(2), 0.0);
}

TEST(Spread, MovesCoefficientsInOrder) {
  const FiniteVector v({{1, 3.0}, {2, -1.0}});
  const std::vector<Position> t{5, 9};
  const auto s = spread(v, t);
  EXPECT_EQ(s.entries(), (std::vector<Entry>{{5, 3.0}, {9, -1.0}}));
  EXPECT_TRUE(spread(FiniteVector{}, std::vector<Position>{}).empty());
  const std::vector<Position> bad{2, 2, 3};
  EXPECT_THROW(spread(FiniteVector::ones(3), bad), invalid_input);
  EXPECT_THROW(spread(FiniteVector::ones(3), t), invalid_input);
}

TEST(Restrict, KeepsInterval) {
  const auto v = FiniteVector::from_values(std::vector<double>{1, 2, 3});
  EXPECT_EQ(restrict(v, {2, 3}).values(), (std::vector<double>{2, 3}));
  EXPECT_TRUE(restrict(v, {10, 20}).empty());
  EXPECT_EQ(restrict(v, {0, 100}), v);
  const auto once = restrict(v, {2, 2});
  EXPECT_EQ(restrict(once, {2, 2}), once);
}

TEST(IntervalPartition, Ordering) {
  EXPECT_NO_THROW(IntervalPartition({{1, 2}, {3, 3}, {7, 9}}));
  EXPECT_THROW(IntervalPartition({{1, 3}, {3, 4}}), invalid_input);
  EXPECT_THROW(IntervalPartition({{2, 1}}), invalid_input);
  EXPECT_THROW(IntervalPartition(std::vector<Interval>{}), invalid_input);
}

TEST(PartitionTree, EvaluateAndFunctional) {
  const double w = 0.5 / 3.0;
  std::vector<PartitionTree> leaves;
  for (Position i = 1; i <= 9; ++i) leaves.push_back(PartitionTree::leaf(i));
  const auto t = PartitionTree::internal(w, leaves);
  EXPECT_NEAR(evaluate_functional(t, FiniteVector::ones(9)), 1.5, 1e-15);
  EXPECT_EQ(evaluate_functional(t, FiniteVector{}), 0.0);
  EXPECT_EQ(evaluate_functional(PartitionTree::leaf(3), FiniteVector({{3, -4.0}})), 4.0);
  const auto c = t.functional();
  EXPECT_EQ(c.side(), Side::dual);
  EXPECT_EQ(c.size(), 9u);
  EXPECT_DOUBLE_EQ(c.at(5), w);
}

TEST(PartitionTree, SignFlipInvariantAndLinear) {
  const auto t = PartitionTree::internal(
      0.3, {PartitionTree::leaf(1), PartitionTree::internal(0.2, {PartitionTree::leaf(2), PartitionTree::leaf(4)})});
  const FiniteVector v({{1, 1.0}, {2, -2.0}, {4, 3.0}});
  const double base = evaluate_functional(t, v);
  EXPECT_DOUBLE_EQ(base, 0.3 * (1.0 + 0.2 * 5.0));
  EXPECT_DOUBLE_EQ(evaluate_functional(t, v.scaled(-1.0)), base);
  EXPECT_DOUBLE_EQ(evaluate_functional(t, v.scaled(2.0)), 2.0 * base);
  EXPECT_DOUBLE_EQ(t.functional().dot(v.abs()), base);
}

TEST(PartitionTree, SerializationRoundTrip) {
  const auto t = PartitionTree::internal(
      0.35355339059327379,
      {PartitionTree::leaf(1), PartitionTree::internal(0.5, {PartitionTree::leaf(2), PartitionTree::leaf(7)})});
  const auto text = t.serialize();
  EXPECT_EQ(text, "(0.35355339059327379 [1](0.5 [2][7]))");
  EXPECT_EQ(PartitionTree::parse(text), t);
  EXPECT_EQ(PartitionTree::parse("[3]"), PartitionTree::leaf(3));
  EXPECT_TRUE(PartitionTree::parse("()").is_empty());
  EXPECT_THROW(PartitionTree::parse("(0.5 [2][1])"), parse_error);
  EXPECT_THROW(PartitionTree::parse("(0.5 [2]"), parse_error);
  EXPECT_THROW(PartitionTree::parse("[x]"), parse_error);
}

TEST(BlockBasis, SuccessiveSupports) {
  const FiniteVector a({{1, 1.0}, {2, 1.0}});
  const FiniteVector b({{3, 2.0}});
  const BlockBasis bb({a, b}, Side::primal);
  const std::vector<double> coeffs{2.0, -1.0};
  EXPECT_EQ(bb.combine(coeffs).values(), (std::vector<double>{2.0, 2.0, -2.0}));
  EXPECT_THROW(BlockBasis({b, a}, Side::primal), invalid_input);
  EXPECT_THROW(BlockBasis({a, FiniteVector{}}, Side::primal), invalid_input);
  EXPECT_EQ(BlockBasis::canonical(3, Side::dual).sum(), FiniteVector::ones(3, Side::dual));
}
