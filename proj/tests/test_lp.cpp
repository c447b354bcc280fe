#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "tirilman/lp.hpp"

using namespace tirilman;

TEST(SmallLp, SingleBound) {
  LinearProgram lp{{1.0}, {{{1.0}, 1.0}}, {10.0}};
  const auto s = solve_small_lp(lp);
  EXPECT_DOUBLE_EQ(s.optimum, 1.0);
  EXPECT_DOUBLE_EQ(s.point[0], 1.0);
}

TEST(SmallLp, TwoVariableFacet) {
  // a_i <= 1 and 0.5 (a_1 + a_2) / sqrt 2 <= 1: the facet is slack at (1,1).
  LinearProgram lp{{1.0, 1.0}, {{{0.5 / std::sqrt(2.0), 0.5 / std::sqrt(2.0)}, 1.0}}, {1.0, 1.0}};
  const auto s = solve_small_lp(lp);
  EXPECT_NEAR(s.optimum, 2.0, 1e-12);
  EXPECT_NEAR(s.point[0], 1.0, 1e-12);
  EXPECT_NEAR(s.point[1], 1.0, 1e-12);
}

TEST(SmallLp, ZeroObjective) {
  LinearProgram lp{{0.0, 0.0}, {}, {1.0, 1.0}};
  const auto s = solve_small_lp(lp);
  EXPECT_EQ(s.optimum, 0.0);
  EXPECT_EQ(s.point, (std::vector<double>{0.0, 0.0}));
}

TEST(SmallLp, RejectsNegativeRhsAndCaps) {
  LinearProgram bad{{1.0}, {{{1.0}, -1.0}}, {1.0}};
  EXPECT_THROW(solve_small_lp(bad), invalid_input);
  LinearProgram big{std::vector<double>(65, 1.0), {}, std::vector<double>(65, 1.0)};
  EXPECT_THROW(solve_small_lp(big), cap_exceeded);
}

TEST(SmallLp, DegenerateVertexTerminates) {
  // Many constraints tight at the optimum (1,1,1).
  LinearProgram lp;
  lp.objective = {1.0, 1.0, 1.0};
  lp.upper = {1.0, 1.0, 1.0};
  for (int r = 0; r < 20; ++r) lp.constraints.push_back({{0.5, 0.5, 0.5}, 1.5});
  lp.constraints.push_back({{1.0, 1.0, 0.0}, 2.0});
  lp.constraints.push_back({{0.0, 1.0, 1.0}, 2.0});
  const auto s = solve_small_lp(lp);
  EXPECT_NEAR(s.optimum, 3.0, 1e-12);
}

// Brute-force oracle: enumerate intersections of every n-subset of the
// constraint planes, keep feasible points, take the best objective.
static double vertex_enumeration(const LinearProgram& lp) {
  const std::size_t n = lp.objective.size();
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  for (const auto& c : lp.constraints) {
    rows.push_back(c.row);
    rhs.push_back(c.rhs);
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> e(n, 0.0);
    e[j] = 1.0;
    rows.push_back(e);
    rhs.push_back(lp.upper[j]);
    e[j] = -1.0;
    rows.push_back(e);
    rhs.push_back(0.0);
  }
  const std::size_t m = rows.size();
  double best = -INFINITY;
  std::vector<std::size_t> pick(n);
  auto rec = [&](auto&& self, std::size_t start, std::size_t depth) -> void {
    if (depth == n) {
      Eigen::MatrixXd A(n, n);
      Eigen::VectorXd b(n);
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t j = 0; j < n; ++j) A(r, j) = rows[pick[r]][j];
        b[r] = rhs[pick[r]];
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
      if (!lu.isInvertible()) return;
      const Eigen::VectorXd x = lu.solve(b);
      for (std::size_t k = 0; k < m; ++k) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += rows[k][j] * x[j];
        if (s > rhs[k] + 1e-9) return;
      }
      double obj = 0.0;
      for (std::size_t j = 0; j < n; ++j) obj += lp.objective[j] * x[j];
      best = std::max(best, obj);
      return;
    }
    for (std::size_t k = start; k < m; ++k) {
      pick[depth] = k;
      self(self, k + 1, depth + 1);
    }
  };
  rec(rec, 0, 0);
  return best;
}

TEST(SmallLp, MatchesVertexEnumeration) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 4;
    LinearProgram lp;
    for (std::size_t j = 0; j < n; ++j) {
      lp.objective.push_back(u(gen) < 0.2 ? 0.0 : u(gen) * 2 - 0.3);
      lp.upper.push_back(0.5 + u(gen));
    }
    const std::size_t m = trial % 7;
    for (std::size_t r = 0; r < m; ++r) {
      LinearConstraint c;
      for (std::size_t j = 0; j < n; ++j) c.row.push_back(u(gen) * 2 - 0.5);
      c.rhs = u(gen) < 0.2 ? 0.0 : u(gen);
      lp.constraints.push_back(c);
    }
    const auto s = solve_small_lp(lp);
    EXPECT_NEAR(s.optimum, vertex_enumeration(lp), 1e-9) << "trial " << trial;
    for (const auto& c : lp.constraints) {
      double v = 0.0;
      for (std::size_t j = 0; j < n; ++j) v += c.row[j] * s.point[j];
      EXPECT_LE(v, c.rhs + 1e-9);
    }
  }
}

TEST(SmallLp, IncrementalRowsMatchOneShot) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 4;
    LinearProgram lp;
    for (std::size_t j = 0; j < n; ++j) {
      lp.objective.push_back(u(gen));
      lp.upper.push_back(1.0);
    }
    DenseSimplex inc(lp);
    inc.solve();
    for (int r = 0; r < 8; ++r) {
      LinearConstraint c;
      for (std::size_t j = 0; j < n; ++j) c.row.push_back(u(gen));
      c.rhs = 0.3 + u(gen);
      lp.constraints.push_back(c);
      inc.add_constraint(c);
      const auto warm = inc.solve();
      EXPECT_NEAR(warm.optimum, solve_small_lp(lp).optimum, 1e-10) << "trial " << trial << " row " << r;
      EXPECT_NEAR(warm.optimum, vertex_enumeration(lp), 1e-9);
    }
  }
}
