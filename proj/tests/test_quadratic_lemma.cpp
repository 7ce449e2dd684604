#include <gtest/gtest.h>

#include <cmath>

#include "casorati/quadratic_lemma.hpp"
#include "casorati/sampling.hpp"

using namespace casorati;

namespace {

// Random point with sum x = k.
Eigen::VectorXd feasible_point(Rng& rng, int n, double k, double spread) {
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x[i] = rng.uniform(-spread, spread);
  x.array() += (k - x.sum()) / n;
  return x;
}

}  // namespace

TEST(QuadraticProblem, ConstructionAndCompatibility) {
  EXPECT_THROW(QuadraticProblem(1, 1, 1), DomainError);
  EXPECT_THROW(QuadraticProblem(3, 0, 1), DomainError);
  EXPECT_THROW(QuadraticProblem(3, 1, -1), DomainError);
  EXPECT_TRUE(QuadraticProblem(3, 3, 1).compatible());
  EXPECT_FALSE(QuadraticProblem(3, 3, 1.1).compatible());
  EXPECT_FALSE(QuadraticProblem(4, 1.5, 1).compatible());  // a <= n - 2
  EXPECT_TRUE(QuadraticProblem(2, 1, 1).compatible());
}

TEST(FEval, Examples) {
  const QuadraticProblem p(3, 3, 1);
  EXPECT_DOUBLE_EQ(f_eval(p, Eigen::Vector3d(1, 1, 2)), 0.0);
  EXPECT_DOUBLE_EQ(f_eval(p, Eigen::Vector3d::Zero()), 0.0);
  EXPECT_DOUBLE_EQ(f_eval(p, Eigen::Vector3d(1, 0, 0)), 3.0);
  EXPECT_THROW(f_eval(p, Eigen::Vector2d(1, 0)), DimensionError);
}

TEST(FGradHess, Examples) {
  const QuadraticProblem p(3, 3, 1);
  EXPECT_EQ(f_grad(p, Eigen::Vector3d(1, 1, 2)), Eigen::Vector3d::Zero().eval());
  EXPECT_EQ(f_grad(p, Eigen::Vector3d::Zero()), Eigen::Vector3d::Zero().eval());
  Eigen::Matrix3d h;
  h << 3, -1, -1, -1, 3, -1, -1, -1, 1;
  EXPECT_EQ(f_hess(p), (2 * h).eval());
}

TEST(FGrad, MatchesFiniteDifferences) {
  Rng rng(41);
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + t % 7;
    const QuadraticProblem p(n, rng.uniform(0.1, 5), rng.uniform(0.1, 5));
    const Eigen::VectorXd x = feasible_point(rng, n, rng.uniform(-3, 3), 2);
    const Eigen::VectorXd g = f_grad(p, x);
    const double h = 1e-5;
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd up = x, dn = x;
      up[i] += h;
      dn[i] -= h;
      const double fd = (f_eval(p, up) - f_eval(p, dn)) / (2 * h);
      EXPECT_NEAR(fd, g[i], 1e-6 * std::max(1.0, std::abs(g[i])));
    }
    // Hessian times x equals the gradient (f is homogeneous quadratic).
    EXPECT_LT((f_hess(p) * x - g).norm(), 1e-12 * (1 + g.norm()));
  }
}

TEST(TangentPsd, Examples) {
  const auto r1 = tangent_psd_check(QuadraticProblem(3, 3, 1));
  EXPECT_TRUE(r1.psd);
  const auto r2 = tangent_psd_check(QuadraticProblem(2, 1, 1));
  EXPECT_TRUE(r2.psd);
  // Tangent of {x1 + x2 = 0} is span(1,-1)/sqrt2; X^T H X = 2(a+1) = 4 there.
  EXPECT_NEAR(r2.min_eigenvalue, 4.0, 1e-12);
  // a = b = 0.1 is still PSD on the tangent: there the form reduces to
  // (a+1) sum_{i<n} X_i^2 + (b+1) X_n^2 > 0.
  const auto r3 = tangent_psd_check(QuadraticProblem(3, 0.1, 0.1));
  EXPECT_TRUE(r3.psd);
  // The failing branch through the generic overload: a = b = -2.
  Eigen::Matrix3d h = Eigen::Matrix3d::Constant(-2.0);
  h.diagonal().setConstant(-4.0);
  const auto r4 = tangent_psd_check(Eigen::MatrixXd(h));
  EXPECT_FALSE(r4.psd);
  EXPECT_NEAR(r4.min_eigenvalue, -2.0, 1e-12);
  EXPECT_THROW(tangent_psd_check(Eigen::MatrixXd::Zero(3, 2)), DimensionError);
}

TEST(TangentPsd, AgreesWithExhaustiveEvaluation) {
  Rng rng(42);
  for (int t = 0; t < 30; ++t) {
    const int n = 2 + t % 6;
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) m(i, j) = m(j, i) = rng.uniform(-1, 1);
    if (t % 2 == 0) m += 3.0 * Eigen::MatrixXd::Identity(n, n);
    const auto r = tangent_psd_check(m);
    double lo = INFINITY;
    for (int k = 0; k < 1000; ++k) {
      Eigen::VectorXd x = feasible_point(rng, n, 0.0, 1.0);
      x.normalize();
      lo = std::min(lo, x.dot(m * x));
    }
    EXPECT_GE(lo, r.min_eigenvalue - 1e-12);
    if (lo < -1e-3) {
      EXPECT_FALSE(r.psd);
    }
    if (r.psd) {
      EXPECT_GE(lo, -1e-10);
    }
  }
}

TEST(GlobalMinPoint, Examples) {
  const QuadraticProblem p(3, 3, 1, 4);
  EXPECT_EQ(global_min_point(p), Eigen::Vector3d(1, 1, 2).eval());
  EXPECT_EQ(global_min_point(p.with_level(0)), Eigen::Vector3d::Zero().eval());
  EXPECT_EQ(global_min_point(p.with_level(2)), Eigen::Vector3d(0.5, 0.5, 1).eval());
  EXPECT_THROW(global_min_point(QuadraticProblem(3, 3, 2, 1)), DomainError);
}

TEST(GlobalMinPoint, IsTheConstrainedMinimum) {
  Rng rng(43);
  for (int t = 0; t < 40; ++t) {
    const int n = 2 + t % 7;
    const double a = n - 2 + rng.uniform(0.05, 5);
    const double b = (n - 1.0) / (a - n + 2);
    const QuadraticProblem p(n, a, b, rng.uniform(-4, 4));
    ASSERT_TRUE(p.compatible());
    const Eigen::VectorXd x = global_min_point(p);
    EXPECT_NEAR(x.sum(), p.k, 1e-12 * (1 + std::abs(p.k)));
    EXPECT_NEAR(f_eval(p, x), 0.0, 1e-12 * (1 + p.k * p.k));
    // The gradient is parallel to the constraint normal (1, ..., 1) and
    // in fact vanishes.
    EXPECT_LT(f_grad(p, x).norm(), 1e-10 * (1 + std::abs(p.k)));
    for (int k = 0; k < 200; ++k) EXPECT_GE(f_eval(p, feasible_point(rng, n, p.k, 3)), -1e-10);
  }
}

TEST(TheoremCoefficients, Examples) {
  auto [a1, b1] = theorem_coefficients(3, 3);
  EXPECT_DOUBLE_EQ(a1, 3.0);
  EXPECT_DOUBLE_EQ(b1, 1.0);
  auto [a2, b2] = theorem_coefficients(3, 12);
  EXPECT_DOUBLE_EQ(a2, 1.5);
  EXPECT_DOUBLE_EQ(b2, 4.0);
  auto [a3, b3] = theorem_coefficients(4, 6);
  EXPECT_DOUBLE_EQ(a3, 4.0);
  EXPECT_DOUBLE_EQ(b3, 1.5);
  EXPECT_THROW(theorem_coefficients(3, 6), DomainError);
}

TEST(TheoremCoefficients, AlwaysCompatible) {
  for (int n = 2; n <= 8; ++n) {
    const double crit = double(n) * (n - 1);
    for (int s = 1; s <= 60; ++s) {
      const double r = 3 * crit * s / 60.0;
      if (std::abs(r - crit) <= 1e-9 * crit) continue;
      const auto [a, b] = theorem_coefficients(n, r);
      EXPECT_GT(a, n - 2.0);
      const double target = (n - 1.0) / (a - n + 2);
      EXPECT_NEAR(b, target, 1e-12 * target) << "n=" << n << " r=" << r;
      EXPECT_TRUE(QuadraticProblem(n, a, b).compatible());
    }
  }
}

TEST(ConstraintTangentBasis, OrthonormalAndSumFree) {
  for (int n = 2; n <= 9; ++n) {
    const auto b = constraint_tangent_basis(n);
    EXPECT_EQ(b.cols(), n - 1);
    EXPECT_LT((b.transpose() * b - Eigen::MatrixXd::Identity(n - 1, n - 1)).norm(), 1e-13);
    EXPECT_LT((Eigen::RowVectorXd::Ones(n) * b).norm(), 1e-13);
  }
}
