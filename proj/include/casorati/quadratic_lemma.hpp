#pragma once

// The quadratic form
//
//   f(x) = a sum_{i<n} x_i^2 + b x_n^2 - 2 sum_{i<j} x_i x_j
//
// minimized over the affine hyperplane sum_i x_i = k. When
// b = (n-1)/(a-n+2) the minimum is 0, attained at
// x_1 = ... = x_{n-1} = k/(a+1), x_n = k/(b+1).

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <utility>

#include "casorati/delta_casorati.hpp"
#include "casorati/errors.hpp"

namespace casorati {

struct QuadraticProblem {
  int n;
  double a;
  double b;
  double k;

  QuadraticProblem(int n_, double a_, double b_, double k_ = 0.0) : n(n_), a(a_), b(b_), k(k_) {
    if (n < 2) throw DomainError("QuadraticProblem needs n >= 2");
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("QuadraticProblem needs a > 0 and b > 0");
  }

  /// b = (n-1)/(a-n+2) with a > n-2.
  bool compatible() const {
    if (!(a > n - 2.0)) return false;
    const double target = (n - 1.0) / (a - n + 2.0);
    return std::abs(b - target) <= 1e-10 * std::max(1.0, std::abs(target));
  }

  QuadraticProblem with_level(double level) const { return {n, a, b, level}; }
};

inline void check_length(const QuadraticProblem& p, const Eigen::VectorXd& x) {
  if (x.size() != p.n) {
    throw DimensionError("quadratic form expects a vector of length " + std::to_string(p.n) + ", got " +
                         std::to_string(x.size()));
  }
}

inline double f_eval(const QuadraticProblem& p, const Eigen::VectorXd& x) {
  check_length(p, x);
  const int n = p.n;
  double diag = 0.0;
  for (int i = 0; i < n - 1; ++i) diag += x[i] * x[i];
  double cross = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) cross += x[i] * x[j];
  return p.a * diag + p.b * x[n - 1] * x[n - 1] - 2.0 * cross;
}

/// df/dx_i = 2(a+1) x_i - 2 sum x for i < n; df/dx_n = 2(b+1) x_n - 2 sum x.
inline Eigen::VectorXd f_grad(const QuadraticProblem& p, const Eigen::VectorXd& x) {
  check_length(p, x);
  const double total = x.sum();
  Eigen::VectorXd g(p.n);
  for (int i = 0; i < p.n - 1; ++i) g[i] = 2.0 * (p.a + 1.0) * x[i] - 2.0 * total;
  g[p.n - 1] = 2.0 * (p.b + 1.0) * x[p.n - 1] - 2.0 * total;
  return g;
}

inline Eigen::MatrixXd f_hess(const QuadraticProblem& p) {
  Eigen::MatrixXd h = Eigen::MatrixXd::Constant(p.n, p.n, -2.0);
  for (int i = 0; i < p.n - 1; ++i) h(i, i) = 2.0 * p.a;
  h(p.n - 1, p.n - 1) = 2.0 * p.b;
  return h;
}

/// Orthonormal basis (columns) of the constraint tangent {X : sum X = 0}.
inline Eigen::MatrixXd constraint_tangent_basis(int n) {
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n) / std::sqrt(double(n));
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(ones);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  return q.rightCols(n - 1);
}

struct TangentPsdResult {
  bool psd = false;
  double min_eigenvalue = 0.0;
};

/// Positive semidefiniteness of a symmetric matrix restricted to
/// {X : sum X = 0}, with tolerance -1e-10 on the smallest eigenvalue.
inline TangentPsdResult tangent_psd_check(const Eigen::MatrixXd& hessian) {
  if (hessian.rows() != hessian.cols() || hessian.rows() < 2) throw DimensionError("tangent_psd_check: bad matrix");
  const Eigen::MatrixXd basis = constraint_tangent_basis(static_cast<int>(hessian.rows()));
  const Eigen::MatrixXd projected = basis.transpose() * hessian * basis;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (projected + projected.transpose()), Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  return {lo >= -1e-10, lo};
}

inline TangentPsdResult tangent_psd_check(const QuadraticProblem& p) { return tangent_psd_check(f_hess(p)); }

/// Closed-form constrained minimizer; requires the compatibility relation.
inline Eigen::VectorXd global_min_point(const QuadraticProblem& p) {
  if (!p.compatible()) {
    throw DomainError("global_min_point: (a, b, n) violate b = (n-1)/(a-n+2)");
  }
  Eigen::VectorXd x = Eigen::VectorXd::Constant(p.n, p.k / (p.a + 1.0));
  x[p.n - 1] = p.k / (p.b + 1.0);
  return x;
}

/// The (a, b) of the per-slice quadratic form in the inequality proof:
/// a = r/n + a(r)/(n-1), b = r/n.
inline std::pair<double, double> theorem_coefficients(int n, double r) {
  const double ar = a_coeff(n, r);
  return {r / n + ar / (n - 1.0), r / n};
}

}  // namespace casorati
