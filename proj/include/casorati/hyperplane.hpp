#pragma once

// The hyperplane Casorati curvature as a function of the unit normal. A
// hyperplane is identified with its unit normal u (u ~ -u), which turns the
// Grassmannian Gr(n-1, n) into the projective sphere. In terms of u,
//
//   C(u^perp) = (1/(n-1)) sum_alpha [ ||z||_F^2 - 2 u^T z^2 u + (u^T z u)^2 ],
//
// a quartic on S^{n-1}.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

#include "casorati/errors.hpp"
#include "casorati/frame_core.hpp"
#include "casorati/invariants.hpp"

namespace casorati {

enum class ExtremumMode { Inf, Sup };

inline const char* to_string(ExtremumMode m) { return m == ExtremumMode::Inf ? "inf" : "sup"; }

/// Unit normal canonicalized so its first nonzero coordinate is positive;
/// coordinates of magnitude <= 1e-12 are set to zero first.
class Hyperplane {
 public:
  static constexpr double kZeroCoordinate = 1e-12;

  Hyperplane(GeometrySetup setup, Eigen::VectorXd normal) : setup_(std::move(setup)), normal_(std::move(normal)) {
    if (normal_.size() != setup_.n()) throw DimensionError("hyperplane normal has wrong length");
    const double len = normal_.norm();
    if (!(len > 0.0) || !std::isfinite(len)) throw DomainError("hyperplane normal must be a nonzero finite vector");
    normal_ /= len;
    bool snapped = false;
    for (int i = 0; i < normal_.size(); ++i) {
      if (normal_[i] != 0.0 && std::abs(normal_[i]) <= kZeroCoordinate) {
        normal_[i] = 0.0;
        snapped = true;
      }
    }
    if (snapped) normal_.normalize();
    for (int i = 0; i < normal_.size(); ++i) {
      if (std::abs(normal_[i]) > kZeroCoordinate) {
        if (normal_[i] < 0) normal_ = -normal_;
        break;
      }
    }
  }

  const GeometrySetup& setup() const noexcept { return setup_; }
  const Eigen::VectorXd& normal() const noexcept { return normal_; }
  SubspaceBasis basis() const { return SubspaceBasis::orthogonal_complement(setup_, normal_); }

  /// Strict lexicographic order on canonical normals.
  friend bool lexicographically_less(const Hyperplane& a, const Hyperplane& b) {
    return std::lexicographical_compare(a.normal_.data(), a.normal_.data() + a.normal_.size(), b.normal_.data(),
                                        b.normal_.data() + b.normal_.size());
  }

 private:
  GeometrySetup setup_;
  Eigen::VectorXd normal_;
};

/// The objective u -> C(u^perp) with the per-tensor pieces precomputed.
/// value() and gradient() accept any u in R^n (the polynomial extension);
/// they agree with C(u^perp) only on the unit sphere.
class HyperplaneObjective {
 public:
  explicit HyperplaneObjective(const BundleSymTensor& zeta)
      : n_(zeta.n()), slices_(zeta.slices()), frob_sq_(zeta.frobenius_sq()),
        squares_(Eigen::MatrixXd::Zero(zeta.n(), zeta.n())) {
    for (const auto& z : slices_) squares_ += z * z;
  }

  int n() const noexcept { return n_; }
  /// sum_alpha (zeta^alpha)^2
  const Eigen::MatrixXd& squares() const noexcept { return squares_; }
  const std::vector<Eigen::MatrixXd>& slices() const noexcept { return slices_; }

  double value(const Eigen::VectorXd& u) const {
    double s = frob_sq_ - 2.0 * u.dot(squares_ * u);
    for (const auto& z : slices_) {
      const double r = u.dot(z * u);
      s += r * r;
    }
    return s / (n_ - 1);
  }

  /// Raw-pointer variant used by the sampling oracle's inner loop.
  double value(const double* u) const {
    double quad = 0.0;
    for (int i = 0; i < n_; ++i) {
      double row = 0.0;
      for (int j = 0; j < n_; ++j) row += squares_(i, j) * u[j];
      quad += u[i] * row;
    }
    double s = frob_sq_ - 2.0 * quad;
    for (const auto& z : slices_) {
      double r = 0.0;
      for (int i = 0; i < n_; ++i) {
        double row = 0.0;
        for (int j = 0; j < n_; ++j) row += z(i, j) * u[j];
        r += u[i] * row;
      }
      s += r * r;
    }
    return s / (n_ - 1);
  }

  /// Euclidean gradient: (1/(n-1)) sum_alpha [ -4 z^2 u + 4 (u^T z u) z u ].
  Eigen::VectorXd gradient(const Eigen::VectorXd& u) const {
    Eigen::VectorXd g = -4.0 * (squares_ * u);
    for (const auto& z : slices_) {
      const Eigen::VectorXd zu = z * u;
      g += 4.0 * u.dot(zu) * zu;
    }
    return g / (n_ - 1);
  }

  /// Gradient projected onto the tangent space u^perp of the sphere.
  Eigen::VectorXd riemannian_gradient(const Eigen::VectorXd& u) const {
    const Eigen::VectorXd g = gradient(u);
    return g - u.dot(g) * u;
  }

 private:
  int n_;
  std::vector<Eigen::MatrixXd> slices_;
  double frob_sq_;
  Eigen::MatrixXd squares_;
};

inline double casorati_of_normal(const BundleSymTensor& zeta, const Eigen::VectorXd& u) {
  if (u.size() != zeta.n()) throw DimensionError("casorati_of_normal: normal has wrong length");
  if (!(std::abs(u.norm() - 1.0) <= kOrthonormalTolerance)) throw DomainError("casorati_of_normal: u is not a unit vector");
  return std::max(0.0, HyperplaneObjective(zeta).value(u));
}

}  // namespace casorati
