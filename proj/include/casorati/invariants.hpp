#pragma once

// Scalar invariants of a curvature-like tensor T and of a bundle tensor
// zeta: sectional, k-Ricci, k-scalar and normalized curvatures, the
// Casorati curvature of zeta and of its restriction to a k-plane.

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "casorati/errors.hpp"
#include "casorati/frame_core.hpp"

namespace casorati {

inline constexpr double kOrthonormalTolerance = 1e-10;

/// Orthonormal basis {e_1..e_k} of a k-plane section, stored as the
/// columns of an n x k matrix. k = 1 is accepted (lines appear as the
/// hyperplanes of a 2-dimensional tangent space).
class SubspaceBasis {
 public:
  SubspaceBasis(GeometrySetup setup, Eigen::MatrixXd vectors)
      : setup_(std::move(setup)), vectors_(std::move(vectors)) {
    if (vectors_.rows() != setup_.n()) {
      throw DimensionError("subspace basis vectors have length " + std::to_string(vectors_.rows()) +
                           ", expected n=" + std::to_string(setup_.n()));
    }
    if (vectors_.cols() < 1 || vectors_.cols() > setup_.n()) {
      throw DomainError("subspace dimension must lie in [1, n]");
    }
    const Eigen::MatrixXd gram = vectors_.transpose() * vectors_;
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(gram.rows(), gram.cols());
    const double err = (gram - id).cwiseAbs().maxCoeff();
    if (!(err <= kOrthonormalTolerance)) {
      throw DomainError("subspace basis is not orthonormal (max |<v_i,v_j> - delta_ij| = " +
                        std::to_string(err) + ")");
    }
  }

  static SubspaceBasis full(const GeometrySetup& setup) {
    return {setup, Eigen::MatrixXd::Identity(setup.n(), setup.n())};
  }

  /// span(e_{axes[0]}, ..., e_{axes[k-1]}) with 0-based axis indices.
  static SubspaceBasis coordinate(const GeometrySetup& setup, const std::vector<int>& axes) {
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(setup.n(), static_cast<int>(axes.size()));
    for (std::size_t c = 0; c < axes.size(); ++c) {
      if (axes[c] < 0 || axes[c] >= setup.n()) throw DomainError("coordinate axis out of range");
      v(axes[c], static_cast<int>(c)) = 1.0;
    }
    return {setup, std::move(v)};
  }

  /// Orthonormal basis of u^perp built from a Householder reflection that
  /// maps e_1 to u (u must be a unit vector).
  static SubspaceBasis orthogonal_complement(const GeometrySetup& setup, const Eigen::VectorXd& u) {
    const int n = setup.n();
    if (u.size() != n) throw DimensionError("normal vector has wrong length");
    if (!(std::abs(u.norm() - 1.0) <= kOrthonormalTolerance)) throw DomainError("normal vector is not unit");
    // H = I - 2 w w^T / (w^T w), w = u - s e_1 with s = -sign(u_1) avoids cancellation.
    const double s = u[0] >= 0.0 ? -1.0 : 1.0;
    Eigen::VectorXd w = u;
    w[0] -= s;
    const Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n) - 2.0 * w * w.transpose() / w.squaredNorm();
    // H e_1 = s u, so the remaining columns span u^perp.
    return {setup, h.rightCols(n - 1)};
  }

  const GeometrySetup& setup() const noexcept { return setup_; }
  int k() const noexcept { return static_cast<int>(vectors_.cols()); }
  const Eigen::MatrixXd& vectors() const noexcept { return vectors_; }
  Eigen::VectorXd vector(int i) const { return vectors_.col(i); }

 private:
  GeometrySetup setup_;
  Eigen::MatrixXd vectors_;
};

/// T(X, Y, Z, W) contracted against arbitrary vectors.
inline double contract(const CurvatureTensor& t, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                       const Eigen::VectorXd& z, const Eigen::VectorXd& w) {
  const int n = t.n();
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    if (x[i] == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      if (y[j] == 0.0) continue;
      for (int k = 0; k < n; ++k) {
        if (z[k] == 0.0) continue;
        double inner = 0.0;
        for (int l = 0; l < n; ++l) inner += t(i, j, k, l) * w[l];
        acc += x[i] * y[j] * z[k] * inner;
      }
    }
  }
  return acc;
}

/// K_T(X ^ Y) = T(X, Y, Y, X) for an orthonormal pair.
inline double sectional(const CurvatureTensor& t, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  if (x.size() != t.n() || y.size() != t.n()) throw DimensionError("sectional: vector length differs from n");
  if (!(std::abs(x.norm() - 1.0) <= kOrthonormalTolerance) ||
      !(std::abs(y.norm() - 1.0) <= kOrthonormalTolerance) ||
      !(std::abs(x.dot(y)) <= kOrthonormalTolerance)) {
    throw DomainError("sectional: X, Y must be an orthonormal pair");
  }
  return contract(t, x, y, y, x);
}

namespace detail {

// K_T(e_i ^ e_j) for every pair of basis vectors of pi.
inline Eigen::MatrixXd pair_sectionals(const CurvatureTensor& t, const SubspaceBasis& pi) {
  if (pi.setup().n() != t.n()) throw DimensionError("subspace and tensor dimensions differ");
  const int k = pi.k();
  Eigen::MatrixXd kij = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      const Eigen::VectorXd ei = pi.vector(i), ej = pi.vector(j);
      kij(i, j) = kij(j, i) = contract(t, ei, ej, ej, ei);
    }
  return kij;
}

}  // namespace detail

/// tau_T(Pi_k) = sum_{i<j} K_T(e_i ^ e_j); at k = n this is tau_T(p).
inline double k_scalar(const CurvatureTensor& t, const SubspaceBasis& pi) {
  const auto kij = detail::pair_sectionals(t, pi);
  double s = 0.0;
  for (int i = 0; i < pi.k(); ++i)
    for (int j = i + 1; j < pi.k(); ++j) s += kij(i, j);
  return s;
}

/// (Ric_T)_{Pi_k}(e_i) = sum_{j != i} K_T(e_i ^ e_j); i is 0-based.
inline double k_ricci(const CurvatureTensor& t, const SubspaceBasis& pi, int i) {
  if (i < 0 || i >= pi.k()) throw DomainError("k_ricci: index out of range");
  const auto kij = detail::pair_sectionals(t, pi);
  double s = 0.0;
  for (int j = 0; j < pi.k(); ++j)
    if (j != i) s += kij(i, j);
  return s;
}

/// All k-Ricci curvatures of the basis at once.
inline Eigen::VectorXd k_ricci_all(const CurvatureTensor& t, const SubspaceBasis& pi) {
  const auto kij = detail::pair_sectionals(t, pi);
  Eigen::VectorXd r(pi.k());
  for (int i = 0; i < pi.k(); ++i) {
    double s = 0.0;
    for (int j = 0; j < pi.k(); ++j)
      if (j != i) s += kij(i, j);
    r[i] = s;
  }
  return r;
}

inline double normalized_scalar(const CurvatureTensor& t, const SubspaceBasis& pi) {
  const int k = pi.k();
  if (k < 2) throw DomainError("normalized_scalar needs k >= 2");
  return 2.0 * k_scalar(t, pi) / (double(k) * (k - 1));
}

/// C^{T,zeta} = ||zeta||^2 / n.
inline double casorati(const BundleSymTensor& zeta) { return zeta.frobenius_sq() / zeta.n(); }

/// Components of zeta restricted to pi in its own basis:
/// (V^T zeta^alpha V) for every slice.
inline std::vector<Eigen::MatrixXd> restrict_to(const BundleSymTensor& zeta, const SubspaceBasis& pi) {
  if (pi.setup().n() != zeta.n()) throw DimensionError("subspace and zeta dimensions differ");
  std::vector<Eigen::MatrixXd> out;
  out.reserve(zeta.q());
  for (const auto& z : zeta.slices()) out.push_back(pi.vectors().transpose() * z * pi.vectors());
  return out;
}

/// C^{T,zeta}(Pi_k) = (1/k) sum_alpha sum_{i,j<=k} (zeta~_ij^alpha)^2.
/// For k = 1 the same formula is applied verbatim.
inline double casorati_subspace(const BundleSymTensor& zeta, const SubspaceBasis& pi) {
  double s = 0.0;
  for (const auto& z : restrict_to(zeta, pi)) s += z.squaredNorm();
  return s / pi.k();
}

/// True when the subspace Casorati formula is being used below its
/// textbook range (k = 1).
inline bool is_extended_subspace(int k) noexcept { return k < 2; }

/// |n C - ||trace zeta||^2 + 2 tau_T| with T = gauss_tensor(zeta); the
/// scalar curvature is taken from T itself so both sides use independent
/// arithmetic.
inline double trace_identity_defect(const BundleSymTensor& zeta) {
  const auto t = gauss_tensor(zeta);
  const double tau = k_scalar(t, SubspaceBasis::full(zeta.setup()));
  return std::abs(zeta.n() * casorati(zeta) - zeta.trace_vector().squaredNorm() + 2.0 * tau);
}

/// Quantities that need an ambient: reported only when GeometrySetup
/// carries one.
struct AmbientRelations {
  double tau_tilde_nor = 0.0;  // normalized ambient scalar curvature of T_pM
  double tau_tilde = 0.0;      // tau~(T_pM) = tau_tilde_nor n(n-1)/2
  double tau = 0.0;            // intrinsic scalar curvature tau(p)
  double tau_nor = 0.0;        // 2 tau / (n(n-1))
  /// tau_Nor recomputed as tau~_Nor + n/(n-1) ||H||^2 - ||sigma||^2/(n(n-1)).
  double tau_nor_from_mean_curvature = 0.0;
  /// |2 tau - (2 tau~ + n^2 ||H||^2 - ||sigma||^2)|.
  double gauss_identity_defect = 0.0;
};

struct InvariantBundle {
  double tau_T = 0.0;
  double tau_T_nor = 0.0;
  Eigen::VectorXd ricci;
  double casorati = 0.0;
  double trace_norm_sq = 0.0;
  double mean_curv_sq = 0.0;
  double sigma_norm_sq = 0.0;
  bool n2_extension = false;  // hyperplanes are lines (k = 1 formula in use)
  std::optional<AmbientRelations> ambient;
};

inline InvariantBundle submanifold_relations(const BundleSymTensor& zeta) {
  const auto& setup = zeta.setup();
  const int n = zeta.n();
  const double nn1 = double(n) * (n - 1);
  const auto t = gauss_tensor(zeta);
  const auto full = SubspaceBasis::full(setup);

  InvariantBundle b;
  b.ricci = k_ricci_all(t, full);
  b.tau_T = k_scalar(t, full);
  b.tau_T_nor = 2.0 * b.tau_T / nn1;
  b.sigma_norm_sq = zeta.frobenius_sq();
  b.casorati = b.sigma_norm_sq / n;
  b.trace_norm_sq = zeta.trace_vector().squaredNorm();
  b.mean_curv_sq = b.trace_norm_sq / (double(n) * n);
  b.n2_extension = is_extended_subspace(n - 1);

  if (const auto tt = setup.tau_tilde_nor()) {
    AmbientRelations a;
    a.tau_tilde_nor = *tt;
    a.tau_tilde = *tt * nn1 / 2.0;
    if (const auto* sf = std::get_if<SpaceForm>(&setup.ambient())) {
      // Intrinsic curvature from the Gauss equation R = R~ + gauss(sigma).
      a.tau = k_scalar(space_form_tensor(setup, sf->c) + t, full);
    } else {
      a.tau = a.tau_tilde + b.tau_T;
    }
    a.tau_nor = 2.0 * a.tau / nn1;
    a.tau_nor_from_mean_curvature = a.tau_tilde_nor + n / (n - 1.0) * b.mean_curv_sq - b.sigma_norm_sq / nn1;
    a.gauss_identity_defect =
        std::abs(2.0 * a.tau - (2.0 * a.tau_tilde + double(n) * n * b.mean_curv_sq - b.sigma_norm_sq));
    b.ambient = a;
  }
  return b;
}

}  // namespace casorati
