#pragma once

// Pointwise tensor data model: dimensions, the bundle-valued symmetric
// tensor zeta, dense (0,4) curvature-like tensors, the algebraic Gauss
// builder and symmetry validation.
//
// Indexing is 0-based throughout the API; anything that reaches a user
// (error messages, reports) is 1-based.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "casorati/errors.hpp"

namespace casorati {

inline constexpr int kMaxTangentDim = 16;
inline constexpr int kMaxBundleRank = 8;
inline constexpr double kSymmetrizeTolerance = 1e-9;

/// Real space form of constant sectional curvature c.
struct SpaceForm {
  double c = 0.0;
  bool operator==(const SpaceForm&) const = default;
};

/// Ambient of unspecified type; the caller supplies the normalized ambient
/// scalar curvature of the tangent n-plane directly.
struct AmbientScalar {
  double tau_tilde_nor = 0.0;
  bool operator==(const AmbientScalar&) const = default;
};

using Ambient = std::variant<std::monostate, SpaceForm, AmbientScalar>;

class GeometrySetup {
 public:
  GeometrySetup(int n, int q, Ambient ambient = {}) : n_(n), q_(q), ambient_(ambient) {
    if (n < 2 || n > kMaxTangentDim) {
      throw DomainError("tangent dimension n must lie in [2, 16], got " + std::to_string(n));
    }
    if (q < 1 || q > kMaxBundleRank) {
      throw DomainError("bundle rank q must lie in [1, 8], got " + std::to_string(q));
    }
  }

  int n() const noexcept { return n_; }
  int q() const noexcept { return q_; }
  /// Dimension of the ambient in the submanifold reading.
  int m() const noexcept { return n_ + q_; }
  const Ambient& ambient() const noexcept { return ambient_; }
  bool has_ambient() const noexcept { return !std::holds_alternative<std::monostate>(ambient_); }

  /// Normalized ambient scalar curvature of the tangent space, if known.
  /// For a real space form this equals c.
  std::optional<double> tau_tilde_nor() const {
    if (const auto* sf = std::get_if<SpaceForm>(&ambient_)) return sf->c;
    if (const auto* raw = std::get_if<AmbientScalar>(&ambient_)) return raw->tau_tilde_nor;
    return std::nullopt;
  }

  GeometrySetup with_ambient(Ambient ambient) const { return {n_, q_, ambient}; }

  /// Same dimensions; ambient is ignored.
  bool same_shape(const GeometrySetup& other) const noexcept {
    return n_ == other.n_ && q_ == other.q_;
  }

  bool operator==(const GeometrySetup&) const = default;

 private:
  int n_;
  int q_;
  Ambient ambient_;
};

/// Components zeta_ij^alpha of a bundle-valued symmetric (1,2)-tensor at a
/// point, stored as q symmetric n x n slices. Immutable.
class BundleSymTensor {
 public:
  /// Symmetrizes each slice as (v_ij + v_ji)/2. Throws AsymmetryError when
  /// the largest |v_ij - v_ji| exceeds 1e-9.
  BundleSymTensor(GeometrySetup setup, std::vector<Eigen::MatrixXd> slices)
      : setup_(std::move(setup)), slices_(std::move(slices)) {
    const int n = setup_.n();
    if (static_cast<int>(slices_.size()) != setup_.q()) {
      throw DimensionError("zeta has " + std::to_string(slices_.size()) + " slices, expected q=" +
                           std::to_string(setup_.q()));
    }
    int worst_a = 0, worst_i = 0, worst_j = 0;
    for (int a = 0; a < setup_.q(); ++a) {
      auto& s = slices_[a];
      if (s.rows() != n || s.cols() != n) {
        throw DimensionError("zeta slice " + std::to_string(a + 1) + " is " +
                             std::to_string(s.rows()) + "x" + std::to_string(s.cols()) +
                             ", expected " + std::to_string(n) + "x" + std::to_string(n));
      }
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          const double d = std::abs(s(i, j) - s(j, i));
          if (d > asymmetry_defect_) {
            asymmetry_defect_ = d;
            worst_a = a;
            worst_i = i;
            worst_j = j;
          }
          const double avg = 0.5 * (s(i, j) + s(j, i));
          s(i, j) = avg;
          s(j, i) = avg;
        }
      }
    }
    if (!(asymmetry_defect_ <= kSymmetrizeTolerance)) {
      throw AsymmetryError(worst_a + 1, worst_i + 1, worst_j + 1, asymmetry_defect_);
    }
  }

  static BundleSymTensor zero(const GeometrySetup& setup) {
    return {setup, std::vector<Eigen::MatrixXd>(setup.q(), Eigen::MatrixXd::Zero(setup.n(), setup.n()))};
  }

  /// Nested [alpha][i][j] arrays, the layout of the JSON tensor document.
  static BundleSymTensor from_nested(const GeometrySetup& setup,
                                     const std::vector<std::vector<std::vector<double>>>& comps) {
    if (static_cast<int>(comps.size()) != setup.q()) {
      throw DimensionError("zeta has " + std::to_string(comps.size()) + " slices, expected q=" +
                           std::to_string(setup.q()));
    }
    std::vector<Eigen::MatrixXd> slices;
    slices.reserve(comps.size());
    for (std::size_t a = 0; a < comps.size(); ++a) {
      if (static_cast<int>(comps[a].size()) != setup.n()) {
        throw DimensionError("zeta slice " + std::to_string(a + 1) + " has " +
                             std::to_string(comps[a].size()) + " rows, expected " +
                             std::to_string(setup.n()));
      }
      Eigen::MatrixXd m(setup.n(), setup.n());
      for (int i = 0; i < setup.n(); ++i) {
        if (static_cast<int>(comps[a][i].size()) != setup.n()) {
          throw DimensionError("zeta slice " + std::to_string(a + 1) + " row " +
                               std::to_string(i + 1) + " has wrong length");
        }
        for (int j = 0; j < setup.n(); ++j) m(i, j) = comps[a][i][j];
      }
      slices.push_back(std::move(m));
    }
    return {setup, std::move(slices)};
  }

  const GeometrySetup& setup() const noexcept { return setup_; }
  int n() const noexcept { return setup_.n(); }
  int q() const noexcept { return setup_.q(); }
  const std::vector<Eigen::MatrixXd>& slices() const noexcept { return slices_; }
  const Eigen::MatrixXd& slice(int alpha) const { return slices_.at(alpha); }
  double operator()(int alpha, int i, int j) const { return slices_[alpha](i, j); }

  /// Largest |v_ij - v_ji| seen on the raw input before symmetrization.
  double asymmetry_defect() const noexcept { return asymmetry_defect_; }

  std::vector<std::vector<std::vector<double>>> to_nested() const {
    std::vector<std::vector<std::vector<double>>> out(q(), std::vector<std::vector<double>>(n(), std::vector<double>(n())));
    for (int a = 0; a < q(); ++a)
      for (int i = 0; i < n(); ++i)
        for (int j = 0; j < n(); ++j) out[a][i][j] = slices_[a](i, j);
    return out;
  }

  /// ||zeta||^2 = sum over alpha, i, j of (zeta_ij^alpha)^2.
  double frobenius_sq() const {
    double s = 0.0;
    for (const auto& m : slices_) s += m.squaredNorm();
    return s;
  }

  /// trace zeta as a q-vector of slice traces.
  Eigen::VectorXd trace_vector() const {
    Eigen::VectorXd t(q());
    for (int a = 0; a < q(); ++a) t[a] = slices_[a].trace();
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& s : slices_) m = std::max(m, s.cwiseAbs().maxCoeff());
    return m;
  }

  /// Sets zeta_ij^alpha = zeta_ji^alpha = value in a copy.
  BundleSymTensor with_component(int alpha, int i, int j, double value) const {
    auto s = slices_;
    s.at(alpha)(i, j) = value;
    s[alpha](j, i) = value;
    return {setup_, std::move(s)};
  }

  BundleSymTensor with_setup(GeometrySetup setup) const {
    if (!setup.same_shape(setup_)) throw DimensionError("with_setup: dimensions differ");
    return {std::move(setup), slices_};
  }

  BundleSymTensor scaled(double lambda) const {
    auto s = slices_;
    for (auto& m : s) m *= lambda;
    return {setup_, std::move(s)};
  }

 private:
  GeometrySetup setup_;
  std::vector<Eigen::MatrixXd> slices_;
  double asymmetry_defect_ = 0.0;
};

/// Dense components T(e_i, e_j, e_k, e_l) of a (0,4)-tensor. Immutable.
class CurvatureTensor {
 public:
  CurvatureTensor(GeometrySetup setup, std::vector<double> comps)
      : setup_(std::move(setup)), comps_(std::move(comps)) {
    const std::size_t n = static_cast<std::size_t>(setup_.n());
    if (comps_.size() != n * n * n * n) {
      throw DimensionError("curvature tensor has " + std::to_string(comps_.size()) +
                           " components, expected n^4 = " + std::to_string(n * n * n * n));
    }
  }

  static CurvatureTensor zero(const GeometrySetup& setup) {
    const std::size_t n = static_cast<std::size_t>(setup.n());
    return {setup, std::vector<double>(n * n * n * n, 0.0)};
  }

  template <class F>
  static CurvatureTensor from_function(const GeometrySetup& setup, F&& f) {
    const int n = setup.n();
    std::vector<double> c(static_cast<std::size_t>(n) * n * n * n);
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) c[idx++] = f(i, j, k, l);
    return {setup, std::move(c)};
  }

  const GeometrySetup& setup() const noexcept { return setup_; }
  int n() const noexcept { return setup_.n(); }
  const std::vector<double>& comps() const noexcept { return comps_; }

  double operator()(int i, int j, int k, int l) const { return comps_[offset(i, j, k, l)]; }

  CurvatureTensor with_component(int i, int j, int k, int l, double value) const {
    auto c = comps_;
    c.at(offset(i, j, k, l)) = value;
    return {setup_, std::move(c)};
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : comps_) m = std::max(m, std::abs(v));
    return m;
  }

  CurvatureTensor operator+(const CurvatureTensor& other) const {
    if (!setup_.same_shape(other.setup_)) throw DimensionError("adding tensors of different dimension");
    auto c = comps_;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += other.comps_[i];
    return {setup_, std::move(c)};
  }

 private:
  std::size_t offset(int i, int j, int k, int l) const {
    const std::size_t n = static_cast<std::size_t>(setup_.n());
    return ((static_cast<std::size_t>(i) * n + j) * n + k) * n + l;
  }

  GeometrySetup setup_;
  std::vector<double> comps_;
};

/// The shape operators A_alpha, (A_alpha)_ij = zeta_ij^alpha.
struct ShapeOperatorSet {
  GeometrySetup setup;
  std::vector<Eigen::MatrixXd> ops;

  Eigen::MatrixXd commutator(int alpha, int beta) const {
    return ops.at(alpha) * ops.at(beta) - ops.at(beta) * ops.at(alpha);
  }

  /// Largest Frobenius norm of [A_alpha, A_beta] over all pairs; zero means
  /// the operators commute (flat normal connection in a space form).
  double max_commutator_norm() const {
    double worst = 0.0;
    for (std::size_t a = 0; a < ops.size(); ++a)
      for (std::size_t b = a + 1; b < ops.size(); ++b)
        worst = std::max(worst, commutator(static_cast<int>(a), static_cast<int>(b)).norm());
    return worst;
  }
};

inline ShapeOperatorSet shape_operators(const BundleSymTensor& zeta) {
  return {zeta.setup(), zeta.slices()};
}

enum class SymmetryFamily {
  AntisymmetryFirstPair,  // T_ijkl = -T_jikl
  PairSymmetry,           // T_ijkl = T_klij
  FirstBianchi,           // T_ijkl + T_jkil + T_kijl = 0
  AntisymmetryLastPair,   // T_ijkl = -T_ijlk, implied by the first two
};

inline const char* to_string(SymmetryFamily f) {
  switch (f) {
    case SymmetryFamily::AntisymmetryFirstPair: return "antisymmetry_first_pair";
    case SymmetryFamily::PairSymmetry: return "pair_symmetry";
    case SymmetryFamily::FirstBianchi: return "first_bianchi";
    case SymmetryFamily::AntisymmetryLastPair: return "antisymmetry_last_pair";
  }
  return "unknown";
}

struct SymmetryViolation {
  SymmetryFamily family;
  double max_violation;
  std::array<int, 4> worst_index;  // 1-based (i, j, k, l)
};

/// Largest violation per family, whether or not it exceeds any tolerance.
inline std::array<SymmetryViolation, 4> symmetry_defects(const CurvatureTensor& t) {
  std::array<SymmetryViolation, 4> out{{
      {SymmetryFamily::AntisymmetryFirstPair, 0.0, {0, 0, 0, 0}},
      {SymmetryFamily::PairSymmetry, 0.0, {0, 0, 0, 0}},
      {SymmetryFamily::FirstBianchi, 0.0, {0, 0, 0, 0}},
      {SymmetryFamily::AntisymmetryLastPair, 0.0, {0, 0, 0, 0}},
  }};
  const int n = t.n();
  auto record = [&](int fam, double v, int i, int j, int k, int l) {
    if (v > out[fam].max_violation) {
      out[fam].max_violation = v;
      out[fam].worst_index = {i + 1, j + 1, k + 1, l + 1};
    }
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double v = t(i, j, k, l);
          record(0, std::abs(v + t(j, i, k, l)), i, j, k, l);
          record(1, std::abs(v - t(k, l, i, j)), i, j, k, l);
          record(2, std::abs(v + t(j, k, i, l) + t(k, i, j, l)), i, j, k, l);
          record(3, std::abs(v + t(i, j, l, k)), i, j, k, l);
        }
  return out;
}

/// Families whose largest violation exceeds tol. Empty means T is
/// curvature-like within tol.
inline std::vector<SymmetryViolation> validate_curvature_like(const CurvatureTensor& t, double tol) {
  std::vector<SymmetryViolation> out;
  for (const auto& v : symmetry_defects(t))
    if (!(v.max_violation <= tol)) out.push_back(v);
  return out;
}

/// Algebraic Gauss equation:
///   T_ijkl = sum_alpha (zeta_il zeta_jk - zeta_ik zeta_jl).
inline CurvatureTensor gauss_tensor(const BundleSymTensor& zeta) {
  const auto& s = zeta.slices();
  return CurvatureTensor::from_function(zeta.setup(), [&](int i, int j, int k, int l) {
    double v = 0.0;
    for (const auto& z : s) v += z(i, l) * z(j, k) - z(i, k) * z(j, l);
    return v;
  });
}

/// Max |T_ijkl - gauss_tensor(zeta)_ijkl|.
inline double gauss_defect(const CurvatureTensor& t, const BundleSymTensor& zeta) {
  if (t.n() != zeta.n()) {
    throw DimensionError("gauss_defect: tensor has n=" + std::to_string(t.n()) + ", zeta has n=" +
                         std::to_string(zeta.n()));
  }
  const auto g = gauss_tensor(zeta);
  double worst = 0.0;
  for (std::size_t i = 0; i < t.comps().size(); ++i)
    worst = std::max(worst, std::abs(t.comps()[i] - g.comps()[i]));
  return worst;
}

/// Curvature tensor of a real space form, in the same sign convention as
/// gauss_tensor: R_ijkl = c (delta_il delta_jk - delta_ik delta_jl), so
/// every sectional curvature equals c.
inline CurvatureTensor space_form_tensor(const GeometrySetup& setup, double c) {
  return CurvatureTensor::from_function(setup, [c](int i, int j, int k, int l) {
    return c * (double(i == l && j == k) - double(i == k && j == l));
  });
}

/// Change of tangent frame e'_i = sum_a Q_ai e_a (Q orthogonal):
/// zeta'^alpha = Q^T zeta^alpha Q.
inline BundleSymTensor rotate_tangent(const BundleSymTensor& zeta, const Eigen::MatrixXd& q) {
  if (q.rows() != zeta.n() || q.cols() != zeta.n()) throw DimensionError("rotate_tangent: Q has wrong shape");
  std::vector<Eigen::MatrixXd> s;
  s.reserve(zeta.q());
  for (const auto& z : zeta.slices()) {
    Eigen::MatrixXd r = q.transpose() * z * q;
    s.push_back(0.5 * (r + r.transpose()));
  }
  return {zeta.setup(), std::move(s)};
}

inline CurvatureTensor rotate_tangent(const CurvatureTensor& t, const Eigen::MatrixXd& q) {
  const int n = t.n();
  if (q.rows() != n || q.cols() != n) throw DimensionError("rotate_tangent: Q has wrong shape");
  // One index at a time: O(n^5).
  std::vector<double> cur = t.comps();
  std::vector<double> next(cur.size());
  const std::size_t N = static_cast<std::size_t>(n);
  const std::array<std::size_t, 4> stride{N * N * N, N * N, N, 1};
  for (int slot = 0; slot < 4; ++slot) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t idx = 0; idx < cur.size(); ++idx) {
      const std::size_t digit = (idx / stride[slot]) % N;
      const std::size_t base = idx - digit * stride[slot];
      const double v = cur[idx];
      if (v == 0.0) continue;
      for (std::size_t p = 0; p < N; ++p) next[base + p * stride[slot]] += q(static_cast<int>(digit), static_cast<int>(p)) * v;
    }
    std::swap(cur, next);
  }
  return {t.setup(), std::move(cur)};
}

/// Change of bundle frame: zeta'^beta = sum_alpha O_alpha,beta zeta^alpha.
inline BundleSymTensor rotate_bundle(const BundleSymTensor& zeta, const Eigen::MatrixXd& o) {
  const int q = zeta.q();
  if (o.rows() != q || o.cols() != q) throw DimensionError("rotate_bundle: O has wrong shape");
  std::vector<Eigen::MatrixXd> s(q, Eigen::MatrixXd::Zero(zeta.n(), zeta.n()));
  for (int b = 0; b < q; ++b)
    for (int a = 0; a < q; ++a) s[b] += o(a, b) * zeta.slice(a);
  return {zeta.setup(), std::move(s)};
}

/// Orthogonal matrix whose column i is e_{perm[i]}. After rotate_tangent by
/// it, new axis i is old axis perm[i].
inline Eigen::MatrixXd permutation_matrix(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) p(perm[i], i) = 1.0;
  return p;
}

}  // namespace casorati
