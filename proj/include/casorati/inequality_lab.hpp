#pragma once

// Verification of the Casorati inequalities
//
//   (tau_T)_Nor <= delta(r; n-1) / (n(n-1))     0 < r < n(n-1)
//   (tau_T)_Nor <= delta^(r; n-1) / (n(n-1))    r > n(n-1)
//   (tau_T)_Nor <= delta(n-1),   (tau_T)_Nor <= delta^(n-1)
//
// for T = gauss_tensor(zeta), their submanifold forms (both sides shifted by
// the normalized ambient scalar curvature), and classification of the
// equality configurations.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "casorati/delta_casorati.hpp"
#include "casorati/errors.hpp"
#include "casorati/extremizer.hpp"
#include "casorati/frame_core.hpp"
#include "casorati/invariants.hpp"
#include "casorati/quadratic_lemma.hpp"

namespace casorati {

/// Which right-hand side to test.
struct DeltaTarget {
  enum class Kind { ByR, DeltaNMinus1, DeltaHatNMinus1 };
  Kind kind = Kind::ByR;
  double r = 0.0;

  static DeltaTarget by_r(double r) { return {Kind::ByR, r}; }
  static DeltaTarget delta() { return {Kind::DeltaNMinus1, 0.0}; }
  static DeltaTarget delta_hat() { return {Kind::DeltaHatNMinus1, 0.0}; }

  /// The r whose equality conditions the target shares: r itself,
  /// n(n-1)/2 for delta(n-1) and 2n(n-1) for delta^(n-1).
  double equivalent_r(int n) const {
    const double nn1 = double(n) * (n - 1);
    switch (kind) {
      case Kind::ByR: return r;
      case Kind::DeltaNMinus1: return nn1 / 2.0;
      case Kind::DeltaHatNMinus1: return 2.0 * nn1;
    }
    return r;
  }
};

struct VerifyOptions {
  /// holds  <=>  slack >= -holds_rel_tol (1 + |rhs|)
  double holds_rel_tol = 1e-9;
  /// equality  <=>  |slack| <= equality_tol (1 + max|zeta|^2)
  double equality_tol = 1e-8;
};

struct InequalityVerdict {
  DeltaVariant variant = DeltaVariant::DeltaR;
  std::optional<double> r_used;  // empty for the fixed-coefficient variants
  bool submanifold = false;
  double ambient_shift = 0.0;    // tau~_Nor(T_pM) added to both sides
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;            // rhs - lhs
  bool holds = false;
  bool equality = false;
};

inline double default_equality_tol(const BundleSymTensor& zeta, double base = 1e-8) {
  const double m = zeta.max_abs();
  return base * (1.0 + m * m);
}

/// (tau_T)_Nor(p) for T = gauss_tensor(zeta).
inline double normalized_gauss_scalar(const BundleSymTensor& zeta) {
  return normalized_scalar(gauss_tensor(zeta), SubspaceBasis::full(zeta.setup()));
}

namespace detail {

inline InequalityVerdict make_verdict(const BundleSymTensor& zeta, const DeltaFamily& d, double lhs, double rhs,
                                      double shift, bool submanifold, const VerifyOptions& opt) {
  InequalityVerdict v;
  v.variant = d.variant;
  v.r_used = d.r;
  v.submanifold = submanifold;
  v.ambient_shift = shift;
  v.lhs = lhs + shift;
  v.rhs = rhs + shift;
  v.slack = v.rhs - v.lhs;
  v.holds = v.slack >= -opt.holds_rel_tol * (1.0 + std::abs(rhs));
  v.equality = std::abs(v.slack) <= default_equality_tol(zeta, opt.equality_tol);
  return v;
}

inline std::pair<DeltaFamily, double> target_rhs(const BundleSymTensor& zeta, const DeltaTarget& target,
                                                 const HyperplaneExtrema& ext) {
  const double nn1 = double(zeta.n()) * (zeta.n() - 1);
  switch (target.kind) {
    case DeltaTarget::Kind::ByR: {
      auto d = delta_r(zeta, target.r, ext);
      return {d, d.delta / nn1};
    }
    case DeltaTarget::Kind::DeltaNMinus1: {
      auto d = delta_n_minus_1(zeta, ext);
      return {d, d.delta};
    }
    case DeltaTarget::Kind::DeltaHatNMinus1: {
      auto d = delta_hat_n_minus_1(zeta, ext);
      return {d, d.delta};
    }
  }
  throw DomainError("unknown delta target");
}

}  // namespace detail

/// Algebraic inequality for delta(r; n-1) or delta^(r; n-1).
inline InequalityVerdict verify_algebraic(const BundleSymTensor& zeta, double r, const HyperplaneExtrema& ext,
                                          const VerifyOptions& opt = {}) {
  check_r(zeta.n(), r);
  const auto [d, rhs] = detail::target_rhs(zeta, DeltaTarget::by_r(r), ext);
  return detail::make_verdict(zeta, d, normalized_gauss_scalar(zeta), rhs, 0.0, false, opt);
}

inline InequalityVerdict verify_algebraic(const BundleSymTensor& zeta, double r, const ExtremizerConfig& cfg = {},
                                          const VerifyOptions& opt = {}) {
  check_r(zeta.n(), r);
  return verify_algebraic(zeta, r, extremize_both(zeta, cfg), opt);
}

/// Algebraic inequality for delta(n-1) or delta^(n-1).
inline InequalityVerdict verify_fixed(const BundleSymTensor& zeta, DeltaVariant variant, const HyperplaneExtrema& ext,
                                      const VerifyOptions& opt = {}) {
  DeltaTarget t;
  if (variant == DeltaVariant::DeltaNMinus1) {
    t = DeltaTarget::delta();
  } else if (variant == DeltaVariant::DeltaHatNMinus1) {
    t = DeltaTarget::delta_hat();
  } else {
    throw DomainError(std::string("verify_fixed does not accept variant ") + to_string(variant));
  }
  const auto [d, rhs] = detail::target_rhs(zeta, t, ext);
  return detail::make_verdict(zeta, d, normalized_gauss_scalar(zeta), rhs, 0.0, false, opt);
}

inline InequalityVerdict verify_fixed(const BundleSymTensor& zeta, DeltaVariant variant,
                                      const ExtremizerConfig& cfg = {}, const VerifyOptions& opt = {}) {
  return verify_fixed(zeta, variant, extremize_both(zeta, cfg), opt);
}

inline InequalityVerdict verify(const BundleSymTensor& zeta, const DeltaTarget& target, const HyperplaneExtrema& ext,
                                const VerifyOptions& opt = {}) {
  switch (target.kind) {
    case DeltaTarget::Kind::ByR: return verify_algebraic(zeta, target.r, ext, opt);
    case DeltaTarget::Kind::DeltaNMinus1: return verify_fixed(zeta, DeltaVariant::DeltaNMinus1, ext, opt);
    case DeltaTarget::Kind::DeltaHatNMinus1: return verify_fixed(zeta, DeltaVariant::DeltaHatNMinus1, ext, opt);
  }
  throw DomainError("unknown delta target");
}

/// Submanifold form: tau_Nor(p) = (tau_T)_Nor + tau~_Nor on the left and
/// the normalized delta plus tau~_Nor on the right. Needs an ambient.
inline InequalityVerdict verify_submanifold(const BundleSymTensor& zeta, const DeltaTarget& target,
                                            const HyperplaneExtrema& ext, const VerifyOptions& opt = {}) {
  const auto shift = zeta.setup().tau_tilde_nor();
  if (!shift) throw DomainError("submanifold verdict requested but the input has no ambient");
  if (target.kind == DeltaTarget::Kind::ByR) check_r(zeta.n(), target.r);
  const auto [d, rhs] = detail::target_rhs(zeta, target, ext);
  return detail::make_verdict(zeta, d, normalized_gauss_scalar(zeta), rhs, *shift, true, opt);
}

inline InequalityVerdict verify_submanifold(const BundleSymTensor& zeta, const DeltaTarget& target,
                                            const ExtremizerConfig& cfg = {}, const VerifyOptions& opt = {}) {
  if (!zeta.setup().has_ambient()) throw DomainError("submanifold verdict requested but the input has no ambient");
  return verify_submanifold(zeta, target, extremize_both(zeta, cfg), opt);
}

// ---------------------------------------------------------------------------
// Equality configurations

struct EqualityClassification {
  double r = 0.0;
  double target_ratio = 0.0;  // r / (n(n-1))
  /// Frame in which the configuration was found: "coordinate" or
  /// "eigenbasis" (of sum_alpha (zeta^alpha)^2).
  std::string frame = "coordinate";
  int distinguished_axis = 1;  // 1-based, in `frame`
  Eigen::VectorXd distinguished_direction;
  double offdiag_max = 0.0;
  /// Per slice: max_{i != axis} |zeta_ii - ratio * zeta_axis,axis|.
  std::vector<double> ratio_defects;
  /// Per slice: max_{i != axis} |zeta_ii - zeta_i0,i0| (eigenvalue of
  /// multiplicity n-1 around the distinguished direction).
  std::vector<double> multiplicity_defects;
  double commutator_max = 0.0;
  /// Common eigenvalue a of the dominant slice after a bundle rotation,
  /// i.e. the principal shape operator is diag(a, ..., a, a / ratio).
  double a = 0.0;
  /// Norm of the remaining slices after that rotation.
  double secondary_slices_norm = 0.0;
  double tol = 0.0;
  bool is_equality_configuration = false;
  bool invariantly_quasi_umbilical = false;
  bool flat_normal_connection = false;

  double max_ratio_defect() const {
    return ratio_defects.empty() ? 0.0 : *std::max_element(ratio_defects.begin(), ratio_defects.end());
  }
};

inline EqualityClassification classify_equality(const BundleSymTensor& zeta, double r, double tol) {
  const int n = zeta.n();
  const int q = zeta.q();
  check_r(n, r);
  const double ratio = r / (double(n) * (n - 1));

  Eigen::MatrixXd squares = Eigen::MatrixXd::Zero(n, n);
  for (const auto& z : zeta.slices()) squares += z * z;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(squares);

  struct Frame {
    const char* name;
    Eigen::MatrixXd basis;
  };
  const Frame frames[] = {{"coordinate", Eigen::MatrixXd::Identity(n, n)}, {"eigenbasis", es.eigenvectors()}};

  EqualityClassification best;
  double best_score = std::numeric_limits<double>::infinity();
  for (const auto& fr : frames) {
    const auto rotated = rotate_tangent(zeta, fr.basis);
    double off = 0.0;
    for (const auto& z : rotated.slices())
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j) off = std::max(off, std::abs(z(i, j)));
    for (int axis = 0; axis < n; ++axis) {
      std::vector<double> ratio_def(q, 0.0), mult_def(q, 0.0);
      const int ref = axis == 0 ? 1 : 0;
      for (int a = 0; a < q; ++a) {
        const auto& z = rotated.slice(a);
        for (int i = 0; i < n; ++i) {
          if (i == axis) continue;
          ratio_def[a] = std::max(ratio_def[a], std::abs(z(i, i) - ratio * z(axis, axis)));
          mult_def[a] = std::max(mult_def[a], std::abs(z(i, i) - z(ref, ref)));
        }
      }
      const double score = std::max(off, *std::max_element(ratio_def.begin(), ratio_def.end()));
      if (score < best_score) {
        best_score = score;
        best.frame = fr.name;
        best.distinguished_axis = axis + 1;
        best.distinguished_direction = fr.basis.col(axis);
        best.offdiag_max = off;
        best.ratio_defects = ratio_def;
        best.multiplicity_defects = mult_def;

        // Dominant slice after an orthogonal bundle rotation: top
        // eigenvector of the Gram matrix <zeta^alpha, zeta^beta>_F.
        Eigen::MatrixXd gram(q, q);
        for (int x = 0; x < q; ++x)
          for (int y = 0; y < q; ++y) gram(x, y) = (rotated.slice(x).array() * rotated.slice(y).array()).sum();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ges(gram);
        const Eigen::VectorXd w = ges.eigenvectors().col(q - 1);
        Eigen::MatrixXd principal = Eigen::MatrixXd::Zero(n, n);
        for (int x = 0; x < q; ++x) principal += w[x] * rotated.slice(x);
        if (principal.trace() < 0) principal = -principal;
        double sum = 0.0;
        for (int i = 0; i < n; ++i)
          if (i != axis) sum += principal(i, i);
        best.a = sum / (n - 1);
        double rest = 0.0;
        for (int x = 0; x < q - 1; ++x) rest += std::max(0.0, ges.eigenvalues()[x]);
        best.secondary_slices_norm = std::sqrt(rest);
      }
    }
  }

  best.r = r;
  best.target_ratio = ratio;
  best.tol = tol;
  best.commutator_max = shape_operators(zeta).max_commutator_norm();
  const double mult = best.multiplicity_defects.empty()
                          ? 0.0
                          : *std::max_element(best.multiplicity_defects.begin(), best.multiplicity_defects.end());
  best.is_equality_configuration = best.offdiag_max <= tol && best.max_ratio_defect() <= tol;
  best.invariantly_quasi_umbilical = best.offdiag_max <= tol && mult <= tol;
  best.flat_normal_connection = best.commutator_max <= tol;
  return best;
}

inline EqualityClassification classify_equality(const BundleSymTensor& zeta, double r) {
  return classify_equality(zeta, r, default_equality_tol(zeta));
}

inline EqualityClassification classify_equality(const BundleSymTensor& zeta, const DeltaTarget& target, double tol) {
  return classify_equality(zeta, target.equivalent_r(zeta.n()), tol);
}

// ---------------------------------------------------------------------------
// Quantities from the proof of the inequalities

/// P = r C + a(r) C(Pi) - 2 tau_T for a hyperplane Pi; nonnegative for
/// every hyperplane.
inline double proof_quantity(const BundleSymTensor& zeta, double r, const SubspaceBasis& hyperplane) {
  const double tau = k_scalar(gauss_tensor(zeta), SubspaceBasis::full(zeta.setup()));
  return r * casorati(zeta) + a_coeff(zeta.n(), r) * casorati_subspace(zeta, hyperplane) - 2.0 * tau;
}

/// Per-slice form f_alpha(x) = (r/n + a(r)/(n-1)) sum_{i<n} x_i^2
///   + (r/n) x_n^2 - 2 sum_{i<j} x_i x_j on the diagonal entries x.
inline double slice_form(int n, double r, const Eigen::VectorXd& diagonal) {
  const auto [a, b] = theorem_coefficients(n, r);
  return f_eval(QuadraticProblem(n, a, b), diagonal);
}

/// Critical diagonal with trace k:
/// x_1 = ... = x_{n-1} = r k / ((n-1)(n+r)), x_n = n k / (n+r).
inline Eigen::VectorXd slice_form_critical_point(int n, double r, double k) {
  check_r(n, r);
  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, r * k / ((n - 1.0) * (n + r)));
  x[n - 1] = n * k / (n + r);
  return x;
}

}  // namespace casorati
