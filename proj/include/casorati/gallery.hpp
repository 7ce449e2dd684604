#pragma once

// Distinguished configurations: totally geodesic, umbilical, the equality
// cases of each delta variant, random tensors, and hypersurfaces given by
// principal curvatures. The distinguished eigendirection is always the
// last axis.

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "casorati/delta_casorati.hpp"
#include "casorati/errors.hpp"
#include "casorati/frame_core.hpp"
#include "casorati/sampling.hpp"

namespace casorati::gallery {

struct Zero {};
struct Umbilical {
  double a = 1.0;
};
/// First slice diag(a, ..., a, n(n-1) a / r), other slices zero.
struct EqualityR {
  double a = 1.0;
  double r = 1.0;
};
/// diag(a, ..., a, 2a): equality case of delta(n-1).
struct EqualityDelta {
  double a = 1.0;
};
/// diag(a, ..., a, a/2): equality case of delta^(n-1).
struct EqualityDeltaHat {
  double a = 1.0;
};
/// Symmetric slices with entries uniform in [-scale, scale].
struct Random {
  std::uint64_t seed = 0;
  double scale = 1.0;
};

using Kind = std::variant<Zero, Umbilical, EqualityR, EqualityDelta, EqualityDeltaHat, Random>;

struct GallerySpec {
  Kind kind;
  GeometrySetup setup;
};

inline const char* kind_name(const Kind& k) {
  struct {
    const char* operator()(const Zero&) const { return "zero"; }
    const char* operator()(const Umbilical&) const { return "umbilical"; }
    const char* operator()(const EqualityR&) const { return "equality_r"; }
    const char* operator()(const EqualityDelta&) const { return "equality_delta"; }
    const char* operator()(const EqualityDeltaHat&) const { return "equality_delta_hat"; }
    const char* operator()(const Random&) const { return "random"; }
  } visitor;
  return std::visit(visitor, k);
}

namespace detail {

inline BundleSymTensor first_slice(const GeometrySetup& setup, const Eigen::MatrixXd& m) {
  std::vector<Eigen::MatrixXd> s(setup.q(), Eigen::MatrixXd::Zero(setup.n(), setup.n()));
  s[0] = m;
  return {setup, std::move(s)};
}

inline Eigen::MatrixXd distinguished_diag(int n, double a, double last) {
  Eigen::VectorXd d = Eigen::VectorXd::Constant(n, a);
  d[n - 1] = last;
  return d.asDiagonal();
}

}  // namespace detail

inline BundleSymTensor generate(const GallerySpec& spec) {
  const auto& setup = spec.setup;
  const int n = setup.n();
  const double nn1 = double(n) * (n - 1);
  if (std::holds_alternative<Zero>(spec.kind)) return BundleSymTensor::zero(setup);
  if (const auto* u = std::get_if<Umbilical>(&spec.kind)) {
    return detail::first_slice(setup, u->a * Eigen::MatrixXd::Identity(n, n));
  }
  if (const auto* e = std::get_if<EqualityR>(&spec.kind)) {
    check_r(n, e->r);
    return detail::first_slice(setup, detail::distinguished_diag(n, e->a, nn1 * e->a / e->r));
  }
  if (const auto* e = std::get_if<EqualityDelta>(&spec.kind)) {
    return detail::first_slice(setup, detail::distinguished_diag(n, e->a, 2.0 * e->a));
  }
  if (const auto* e = std::get_if<EqualityDeltaHat>(&spec.kind)) {
    return detail::first_slice(setup, detail::distinguished_diag(n, e->a, 0.5 * e->a));
  }
  const auto& rnd = std::get<Random>(spec.kind);
  Rng rng(rnd.seed);
  std::vector<Eigen::MatrixXd> s;
  s.reserve(setup.q());
  for (int a = 0; a < setup.q(); ++a) {
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) m(i, j) = m(j, i) = rng.uniform(-rnd.scale, rnd.scale);
    s.push_back(std::move(m));
  }
  return {setup, std::move(s)};
}

struct Hypersurface {
  BundleSymTensor zeta;
  double expected_casorati;
  /// tau_Nor from the mean-curvature formula; present when an ambient
  /// curvature is given.
  std::optional<double> expected_tau_nor;
};

/// q = 1, zeta = diag(kappa). With ambient curvature c the setup carries
/// SpaceForm(c).
inline Hypersurface hypersurface_from_principal_curvatures(const Eigen::VectorXd& kappa,
                                                           std::optional<double> c = std::nullopt) {
  const int n = static_cast<int>(kappa.size());
  GeometrySetup setup = c ? GeometrySetup(n, 1, SpaceForm{*c}) : GeometrySetup(n, 1);
  Hypersurface h{BundleSymTensor(setup, {Eigen::MatrixXd(kappa.asDiagonal())}), kappa.squaredNorm() / n,
                 std::nullopt};
  if (c) {
    const double mean_sq = kappa.sum() * kappa.sum() / (double(n) * n);
    h.expected_tau_nor = *c + n / (n - 1.0) * mean_sq - kappa.squaredNorm() / (double(n) * (n - 1));
  }
  return h;
}

}  // namespace casorati::gallery
