#pragma once

// Normalized delta-Casorati curvatures: linear combinations of C and the
// infimum/supremum of C(Pi_{n-1}) over tangent hyperplanes.

#include <cmath>
#include <optional>
#include <string>

#include "casorati/errors.hpp"
#include "casorati/extremizer.hpp"
#include "casorati/frame_core.hpp"
#include "casorati/invariants.hpp"

namespace casorati {

enum class DeltaVariant {
  DeltaR,               // delta(r; n-1),   0 < r < n(n-1)
  DeltaHatR,            // delta^(r; n-1),  r > n(n-1)
  DeltaNMinus1,         // delta(n-1)
  DeltaHatNMinus1,      // delta^(n-1)
  DeltaPrimeNMinus1,    // delta'(n-1), superseded coefficient
};

inline const char* to_string(DeltaVariant v) {
  switch (v) {
    case DeltaVariant::DeltaR: return "delta_r";
    case DeltaVariant::DeltaHatR: return "delta_hat_r";
    case DeltaVariant::DeltaNMinus1: return "delta_n_minus_1";
    case DeltaVariant::DeltaHatNMinus1: return "delta_hat_n_minus_1";
    case DeltaVariant::DeltaPrimeNMinus1: return "delta_prime_n_minus_1";
  }
  return "unknown";
}

struct DeltaFamily {
  DeltaVariant variant = DeltaVariant::DeltaR;
  std::optional<double> r;  // only for the r-families
  /// a(r) for the r-families; for the fixed variants the coefficient in
  /// front of the inf/sup term.
  double a_of_r = 0.0;
  double delta = 0.0;
  bool legacy = false;        // delta'(n-1) only
  bool n2_extension = false;  // n = 2: hyperplanes are lines
};

/// Throws DomainError unless r > 0 and |r - n(n-1)| > 1e-9 n(n-1).
inline void check_r(int n, double r) {
  const double crit = double(n) * (n - 1);
  if (!std::isfinite(r) || !(r > 0.0)) throw DomainError("r must be a positive real, got " + std::to_string(r));
  if (!(std::abs(r - crit) > 1e-9 * crit)) {
    throw DomainError("r = " + std::to_string(r) + " is the excluded value n(n-1) = " + std::to_string(crit));
  }
}

/// a(r) = (n-1)(n+r)(n^2-n-r) / (n r).
inline double a_coeff(int n, double r) {
  check_r(n, r);
  return (n - 1.0) * (n + r) * (double(n) * n - n - r) / (n * r);
}

/// delta(r; n-1) = r C + a(r) inf C(Pi) for r < n(n-1),
/// delta^(r; n-1) = r C + a(r) sup C(Pi) for r > n(n-1).
inline DeltaFamily delta_r(const BundleSymTensor& zeta, double r, const HyperplaneExtrema& ext) {
  const int n = zeta.n();
  const double a = a_coeff(n, r);
  const bool below = r < double(n) * (n - 1);
  DeltaFamily d;
  d.variant = below ? DeltaVariant::DeltaR : DeltaVariant::DeltaHatR;
  d.r = r;
  d.a_of_r = a;
  d.delta = r * casorati(zeta) + a * (below ? ext.inf.value : ext.sup.value);
  d.n2_extension = n == 2;
  return d;
}

inline DeltaFamily delta_r(const BundleSymTensor& zeta, double r, const ExtremizerConfig& cfg = {}) {
  check_r(zeta.n(), r);
  return delta_r(zeta, r, extremize_both(zeta, cfg));
}

/// delta(n-1) = C/2 + (n+1)/(2n) inf C(Pi).
inline DeltaFamily delta_n_minus_1(const BundleSymTensor& zeta, const HyperplaneExtrema& ext) {
  const int n = zeta.n();
  DeltaFamily d;
  d.variant = DeltaVariant::DeltaNMinus1;
  d.a_of_r = (n + 1.0) / (2.0 * n);
  d.delta = 0.5 * casorati(zeta) + d.a_of_r * ext.inf.value;
  d.n2_extension = n == 2;
  return d;
}

/// delta^(n-1) = 2C - (2n-1)/(2n) sup C(Pi).
inline DeltaFamily delta_hat_n_minus_1(const BundleSymTensor& zeta, const HyperplaneExtrema& ext) {
  const int n = zeta.n();
  DeltaFamily d;
  d.variant = DeltaVariant::DeltaHatNMinus1;
  d.a_of_r = -(2.0 * n - 1.0) / (2.0 * n);
  d.delta = 2.0 * casorati(zeta) + d.a_of_r * ext.sup.value;
  d.n2_extension = n == 2;
  return d;
}

/// delta'(n-1) = C/2 + (n+1)/(2n(n-1)) inf C(Pi). Reported as legacy only;
/// the inequality verifier never uses it.
inline DeltaFamily delta_prime_n_minus_1(const BundleSymTensor& zeta, const HyperplaneExtrema& ext) {
  const int n = zeta.n();
  DeltaFamily d;
  d.variant = DeltaVariant::DeltaPrimeNMinus1;
  d.a_of_r = (n + 1.0) / (2.0 * n * (n - 1.0));
  d.delta = 0.5 * casorati(zeta) + d.a_of_r * ext.inf.value;
  d.legacy = true;
  d.n2_extension = n == 2;
  return d;
}

inline DeltaFamily delta_n_minus_1(const BundleSymTensor& zeta, const ExtremizerConfig& cfg = {}) {
  return delta_n_minus_1(zeta, extremize_both(zeta, cfg));
}
inline DeltaFamily delta_hat_n_minus_1(const BundleSymTensor& zeta, const ExtremizerConfig& cfg = {}) {
  return delta_hat_n_minus_1(zeta, extremize_both(zeta, cfg));
}
inline DeltaFamily delta_prime_n_minus_1(const BundleSymTensor& zeta, const ExtremizerConfig& cfg = {}) {
  return delta_prime_n_minus_1(zeta, extremize_both(zeta, cfg));
}

/// max(|delta(n-1) - delta(n(n-1)/2; n-1)/(n(n-1))|,
///     |delta^(n-1) - delta^(2n(n-1); n-1)/(n(n-1))|).
inline double scaling_identities_defect(const BundleSymTensor& zeta, const HyperplaneExtrema& ext) {
  const int n = zeta.n();
  const double nn1 = double(n) * (n - 1);
  const double d1 = std::abs(delta_n_minus_1(zeta, ext).delta - delta_r(zeta, nn1 / 2.0, ext).delta / nn1);
  const double d2 = std::abs(delta_hat_n_minus_1(zeta, ext).delta - delta_r(zeta, 2.0 * nn1, ext).delta / nn1);
  return std::max(d1, d2);
}

inline double scaling_identities_defect(const BundleSymTensor& zeta, const ExtremizerConfig& cfg = {}) {
  return scaling_identities_defect(zeta, extremize_both(zeta, cfg));
}

}  // namespace casorati
