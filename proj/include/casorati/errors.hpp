#pragma once

#include <stdexcept>
#include <string>

namespace casorati {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Component arrays whose shape disagrees with the declared dimensions.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of an operation (forbidden r, non-unit
/// vector, non-orthonormal basis, index out of range, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A bundle tensor slice that is not symmetric within tolerance.
/// Indices are 1-based, matching reports.
class AsymmetryError : public Error {
 public:
  AsymmetryError(int alpha, int i, int j, double defect)
      : Error("asymmetric zeta component (alpha=" + std::to_string(alpha) +
              ", i=" + std::to_string(i) + ", j=" + std::to_string(j) +
              "): |z_ij - z_ji| = " + std::to_string(defect)),
        alpha_(alpha),
        i_(i),
        j_(j),
        defect_(defect) {}

  int alpha() const noexcept { return alpha_; }
  int i() const noexcept { return i_; }
  int j() const noexcept { return j_; }
  double defect() const noexcept { return defect_; }

 private:
  int alpha_;
  int i_;
  int j_;
  double defect_;
};

}  // namespace casorati
