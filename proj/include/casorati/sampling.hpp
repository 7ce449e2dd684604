#pragma once

// Reproducible random and quasi-random numbers. Uniform variates are
// derived from raw 64-bit mt19937_64 output by bit manipulation so that
// generated tensors are bit-identical across standard libraries.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace casorati {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Seed derived from (seed, stream) so independent streams do not
  /// depend on evaluation order.
  static Rng stream(std::uint64_t seed, std::uint64_t stream) { return Rng(mix(seed, stream)); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  int uniform_int(int lo, int hi) {  // inclusive
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(engine_() % span);
  }

  /// Standard normal via Box-Muller.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double rad = std::sqrt(-2.0 * std::log(u1));
    spare_ = rad * std::sin(2.0 * std::numbers::pi * u2);
    has_spare_ = true;
    return rad * std::cos(2.0 * std::numbers::pi * u2);
  }

  Eigen::VectorXd unit_vector(int n) {
    Eigen::VectorXd v(n);
    do {
      for (int i = 0; i < n; ++i) v[i] = normal();
    } while (v.norm() < 1e-8);
    return v.normalized();
  }

  /// Haar-distributed orthogonal matrix (QR of a Gaussian matrix with the
  /// sign of R's diagonal folded into Q).
  Eigen::MatrixXd orthogonal(int n) {
    Eigen::MatrixXd g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = normal();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j)
      if (r(j, j) < 0) q.col(j) *= -1.0;
    return q;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    // splitmix64 finalizer over a combined word
    std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

namespace detail {

inline double radical_inverse(std::uint64_t index, int base) {
  double inv = 1.0 / base, f = inv, r = 0.0;
  while (index > 0) {
    r += f * static_cast<double>(index % base);
    index /= base;
    f *= inv;
  }
  return r;
}

inline constexpr std::array<int, 16> kHaltonPrimes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

}  // namespace detail

/// Deterministic quasi-uniform points on the unit sphere S^{n-1}, one per
/// column:
///   n = 2   equally spaced angles with a seeded offset;
///   n = 3   spherical Fibonacci lattice under a seeded rotation;
///   n >= 4  shifted Halton points mapped to Gaussians by Box-Muller,
///           normalized, under a seeded rotation.
inline Eigen::MatrixXd quasi_uniform_sphere(int n, int count, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd pts(n, count);
  if (n == 2) {
    const double offset = rng.uniform01();
    for (int k = 0; k < count; ++k) {
      const double th = 2.0 * std::numbers::pi * (k + offset) / count;
      pts(0, k) = std::cos(th);
      pts(1, k) = std::sin(th);
    }
    return pts;
  }
  if (n == 3) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < count; ++k) {
      const double z = 1.0 - (2.0 * k + 1.0) / count;
      const double rad = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = golden * k;
      pts(0, k) = rad * std::cos(phi);
      pts(1, k) = rad * std::sin(phi);
      pts(2, k) = z;
    }
  } else {
    const int dims = 2 * ((n + 1) / 2);
    std::array<double, 16> shift{};
    for (int d = 0; d < dims; ++d) shift[d] = rng.uniform01();
    Eigen::VectorXd g(dims);
    for (int k = 0; k < count; ++k) {
      for (int d = 0; d < dims; d += 2) {
        double u1 = detail::radical_inverse(static_cast<std::uint64_t>(k) + 1, detail::kHaltonPrimes[d]) + shift[d];
        double u2 = detail::radical_inverse(static_cast<std::uint64_t>(k) + 1, detail::kHaltonPrimes[d + 1]) + shift[d + 1];
        u1 -= std::floor(u1);
        u2 -= std::floor(u2);
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        const double rad = std::sqrt(-2.0 * std::log(u1));
        g[d] = rad * std::cos(2.0 * std::numbers::pi * u2);
        g[d + 1] = rad * std::sin(2.0 * std::numbers::pi * u2);
      }
      pts.col(k) = g.head(n).normalized();
    }
  }
  return rng.orthogonal(n) * pts;
}

}  // namespace casorati
