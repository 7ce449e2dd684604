#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "casorati/frame_core.hpp"
#include "casorati/sampling.hpp"

namespace casorati::testing {

inline BundleSymTensor diag_tensor(std::vector<double> d, Ambient ambient = {}) {
  const int n = static_cast<int>(d.size());
  Eigen::VectorXd v = Eigen::Map<Eigen::VectorXd>(d.data(), n);
  return {GeometrySetup(n, 1, ambient), {Eigen::MatrixXd(v.asDiagonal())}};
}

inline BundleSymTensor identity_tensor(int n, double a = 1.0) {
  return {GeometrySetup(n, 1), {a * Eigen::MatrixXd::Identity(n, n)}};
}

inline BundleSymTensor random_tensor(Rng& rng, int n, int q, double scale = 1.0, Ambient ambient = {}) {
  std::vector<Eigen::MatrixXd> s;
  for (int a = 0; a < q; ++a) {
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) m(i, j) = m(j, i) = rng.uniform(-scale, scale);
    s.push_back(m);
  }
  return {GeometrySetup(n, q, ambient), s};
}

inline Eigen::VectorXd e(int n, int i) { return Eigen::VectorXd::Unit(n, i); }

// Independent brute-force restriction: sum over alpha and i, j < k of
// (v_i^T zeta v_j)^2 / k, with explicit loops.
inline double restricted_casorati_loops(const BundleSymTensor& z, const Eigen::MatrixXd& v) {
  const int n = z.n();
  const int k = static_cast<int>(v.cols());
  double s = 0.0;
  for (int a = 0; a < z.q(); ++a)
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        double c = 0.0;
        for (int p = 0; p < n; ++p)
          for (int r = 0; r < n; ++r) c += v(p, i) * v(r, j) * z(a, p, r);
        s += c * c;
      }
  return s / k;
}

}  // namespace casorati::testing
