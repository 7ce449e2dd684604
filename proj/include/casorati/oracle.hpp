#pragma once

// Brute-force bounds on the hyperplane extrema: evaluate C(u^perp) on a
// deterministic quasi-uniform set of unit normals. The sampled optimum is
// only accurate to the sample spacing (about 1e-2 at n = 4 with 1e5
// points), so a refined variant follows the best samples with a compass
// search that evaluates C(Pi) by explicit restriction of zeta to a
// completed basis, not through the closed form or its gradient.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <tuple>
#include <utility>
#include <vector>

#include "casorati/frame_core.hpp"
#include "casorati/hyperplane.hpp"
#include "casorati/invariants.hpp"
#include "casorati/sampling.hpp"

namespace casorati {

struct OracleExtrema {
  double min_value = std::numeric_limits<double>::infinity();
  double max_value = -std::numeric_limits<double>::infinity();
  Eigen::VectorXd argmin;
  Eigen::VectorXd argmax;
};

/// Scans every column of `normals` (unit vectors).
inline OracleExtrema oracle_scan(const HyperplaneObjective& obj, const Eigen::MatrixXd& normals) {
  OracleExtrema out;
  int imin = 0, imax = 0;
  for (int k = 0; k < normals.cols(); ++k) {
    const double v = obj.value(normals.col(k).data());
    if (v < out.min_value) {
      out.min_value = v;
      imin = k;
    }
    if (v > out.max_value) {
      out.max_value = v;
      imax = k;
    }
  }
  out.argmin = normals.col(imin);
  out.argmax = normals.col(imax);
  return out;
}

/// Best sampled value of C(u^perp) over `samples` quasi-uniform normals.
inline double oracle_extremize(const BundleSymTensor& zeta, ExtremumMode mode, int samples, std::uint64_t seed) {
  if (samples < 1) throw DomainError("oracle_extremize needs at least one sample");
  const auto pts = quasi_uniform_sphere(zeta.n(), samples, seed);
  const auto ext = oracle_scan(HyperplaneObjective(zeta), pts);
  return mode == ExtremumMode::Inf ? ext.min_value : ext.max_value;
}

struct RefinedOracleOptions {
  int samples = 100000;
  std::uint64_t seed = 0;
  /// Best samples (pairwise separated) that each seed a compass search.
  int seeds = 8;
  double initial_step = 0.1;
  double final_step = 1e-9;
  int max_evaluations = 200000;
};

namespace detail {

// C(u^perp) through an explicit orthonormal basis of u^perp.
inline double restricted_value(const BundleSymTensor& zeta, const Eigen::VectorXd& u) {
  return casorati_subspace(zeta, SubspaceBasis::orthogonal_complement(zeta.setup(), u.normalized()));
}

// Compass search on the sphere for sign * C, polling +-h along an
// orthonormal basis of the current tangent space.
inline double compass_search(const BundleSymTensor& zeta, Eigen::VectorXd u, double sign,
                             const RefinedOracleOptions& opt) {
  u.normalize();
  double f = sign * restricted_value(zeta, u);
  double h = opt.initial_step;
  int evals = 0;
  while (h > opt.final_step && evals < opt.max_evaluations) {
    const Eigen::MatrixXd dirs = SubspaceBasis::orthogonal_complement(zeta.setup(), u).vectors();
    bool moved = false;
    for (int d = 0; d < dirs.cols() && !moved; ++d) {
      for (double s : {1.0, -1.0}) {
        const Eigen::VectorXd trial = (u + s * h * dirs.col(d)).normalized();
        const double ft = sign * restricted_value(zeta, trial);
        ++evals;
        if (ft < f) {
          u = trial;
          f = ft;
          moved = true;
          break;
        }
      }
    }
    if (!moved) h *= 0.5;
  }
  return sign * f;
}

}  // namespace detail

struct RefinedOracleExtrema {
  double sampled_min = 0.0;
  double sampled_max = 0.0;
  double min_value = 0.0;
  double max_value = 0.0;
};

/// Sampled oracle over the given unit normals followed by compass-search
/// refinement of the best separated samples, for both modes at once.
/// Independent of the gradient optimizer.
inline RefinedOracleExtrema refined_oracle_scan(const BundleSymTensor& zeta, const Eigen::MatrixXd& normals,
                                                const RefinedOracleOptions& opt = {}) {
  if (normals.cols() < 1) throw DomainError("refined oracle needs at least one sample");
  const HyperplaneObjective obj(zeta);
  std::vector<std::pair<double, int>> ranked(normals.cols());
  for (int k = 0; k < normals.cols(); ++k) ranked[k] = {obj.value(normals.col(k).data()), k};

  auto refine = [&](double sign) {
    const int keep = std::min<int>(static_cast<int>(ranked.size()), std::max(64, 16 * opt.seeds));
    auto order = [sign](const auto& a, const auto& b) { return sign * a.first < sign * b.first; };
    std::partial_sort(ranked.begin(), ranked.begin() + keep, ranked.end(), order);
    std::vector<Eigen::VectorXd> chosen;
    for (int r = 0; r < keep && static_cast<int>(chosen.size()) < opt.seeds; ++r) {
      const Eigen::VectorXd u = normals.col(ranked[r].second);
      bool separated = true;
      for (const auto& c : chosen)
        if (std::abs(c.dot(u)) > 0.95) separated = false;
      if (separated) chosen.push_back(u);
    }
    const double sampled = ranked.front().first;
    double best = sampled;
    for (const auto& u : chosen) {
      const double v = detail::compass_search(zeta, u, sign, opt);
      if (sign * v < sign * best) best = v;
    }
    return std::pair{sampled, std::max(0.0, best)};
  };

  RefinedOracleExtrema out;
  std::tie(out.sampled_min, out.min_value) = refine(1.0);
  std::tie(out.sampled_max, out.max_value) = refine(-1.0);
  return out;
}

inline RefinedOracleExtrema refined_oracle_extremize_both(const BundleSymTensor& zeta, int samples,
                                                          std::uint64_t seed) {
  RefinedOracleOptions opt;
  opt.samples = samples;
  opt.seed = seed;
  return refined_oracle_scan(zeta, quasi_uniform_sphere(zeta.n(), samples, seed), opt);
}

inline double refined_oracle_extremize(const BundleSymTensor& zeta, ExtremumMode mode, int samples,
                                       std::uint64_t seed) {
  const auto ext = refined_oracle_extremize_both(zeta, samples, seed);
  return mode == ExtremumMode::Inf ? ext.min_value : ext.max_value;
}

}  // namespace casorati
