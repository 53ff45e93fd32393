#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "aimk/mst.hpp"

namespace aimk {

/// Graph joining every pair of distinct points at distance <= thr.
struct Tcg {
  double thr = 0.0;
  /// Ascending neighbor lists, no self loops.
  std::vector<std::vector<std::uint32_t>> neighbors;

  std::size_t size() const noexcept { return neighbors.size(); }
};

Tcg build_tcg(const DistanceMatrix& dist, double thr);

inline constexpr double kDensityEpsilon = 1e-10;

struct DensityProfile {
  std::vector<std::size_t> degree_k;
  /// Mean distance to TCG neighbors; 0 for isolated vertices (never used).
  std::vector<double> mean_dist;
  /// Per occupied neighbor count k >= 1: (largest, smallest) mean distance.
  std::map<std::size_t, std::pair<double, double>> class_extrema;
  std::vector<double> rho;
  double epsilon = kDensityEpsilon;

  std::size_t size() const noexcept { return rho.size(); }
};

/// ρ_i = k + (Dmax^k - D_i) / (Dmax^k - Dmin^k + ε) for k >= 1, else 0.
DensityProfile densities(const Tcg& tcg, const DistanceMatrix& dist,
                         double epsilon = kDensityEpsilon);

}  // namespace aimk
