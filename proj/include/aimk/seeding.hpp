#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "aimk/dataset.hpp"
#include "aimk/density.hpp"
#include "aimk/mst.hpp"

namespace aimk {

enum class SeedMethod { aimk, aimk_rs, forgy, kmeanspp, maximin };
std::string to_string(SeedMethod method);
SeedMethod parse_seed_method(const std::string& text);
/// Everything except aimk draws random numbers.
bool is_stochastic(SeedMethod method);

struct SeedSet {
  std::vector<std::size_t> center_indices;
  double lambda = 0.0;
  SeedMethod method = SeedMethod::aimk;
};

/// Extremes of pairwise distance and pairwise density sum over i != j.
struct HybridStats {
  double d_min = 0.0;
  double d_max = 0.0;
  double p_min = 0.0;
  double p_max = 0.0;
};

HybridStats hybrid_stats(const DistanceMatrix& dist, const DensityProfile& rho);

/// λ·dnorm² + (1-λ)·pnorm², each normalized term taken as 0 when its range
/// is empty. Throws for i == j or λ outside [0, 1].
double hybrid_distance(std::size_t i, std::size_t j, double lambda,
                       const DensityProfile& rho, const DistanceMatrix& dist,
                       const HybridStats& stats);

/// Everything AIMK computes before center selection: distances, MST,
/// skeleton, threshold, TCG densities and normalization extremes. Build once
/// and select for several λ.
struct AimkModel {
  DistanceMatrix dist;
  Mst tree;
  SkeletonResult skeleton;
  ThresholdMode thr_mode = ThresholdMode::max;
  DensityProfile density;
  HybridStats stats;

  double threshold() const noexcept { return skeleton.threshold; }
};

AimkModel build_aimk_model(const Dataset& data,
                           ThresholdMode mode = ThresholdMode::max);

/// Greedy selection: densest vertex first, then repeatedly the vertex whose
/// smallest hybrid distance to the chosen centers is largest. Ties go to the
/// lowest index. Requires 2 <= nc <= n.
SeedSet select_aimk_centers(const AimkModel& model, std::size_t nc,
                            double lambda);

SeedSet aimk_seeds(const Dataset& data, std::size_t nc, double lambda,
                   ThresholdMode mode = ThresholdMode::max);

/// AIMK on floor(sqrt(n)) uniformly sampled points; returns original indices.
SeedSet aimk_rs_seeds(const Dataset& data, std::size_t nc, double lambda,
                      std::uint64_t rng_seed,
                      ThresholdMode mode = ThresholdMode::max);

SeedSet forgy_seeds(const Dataset& data, std::size_t nc, std::uint64_t rng_seed);
SeedSet kmeanspp_seeds(const Dataset& data, std::size_t nc,
                       std::uint64_t rng_seed);
SeedSet maximin_seeds(const Dataset& data, std::size_t nc,
                      std::uint64_t rng_seed);
/// Maximin with a caller-chosen first center.
SeedSet maximin_seeds_from(const Dataset& data, std::size_t nc,
                           std::size_t first);

struct SeedRequest {
  SeedMethod method = SeedMethod::aimk;
  std::size_t nc = 2;
  double lambda = 0.0;
  ThresholdMode thr_mode = ThresholdMode::max;
  std::uint64_t rng_seed = 1;
};

SeedSet make_seeds(const Dataset& data, const SeedRequest& request);

}  // namespace aimk
