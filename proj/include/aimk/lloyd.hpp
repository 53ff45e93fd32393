#pragma once

#include <cstddef>
#include <vector>

#include "aimk/dataset.hpp"
#include "aimk/seeding.hpp"

namespace aimk {

struct LloydOptions {
  std::size_t max_iter = 300;
  double shift_tol = 1e-9;
};

struct ClusteringResult {
  std::vector<std::size_t> assignments;
  std::vector<std::vector<double>> centroids;
  double sse = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  /// SSE after every iteration's centroid update.
  std::vector<double> sse_history;
  /// Iterations whose SSE rose above the previous one (beyond rounding).
  std::size_t sse_increases = 0;
};

/// Lloyd iteration from the seed points. Stops when an assignment pass
/// changes nothing, when no centroid moves by shift_tol or more, or after
/// max_iter iterations. An empty cluster takes the point farthest from its
/// own centroid.
ClusteringResult lloyd(const Dataset& data, const SeedSet& seeds,
                       const LloydOptions& options = {});

}  // namespace aimk
