#include "aimk/lloyd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "aimk/kernels.hpp"

namespace aimk {

namespace {

// Relative slack for rounding when comparing successive SSE values.
constexpr double kSseSlack = 1e-12;

}  // namespace

ClusteringResult lloyd(const Dataset& data, const SeedSet& seeds,
                       const LloydOptions& options) {
  const std::size_t n = data.size();
  const std::size_t dim = data.dim();
  const std::size_t k = seeds.center_indices.size();
  if (k == 0) throw std::invalid_argument("lloyd: no seeds");
  if (k > n) throw std::invalid_argument("lloyd: more seeds than points");
  if (options.max_iter < 1) throw std::invalid_argument("lloyd: max_iter must be >= 1");
  if (!(options.shift_tol >= 0.0)) throw std::invalid_argument("lloyd: shift_tol must be >= 0");
  {
    std::vector<std::size_t> sorted(seeds.center_indices);
    std::sort(sorted.begin(), sorted.end());
    if (sorted.back() >= n) throw std::invalid_argument("lloyd: seed index out of range");
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("lloyd: duplicate seed index");
  }

  const double* pts = data.coords().data();
  std::vector<double> centers(k * dim);
  for (std::size_t c = 0; c < k; ++c) {
    const auto p = data.point(seeds.center_indices[c]);
    std::copy(p.begin(), p.end(), centers.begin() + c * dim);
  }

  ClusteringResult result;
  std::vector<std::uint32_t> assign(n), prev(n);
  std::vector<double> sq(n);
  std::vector<std::size_t> counts(k);
  std::vector<double> next(k * dim);

  for (std::size_t iter = 1; iter <= options.max_iter; ++iter) {
    result.iterations = iter;
    kernels::nearest_centers(pts, n, centers.data(), k, dim, assign.data(), sq.data());
    if (iter > 1 && assign == prev) {
      result.converged = true;
      break;
    }

    std::fill(counts.begin(), counts.end(), 0);
    for (const auto a : assign) ++counts[a];
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] != 0) continue;
      // Farthest point from its centroid, among clusters with >= 2 members.
      std::size_t far = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (counts[assign[i]] < 2) continue;
        if (far == n || sq[i] > sq[far]) far = i;
      }
      --counts[assign[far]];
      assign[far] = static_cast<std::uint32_t>(c);
      sq[far] = 0.0;
      counts[c] = 1;
    }

    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      double* dst = next.data() + assign[i] * dim;
      const double* x = pts + i * dim;
      for (std::size_t d = 0; d < dim; ++d) dst[d] += x[d];
    }
    double max_shift = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      const double inv = 1.0 / static_cast<double>(counts[c]);
      double shift = 0.0;
      for (std::size_t d = 0; d < dim; ++d) {
        double& v = next[c * dim + d];
        v *= inv;
        const double delta = v - centers[c * dim + d];
        shift += delta * delta;
      }
      max_shift = std::max(max_shift, std::sqrt(shift));
    }
    centers.swap(next);

    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      sse += kernels::squared_distance(pts + i * dim, centers.data() + assign[i] * dim, dim);
    if (!result.sse_history.empty()) {
      const double before = result.sse_history.back();
      if (sse > before + kSseSlack * before) ++result.sse_increases;
    }
    result.sse_history.push_back(sse);
    prev = assign;

    if (max_shift < options.shift_tol) {
      result.converged = true;
      break;
    }
  }

  result.assignments.assign(prev.begin(), prev.end());
  result.sse = result.sse_history.back();
  result.centroids.resize(k);
  for (std::size_t c = 0; c < k; ++c)
    result.centroids[c].assign(centers.begin() + c * dim, centers.begin() + (c + 1) * dim);
  return result;
}

}  // namespace aimk
