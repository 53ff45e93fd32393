// Reference kernels. Plain loops, accumulation in dimension order.

#include <cmath>
#include <limits>

#include "aimk/kernels.hpp"

namespace aimk::kernels::scalar {

double squared_distance(const double* a, const double* b, std::size_t dim) {
  double acc = 0.0;
  for (std::size_t d = 0; d < dim; ++d) {
    const double diff = a[d] - b[d];
    acc += diff * diff;
  }
  return acc;
}

void distances_from(const double* points, std::size_t dim, std::size_t i,
                    std::size_t first, std::size_t last, double* out) {
  const double* xi = points + i * dim;
  for (std::size_t j = first; j < last; ++j)
    out[j - first] = std::sqrt(squared_distance(xi, points + j * dim, dim));
}

void nearest_centers(const double* points, std::size_t n, const double* centers,
                     std::size_t k, std::size_t dim, std::uint32_t* assignment,
                     double* sq_dist) {
  for (std::size_t i = 0; i < n; ++i) {
    const double* x = points + i * dim;
    double best = std::numeric_limits<double>::infinity();
    std::uint32_t arg = 0;
    for (std::size_t c = 0; c < k; ++c) {
      const double d = squared_distance(x, centers + c * dim, dim);
      if (d < best) {
        best = d;
        arg = static_cast<std::uint32_t>(c);
      }
    }
    assignment[i] = arg;
    sq_dist[i] = best;
  }
}

}  // namespace aimk::kernels::scalar
