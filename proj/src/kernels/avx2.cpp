// AVX2 + FMA kernels. Built with -mavx2 -mfma; only called after the
// dispatcher has confirmed CPU support.
//
// Low-dimensional inputs (dim < 4) are vectorized across points, with the
// same per-lane operation order as the scalar reference, so those results are
// bit-identical to it. Wider inputs are vectorized across dimensions with FMA
// and differ from the reference only by summation order.

#include <immintrin.h>

#include <cmath>
#include <limits>

#include "aimk/kernels.hpp"

namespace aimk::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline double squared_distance_wide(const double* a, const double* b,
                                    std::size_t dim) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t d = 0;
  for (; d + 8 <= dim; d += 8) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + d), _mm256_loadu_pd(b + d));
    const __m256d d1 =
        _mm256_sub_pd(_mm256_loadu_pd(a + d + 4), _mm256_loadu_pd(b + d + 4));
    acc0 = _mm256_fmadd_pd(d0, d0, acc0);
    acc1 = _mm256_fmadd_pd(d1, d1, acc1);
  }
  for (; d + 4 <= dim; d += 4) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + d), _mm256_loadu_pd(b + d));
    acc0 = _mm256_fmadd_pd(d0, d0, acc0);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; d < dim; ++d) {
    const double diff = a[d] - b[d];
    acc += diff * diff;
  }
  return acc;
}

inline double squared_distance_narrow(const double* a, const double* b,
                                      std::size_t dim) {
  double acc = 0.0;
  for (std::size_t d = 0; d < dim; ++d) {
    const double diff = a[d] - b[d];
    acc += diff * diff;
  }
  return acc;
}

}  // namespace

double squared_distance(const double* a, const double* b, std::size_t dim) {
  return dim < 4 ? squared_distance_narrow(a, b, dim)
                 : squared_distance_wide(a, b, dim);
}

void distances_from(const double* points, std::size_t dim, std::size_t i,
                    std::size_t first, std::size_t last, double* out) {
  const double* xi = points + i * dim;
  std::size_t j = first;
  if (dim < 4) {
    for (; j + 4 <= last; j += 4) {
      const double* p0 = points + j * dim;
      __m256d acc = _mm256_setzero_pd();
      for (std::size_t d = 0; d < dim; ++d) {
        const __m256d x = _mm256_set_pd(p0[3 * dim + d], p0[2 * dim + d],
                                        p0[dim + d], p0[d]);
        const __m256d diff = _mm256_sub_pd(_mm256_set1_pd(xi[d]), x);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(diff, diff));
      }
      _mm256_storeu_pd(out + (j - first), _mm256_sqrt_pd(acc));
    }
    for (; j < last; ++j)
      out[j - first] = std::sqrt(squared_distance_narrow(xi, points + j * dim, dim));
    return;
  }
  for (; j < last; ++j)
    out[j - first] = std::sqrt(squared_distance_wide(xi, points + j * dim, dim));
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

}  // namespace aimk::kernels::avx2
