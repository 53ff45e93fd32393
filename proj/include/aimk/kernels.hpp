#pragma once

// Distance kernels with a scalar reference and an AVX2 variant. The variant
// is picked once at startup from CPUID; AIMK_ISA=scalar|avx2 in the
// environment or set_isa() overrides it.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace aimk::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);
/// Throws std::invalid_argument for names other than scalar/avx2/auto.
Isa parse_isa(std::string_view name);

/// True if this build carries the AVX2 variant and the CPU supports AVX2+FMA.
bool isa_available(Isa isa);

Isa active_isa();
/// Select a kernel family; `auto` maps to the best available one.
/// Throws std::invalid_argument if `isa` is unavailable.
void set_isa(Isa isa);
void set_isa_auto();

/// Squared Euclidean distance between two length-`dim` vectors.
double squared_distance(const double* a, const double* b, std::size_t dim);

/// out[j - first] = |x_i - x_j| for j in [first, last). `points` is row-major
/// with stride `dim`.
void distances_from(const double* points, std::size_t dim, std::size_t i,
                    std::size_t first, std::size_t last, double* out);

/// For each point, the index of the nearest center (ties to the lowest
/// index) and the squared distance to it.
void nearest_centers(const double* points, std::size_t n, const double* centers,
                     std::size_t k, std::size_t dim, std::uint32_t* assignment,
                     double* sq_dist);

// Direct entry points, used by the equivalence tests and benchmarks.
namespace scalar {
double squared_distance(const double* a, const double* b, std::size_t dim);
void distances_from(const double* points, std::size_t dim, std::size_t i,
                    std::size_t first, std::size_t last, double* out);
void nearest_centers(const double* points, std::size_t n, const double* centers,
                     std::size_t k, std::size_t dim, std::uint32_t* assignment,
                     double* sq_dist);
}  // namespace scalar

#if AIMK_HAVE_AVX2
namespace avx2 {
double squared_distance(const double* a, const double* b, std::size_t dim);
void distances_from(const double* points, std::size_t dim, std::size_t i,
                    std::size_t first, std::size_t last, double* out);
void nearest_centers(const double* points, std::size_t n, const double* centers,
                     std::size_t k, std::size_t dim, std::uint32_t* assignment,
                     double* sq_dist);
}  // namespace avx2
#endif

// ---- instrumentation --------------------------------------------------------

/// Running count of point-pair distance evaluations on the calling thread.
std::uint64_t distance_evaluations();
void add_distance_evaluations(std::uint64_t count);

/// Counts distance evaluations made on this thread during its lifetime.
class DistanceCounter {
 public:
  DistanceCounter() : start_(distance_evaluations()) {}
  std::uint64_t count() const { return distance_evaluations() - start_; }

 private:
  std::uint64_t start_;
};

}  // namespace aimk::kernels
