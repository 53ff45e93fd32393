#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "aimk/kernels.hpp"

namespace aimk::kernels {

namespace {

struct Ops {
  double (*squared_distance)(const double*, const double*, std::size_t);
  void (*distances_from)(const double*, std::size_t, std::size_t, std::size_t,
                         std::size_t, double*);
  void (*nearest_centers)(const double*, std::size_t, const double*, std::size_t,
                          std::size_t, std::uint32_t*, double*);
};

constexpr Ops kScalarOps{&scalar::squared_distance, &scalar::distances_from,
                         &scalar::nearest_centers};
#if AIMK_HAVE_AVX2
constexpr Ops kAvx2Ops{&avx2::squared_distance, &avx2::distances_from,
                       &avx2::nearest_centers};
#endif

bool cpu_has_avx2() {
#if AIMK_HAVE_AVX2 && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa best_isa() { return cpu_has_avx2() ? Isa::avx2 : Isa::scalar; }

Isa initial_isa() {
  if (const char* env = std::getenv("AIMK_ISA")) {
    const std::string name(env);
    if (name == "scalar") return Isa::scalar;
    if (name == "avx2" && cpu_has_avx2()) return Isa::avx2;
  }
  return best_isa();
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

const Ops& ops() {
#if AIMK_HAVE_AVX2
  if (current().load(std::memory_order_relaxed) == Isa::avx2) return kAvx2Ops;
#endif
  return kScalarOps;
}

thread_local std::uint64_t tl_distance_evaluations = 0;

}  // namespace

std::string_view isa_name(Isa isa) {
  return isa == Isa::avx2 ? "avx2" : "scalar";
}

Isa parse_isa(std::string_view name) {
  if (name == "scalar") return Isa::scalar;
  if (name == "avx2") return Isa::avx2;
  if (name == "auto") return best_isa();
  throw std::invalid_argument("unknown kernel ISA '" + std::string(name) +
                              "' (scalar|avx2|auto)");
}

bool isa_available(Isa isa) {
  return isa == Isa::scalar || cpu_has_avx2();
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
  if (!isa_available(isa))
    throw std::invalid_argument("kernel ISA '" + std::string(isa_name(isa)) +
                                "' is not available on this machine/build");
  current().store(isa, std::memory_order_relaxed);
}

void set_isa_auto() { current().store(best_isa(), std::memory_order_relaxed); }

double squared_distance(const double* a, const double* b, std::size_t dim) {
  ++tl_distance_evaluations;
  return ops().squared_distance(a, b, dim);
}

void distances_from(const double* points, std::size_t dim, std::size_t i,
                    std::size_t first, std::size_t last, double* out) {
  if (last > first) tl_distance_evaluations += last - first;
  ops().distances_from(points, dim, i, first, last, out);
}

void nearest_centers(const double* points, std::size_t n, const double* centers,
                     std::size_t k, std::size_t dim, std::uint32_t* assignment,
                     double* sq_dist) {
  tl_distance_evaluations += static_cast<std::uint64_t>(n) * k;
  ops().nearest_centers(points, n, centers, k, dim, assignment, sq_dist);
}

std::uint64_t distance_evaluations() { return tl_distance_evaluations; }

void add_distance_evaluations(std::uint64_t count) {
  tl_distance_evaluations += count;
}

}  // namespace aimk::kernels
