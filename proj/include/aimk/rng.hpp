#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace aimk {

/// Portable seeded generator.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. The std distributions are not, so the derived draws below are
/// implemented here; together they give identical streams on every
/// conforming toolchain.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound); bound must be positive.
  std::size_t uniform_index(std::size_t bound);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via the Marsaglia polar method.
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace aimk
