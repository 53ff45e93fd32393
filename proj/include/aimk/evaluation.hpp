#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace aimk {

/// Unordered point-pair tallies of a clustering against the truth.
struct PairCounts {
  std::uint64_t tp = 0;  ///< same cluster, same class
  std::uint64_t fp = 0;  ///< same cluster, different class
  std::uint64_t fn = 0;  ///< different cluster, same class
  std::uint64_t tn = 0;

  std::uint64_t total() const noexcept { return tp + fp + fn + tn; }
  friend bool operator==(const PairCounts&, const PairCounts&) = default;
};

/// Contingency-table counting, O(n + clusters·classes).
PairCounts pair_counts(std::span<const std::size_t> pred,
                       std::span<const std::size_t> truth);

double rand_index(const PairCounts& counts);

struct PrecisionRecallF {
  double precision = 0.0;
  double recall = 0.0;
  double f = 0.0;
};

/// Degenerate denominators give 0 rather than an error.
PrecisionRecallF f_measure(const PairCounts& counts);

struct AccuracyResult {
  double acc = 0.0;
  /// Matched clusters only; clusters left without a class are absent.
  std::map<std::size_t, std::size_t> mapping;
};

/// Best one-to-one cluster→class matching on the contingency matrix.
AccuracyResult accuracy(std::span<const std::size_t> pred,
                        std::span<const std::size_t> truth);

struct EvalReport {
  double acc = 0.0;
  double ri = 0.0;
  double f_measure = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  std::map<std::size_t, std::size_t> mapping;
};

EvalReport evaluate(std::span<const std::size_t> pred,
                    std::span<const std::size_t> truth);

/// Maximum-weight assignment on a rows×cols matrix (row-major). Returns the
/// column matched to each row, or -1 if the row is unmatched (rows > cols).
std::vector<long> max_weight_assignment(std::span<const double> weights,
                                        std::size_t rows, std::size_t cols);

}  // namespace aimk
