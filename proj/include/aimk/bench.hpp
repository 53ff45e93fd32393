#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "aimk/dataset.hpp"
#include "aimk/evaluation.hpp"
#include "aimk/lloyd.hpp"
#include "aimk/seeding.hpp"

namespace aimk {

struct DatasetEntry {
  std::string name;
  std::filesystem::path path;
  DataFormat format = DataFormat::csv;
  std::optional<int> label_column;
  /// Number of clusters; defaults to the number of distinct labels.
  std::optional<std::size_t> k;
};

struct MethodEntry {
  SeedMethod method = SeedMethod::aimk;
  double lambda = 0.0;
  ThresholdMode thr_mode = ThresholdMode::max;
  std::size_t repeats = 1;
  std::uint64_t rng_seed = 1;
};

enum class ReportFormat { table, csv, json };
std::string to_string(ReportFormat format);
ReportFormat parse_report_format(const std::string& text);

struct BenchConfig {
  std::vector<DatasetEntry> datasets;
  std::vector<MethodEntry> methods;
  LloydOptions kmeans;
  ReportFormat output_format = ReportFormat::table;
  /// Empty or "-" means stdout.
  std::string output_path;
};

/// Throws std::invalid_argument naming the first problem found.
void validate(const BenchConfig& config);

/// JSON config; relative dataset paths resolve against `base_dir`.
BenchConfig parse_bench_config(const std::string& json_text,
                               const std::filesystem::path& base_dir = {});
BenchConfig load_bench_config(const std::filesystem::path& path);

struct Summary {
  double mean = 0.0;
  double std = 0.0;  ///< population standard deviation over repeats
};

struct BenchRow {
  std::string dataset;
  SeedMethod method = SeedMethod::aimk;
  double lambda = 0.0;
  ThresholdMode thr_mode = ThresholdMode::max;
  std::size_t nc = 0;
  std::size_t repeats = 0;
  Summary acc;
  Summary ri;
  Summary f;
  Summary sse;
  double wall_ms = 0.0;
  /// Mean per repeat.
  double seed_distance_evals = 0.0;
  double lloyd_distance_evals = 0.0;
  std::size_t sse_increases = 0;
  /// Seeds of the first repeat.
  std::vector<std::size_t> first_seeds;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::vector<std::string> skipped;  ///< "name: reason"
};

using WarningSink = std::function<void(const std::string&)>;

/// Rows follow config order (dataset-major, then method).
BenchReport run_benchmark(const BenchConfig& config,
                          const WarningSink& warn = {});

/// Evaluate one method on an already loaded dataset.
BenchRow run_method(const Dataset& data, std::size_t nc,
                    const MethodEntry& method, const LloydOptions& kmeans);

void write_report(const BenchReport& report, ReportFormat format,
                  std::ostream& out, bool include_timing = true);

// ---- protocol sweeps --------------------------------------------------------

inline constexpr std::array<double, 5> kSweepLambdas{0.0, 0.25, 0.5, 0.75, 1.0};

struct SweepCell {
  double lambda = 0.0;
  ThresholdMode thr_mode = ThresholdMode::max;
  std::vector<std::size_t> seeds;
  EvalReport eval;
  std::size_t sse_increases = 0;
};

struct LambdaSweep {
  std::vector<SweepCell> cells;  ///< one per kSweepLambdas entry
  /// For ACC, RI, F: whether λ = 0 or λ = 1 attains the column maximum.
  std::array<bool, 3> endpoint_attains_max{};
  /// For ACC, RI, F: λ values attaining the maximum.
  std::array<std::vector<double>, 3> argmax;
};

/// One AIMK model (one Thr) shared across all λ. Requires labels.
LambdaSweep sweep_lambda(const Dataset& data, std::size_t nc,
                         ThresholdMode mode = ThresholdMode::max,
                         const LloydOptions& kmeans = {});

struct ThresholdSweep {
  /// Rows min, mean, max; columns λ = 0, λ = 1.
  std::array<std::array<SweepCell, 2>, 3> cells;
};

ThresholdSweep sweep_threshold(const Dataset& data, std::size_t nc,
                               const LloydOptions& kmeans = {});

void write_lambda_sweep(const LambdaSweep& sweep, std::ostream& out);
void write_threshold_sweep(const ThresholdSweep& sweep, std::ostream& out);

}  // namespace aimk
