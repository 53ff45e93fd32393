#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "aimk/rng.hpp"

namespace aimk {

/// Raised for malformed input files. `line()` is 1-based, 0 when the error is
/// not tied to a particular line (e.g. an empty file).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// n points in p dimensions, stored row-major, with optional class labels.
///
/// Immutable after construction; the constructor enforces n >= 1, p >= 1,
/// finite coordinates and a label count equal to n.
class Dataset {
 public:
  Dataset(std::vector<double> coords, std::size_t dim,
          std::optional<std::vector<std::string>> labels = std::nullopt,
          std::string name = {});

  std::size_t size() const noexcept { return n_; }
  std::size_t dim() const noexcept { return dim_; }
  const std::string& name() const noexcept { return name_; }

  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  std::span<const double> coords() const noexcept { return coords_; }

  bool has_labels() const noexcept { return labels_.has_value(); }
  const std::vector<std::string>& labels() const;

  /// Labels as dense codes 0..c-1 in order of first appearance.
  std::vector<std::size_t> label_codes() const;
  std::size_t num_classes() const;

  /// Rows `indices` (in the given order) as a new dataset; labels follow.
  Dataset subset(std::span<const std::size_t> indices) const;

  /// Same points, coordinates multiplied by `factor`.
  Dataset scaled(double factor) const;

 private:
  std::vector<double> coords_;
  std::size_t n_ = 0;
  std::size_t dim_ = 0;
  std::optional<std::vector<std::string>> labels_;
  std::string name_;
};

/// Encode arbitrary labels to dense codes by first appearance.
std::vector<std::size_t> encode_labels(std::span<const std::string> labels);

// ---- loading / writing ------------------------------------------------------

/// Comma-separated values. A first row whose non-label fields are all
/// non-numeric is treated as a header. A negative `label_column` counts from
/// the end (-1 is the last column).
Dataset load_csv(const std::filesystem::path& path,
                 std::optional<int> label_column = std::nullopt);
Dataset parse_csv(std::istream& in, std::optional<int> label_column,
                  std::string name = {});

/// LIBSVM sparse text: `label idx:val idx:val ...`, 1-based strictly
/// increasing indices. Dense result with p = largest index in the file.
Dataset load_libsvm(const std::filesystem::path& path);
Dataset parse_libsvm(std::istream& in, std::string name = {});

/// Writes coordinates with round-trip precision; labels, if any, go last.
void write_csv(const Dataset& data, std::ostream& out);
void write_csv(const Dataset& data, const std::filesystem::path& path);

enum class DataFormat { csv, libsvm };
DataFormat parse_data_format(const std::string& text);
/// `libsvm` for .libsvm/.svm/.scale extensions, `csv` otherwise.
DataFormat guess_data_format(const std::filesystem::path& path);
Dataset load_dataset(const std::filesystem::path& path, DataFormat format,
                     std::optional<int> label_column);

// ---- synthetic data ---------------------------------------------------------

struct MixtureComponent {
  double weight = 0.0;
  std::vector<double> mean;
  /// Row-major dim×dim, symmetric positive definite.
  std::vector<double> covariance;
};

struct MixtureSpec {
  std::vector<MixtureComponent> components;
  std::size_t points_per_component = 0;
  std::uint64_t rng_seed = 0;
};

/// Draws points_per_component samples from every component in order; label of
/// each point is its component index ("0", "1", ...). Deterministic per seed.
Dataset generate_mixture(const MixtureSpec& spec);

/// The separated three-component layout used for the λ demonstration:
/// means (0,0), (0,1), (0.5,0.5), covariance 0.01·I.
MixtureSpec separated_mixture_spec(std::size_t points_per_component,
                                   std::uint64_t seed);

/// Reads a mixture spec from JSON:
/// {"components":[{"weight":..,"mean":[..],"covariance":[[..],[..]]}],
///  "points_per_component":20,"seed":7}
MixtureSpec load_mixture_spec(const std::filesystem::path& path);
MixtureSpec parse_mixture_spec(const std::string& json_text);

// ---- sampling ---------------------------------------------------------------

/// `size` distinct indices from [0, n), uniform without replacement, sorted.
std::vector<std::size_t> random_sample(std::size_t n, std::size_t size,
                                       std::uint64_t rng_seed);
inline std::vector<std::size_t> random_sample(const Dataset& data,
                                              std::size_t size,
                                              std::uint64_t rng_seed) {
  return random_sample(data.size(), size, rng_seed);
}

/// floor(sqrt(n)), exact for all n.
std::size_t isqrt(std::size_t n);

}  // namespace aimk
