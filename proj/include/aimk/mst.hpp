#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "aimk/dataset.hpp"

namespace aimk {

/// Dense symmetric matrix of Euclidean distances. Also tracks the extreme
/// off-diagonal values, which the hybrid distance normalizes by.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  /// Takes a full row-major n×n matrix. Validates symmetry, zero diagonal,
  /// finiteness and non-negativity.
  DistanceMatrix(std::size_t n, std::vector<double> entries);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const {
    return entries_[i * n_ + j];
  }
  std::span<const double> row(std::size_t i) const {
    return {entries_.data() + i * n_, n_};
  }
  double min_off_diagonal() const noexcept { return min_; }
  double max_off_diagonal() const noexcept { return max_; }

 private:
  friend DistanceMatrix pairwise_distances(const Dataset& data);
  std::size_t n_ = 0;
  std::vector<double> entries_;
  double min_ = 0.0;
  double max_ = 0.0;
};

/// All n(n-1)/2 Euclidean distances. Requires n >= 2.
DistanceMatrix pairwise_distances(const Dataset& data);

struct MstEdge {
  std::size_t u = 0;  ///< endpoint already in the tree when the edge was added
  std::size_t v = 0;
  double weight = 0.0;
};

struct Mst {
  std::vector<MstEdge> edges;  ///< in insertion order, n-1 of them
  std::vector<std::size_t> degree;
  std::size_t max_degree = 0;

  std::size_t size() const noexcept { return degree.size(); }
  double total_weight() const;
  /// Incident edge indices per vertex.
  std::vector<std::vector<std::size_t>> incidence() const;
};

/// Prim's algorithm on the complete graph, rooted at vertex 0. Among equal
/// minimum-weight candidate edges the lowest (tree vertex, outside vertex)
/// pair wins.
Mst prim_mst(const DistanceMatrix& dist);

enum class ThresholdMode { max, mean, min };
std::string to_string(ThresholdMode mode);
ThresholdMode parse_threshold_mode(const std::string& text);

struct SkeletonResult {
  /// Vertices grouped by tree degree (U_i); only occupied degrees appear.
  std::map<std::size_t, std::vector<std::size_t>> degree_sets;
  /// Adjacent-count per occupied degree: vertices outside U_i touching U_i,
  /// each counted once.
  std::map<std::size_t, std::size_t> adjacency_counts;
  std::size_t chosen_degree = 0;
  /// Vertices with degree >= chosen_degree, ascending.
  std::vector<std::size_t> skeleton;
  /// Largest incident edge weight of each skeleton vertex, aligned with
  /// `skeleton`.
  std::vector<double> max_adjacent_weights;
  /// Set by `threshold`; 0 until then.
  double threshold = 0.0;

  std::size_t skeleton_size() const noexcept { return skeleton.size(); }
};

/// Degree partition, adjacent counts and the skeleton vertex set. Ties in
/// the most-adjacent degree go to the larger degree.
SkeletonResult skeleton_points(const Mst& tree);

/// Mean over skeleton vertices of their incident edge weights aggregated by
/// `mode` (largest, mean or smallest incident weight).
double threshold(const Mst& tree, const SkeletonResult& skel,
                 ThresholdMode mode = ThresholdMode::max);

/// One "u v weight" line per edge.
void write_mst_edges(const Mst& tree, std::ostream& out);
void write_mst_edges(const Mst& tree, const std::filesystem::path& path);

}  // namespace aimk
