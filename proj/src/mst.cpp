#include "aimk/mst.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "aimk/kernels.hpp"

namespace aimk {

DistanceMatrix::DistanceMatrix(std::size_t n, std::vector<double> entries)
    : n_(n), entries_(std::move(entries)) {
  if (entries_.size() != n_ * n_)
    throw std::invalid_argument("DistanceMatrix: expected n*n entries");
  min_ = std::numeric_limits<double>::infinity();
  max_ = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n_; ++i) {
    if (entries_[i * n_ + i] != 0.0)
      throw std::invalid_argument("DistanceMatrix: non-zero diagonal");
    for (std::size_t j = i + 1; j < n_; ++j) {
      const double d = entries_[i * n_ + j];
      if (!std::isfinite(d) || d < 0.0)
        throw std::invalid_argument("DistanceMatrix: entries must be finite and >= 0");
      if (d != entries_[j * n_ + i])
        throw std::invalid_argument("DistanceMatrix: not symmetric");
      min_ = std::min(min_, d);
      max_ = std::max(max_, d);
    }
  }
  if (n_ < 2) min_ = max_ = 0.0;
}

DistanceMatrix pairwise_distances(const Dataset& data) {
  const std::size_t n = data.size();
  if (n < 2) throw std::invalid_argument("pairwise_distances: need at least 2 points");
  const std::size_t dim = data.dim();
  const double* pts = data.coords().data();

  DistanceMatrix m;
  m.n_ = n;
  m.entries_.assign(n * n, 0.0);
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double* row = m.entries_.data() + i * n;
    kernels::distances_from(pts, dim, i, i + 1, n, row + i + 1);
    for (std::size_t j = i + 1; j < n; ++j) {
      m.entries_[j * n + i] = row[j];
      lo = std::min(lo, row[j]);
      hi = std::max(hi, row[j]);
    }
  }
  m.min_ = lo;
  m.max_ = hi;
  return m;
}

double Mst::total_weight() const {
  double total = 0.0;
  for (const auto& e : edges) total += e.weight;
  return total;
}

std::vector<std::vector<std::size_t>> Mst::incidence() const {
  std::vector<std::vector<std::size_t>> inc(size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    inc[edges[e].u].push_back(e);
    inc[edges[e].v].push_back(e);
  }
  return inc;
}

Mst prim_mst(const DistanceMatrix& dist) {
  const std::size_t n = dist.size();
  if (n < 2) throw std::invalid_argument("prim_mst: need at least 2 vertices");

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<char> in_tree(n, 0);
  std::vector<double> best(n, kInf);
  std::vector<std::size_t> parent(n, 0);

  Mst tree;
  tree.edges.reserve(n - 1);
  tree.degree.assign(n, 0);

  std::size_t added = 0;
  in_tree[added] = 1;
  for (std::size_t v = 1; v < n; ++v) best[v] = dist(0, v);

  for (std::size_t step = 1; step < n; ++step) {
    std::size_t pick = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (in_tree[v]) continue;
      if (pick == n || best[v] < best[pick] ||
          (best[v] == best[pick] && parent[v] < parent[pick])) {
        pick = v;
      }
    }
    const std::size_t u = parent[pick];
    tree.edges.push_back({u, pick, best[pick]});
    ++tree.degree[u];
    ++tree.degree[pick];
    in_tree[pick] = 1;

    const auto row = dist.row(pick);
    for (std::size_t v = 0; v < n; ++v) {
      if (in_tree[v]) continue;
      // Equal weights keep the lower-indexed tree endpoint.
      if (row[v] < best[v] || (row[v] == best[v] && pick < parent[v])) {
        best[v] = row[v];
        parent[v] = pick;
      }
    }
  }
  tree.max_degree = *std::max_element(tree.degree.begin(), tree.degree.end());
  return tree;
}

std::string to_string(ThresholdMode mode) {
  switch (mode) {
    case ThresholdMode::max: return "max";
    case ThresholdMode::mean: return "mean";
    case ThresholdMode::min: return "min";
  }
  return "?";
}

ThresholdMode parse_threshold_mode(const std::string& text) {
  if (text == "max") return ThresholdMode::max;
  if (text == "mean") return ThresholdMode::mean;
  if (text == "min") return ThresholdMode::min;
  throw std::invalid_argument("unknown threshold mode '" + text + "' (max|mean|min)");
}

SkeletonResult skeleton_points(const Mst& tree) {
  const std::size_t n = tree.size();
  const auto inc = tree.incidence();
  auto other = [&](std::size_t e, std::size_t v) {
    return tree.edges[e].u == v ? tree.edges[e].v : tree.edges[e].u;
  };

  SkeletonResult out;
  for (std::size_t v = 0; v < n; ++v) out.degree_sets[tree.degree[v]].push_back(v);

  // stamp[w] == degree i marks w as already counted for U_i.
  std::vector<std::size_t> stamp(n, 0);
  for (const auto& [deg, members] : out.degree_sets) {
    std::size_t count = 0;
    for (const auto u : members) {
      for (const auto e : inc[u]) {
        const std::size_t w = other(e, u);
        if (tree.degree[w] == deg || stamp[w] == deg) continue;
        stamp[w] = deg;
        ++count;
      }
    }
    out.adjacency_counts[deg] = count;
  }

  std::size_t best_count = 0;
  for (const auto& [deg, count] : out.adjacency_counts) {
    if (count >= best_count) {  // ascending degrees: ties end on the largest
      best_count = count;
      out.chosen_degree = deg;
    }
  }

  for (std::size_t v = 0; v < n; ++v) {
    if (tree.degree[v] < out.chosen_degree) continue;
    out.skeleton.push_back(v);
    double w = 0.0;
    for (const auto e : inc[v]) w = std::max(w, tree.edges[e].weight);
    out.max_adjacent_weights.push_back(w);
  }
  return out;
}

double threshold(const Mst& tree, const SkeletonResult& skel, ThresholdMode mode) {
  if (skel.skeleton.empty()) throw std::logic_error("threshold: empty skeleton");
  const auto inc = tree.incidence();
  double sum = 0.0;
  for (const auto v : skel.skeleton) {
    double agg = 0.0;
    switch (mode) {
      case ThresholdMode::max:
        for (const auto e : inc[v]) agg = std::max(agg, tree.edges[e].weight);
        break;
      case ThresholdMode::min:
        agg = std::numeric_limits<double>::infinity();
        for (const auto e : inc[v]) agg = std::min(agg, tree.edges[e].weight);
        break;
      case ThresholdMode::mean:
        for (const auto e : inc[v]) agg += tree.edges[e].weight;
        agg /= static_cast<double>(inc[v].size());
        break;
    }
    sum += agg;
  }
  return sum / static_cast<double>(skel.skeleton.size());
}

void write_mst_edges(const Mst& tree, std::ostream& out) {
  const auto old = out.precision(17);
  for (const auto& e : tree.edges) out << e.u << ' ' << e.v << ' ' << e.weight << '\n';
  out.precision(old);
}

void write_mst_edges(const Mst& tree, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_mst_edges(tree, out);
}

}  // namespace aimk
