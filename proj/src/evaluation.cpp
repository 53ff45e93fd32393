#include "aimk/evaluation.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace aimk {

namespace {

std::uint64_t choose2(std::uint64_t x) { return x < 2 ? 0 : x * (x - 1) / 2; }

struct Contingency {
  std::vector<std::size_t> cluster_ids;  // dense row -> original cluster id
  std::vector<std::size_t> class_ids;    // dense col -> original class id
  std::vector<std::uint64_t> table;      // rows × cols
  std::size_t rows() const { return cluster_ids.size(); }
  std::size_t cols() const { return class_ids.size(); }
};

std::vector<std::size_t> densify(std::span<const std::size_t> values,
                                 std::vector<std::size_t>& ids) {
  ids.assign(values.begin(), values.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::unordered_map<std::size_t, std::size_t> index;
  for (std::size_t i = 0; i < ids.size(); ++i) index[ids[i]] = i;
  std::vector<std::size_t> out;
  out.reserve(values.size());
  for (const auto v : values) out.push_back(index[v]);
  return out;
}

Contingency contingency(std::span<const std::size_t> pred,
                        std::span<const std::size_t> truth) {
  if (pred.size() != truth.size())
    throw std::invalid_argument("prediction and truth lengths differ (" +
                                std::to_string(pred.size()) + " vs " +
                                std::to_string(truth.size()) + ")");
  Contingency c;
  const auto rows = densify(pred, c.cluster_ids);
  const auto cols = densify(truth, c.class_ids);
  c.table.assign(c.rows() * c.cols(), 0);
  for (std::size_t i = 0; i < rows.size(); ++i) ++c.table[rows[i] * c.cols() + cols[i]];
  return c;
}

}  // namespace

PairCounts pair_counts(std::span<const std::size_t> pred,
                       std::span<const std::size_t> truth) {
  const auto c = contingency(pred, truth);
  std::vector<std::uint64_t> row_sum(c.rows(), 0), col_sum(c.cols(), 0);
  std::uint64_t same_both = 0;
  for (std::size_t r = 0; r < c.rows(); ++r)
    for (std::size_t k = 0; k < c.cols(); ++k) {
      const auto v = c.table[r * c.cols() + k];
      same_both += choose2(v);
      row_sum[r] += v;
      col_sum[k] += v;
    }
  std::uint64_t same_cluster = 0, same_class = 0;
  for (const auto v : row_sum) same_cluster += choose2(v);
  for (const auto v : col_sum) same_class += choose2(v);
  const std::uint64_t total = choose2(pred.size());

  PairCounts out;
  out.tp = same_both;
  out.fp = same_cluster - same_both;
  out.fn = same_class - same_both;
  out.tn = total - same_cluster - same_class + same_both;
  return out;
}

double rand_index(const PairCounts& counts) {
  const auto total = counts.total();
  if (total == 0) throw std::invalid_argument("rand_index: no point pairs");
  return static_cast<double>(counts.tp + counts.tn) / static_cast<double>(total);
}

PrecisionRecallF f_measure(const PairCounts& counts) {
  PrecisionRecallF out;
  if (counts.tp + counts.fp > 0)
    out.precision = static_cast<double>(counts.tp) / static_cast<double>(counts.tp + counts.fp);
  if (counts.tp + counts.fn > 0)
    out.recall = static_cast<double>(counts.tp) / static_cast<double>(counts.tp + counts.fn);
  if (out.precision + out.recall > 0.0)
    out.f = 2.0 * out.precision * out.recall / (out.precision + out.recall);
  return out;
}

std::vector<long> max_weight_assignment(std::span<const double> weights,
                                        std::size_t rows, std::size_t cols) {
  if (weights.size() != rows * cols)
    throw std::invalid_argument("max_weight_assignment: bad matrix size");
  std::vector<long> match(rows, -1);
  if (rows == 0 || cols == 0) return match;

  // Hungarian method (shortest augmenting path with potentials) on the
  // square padding, minimizing (max - w).
  const std::size_t n = std::max(rows, cols);
  double top = 0.0;
  for (const double w : weights) top = std::max(top, w);
  auto cost = [&](std::size_t i, std::size_t j) {
    if (i >= rows || j >= cols) return top;  // padding carries weight 0
    return top - weights[i * cols + j];
  };

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  for (std::size_t j = 1; j <= n; ++j) {
    const std::size_t i = p[j];
    if (i >= 1 && i <= rows && j <= cols) match[i - 1] = static_cast<long>(j - 1);
  }
  return match;
}

AccuracyResult accuracy(std::span<const std::size_t> pred,
                        std::span<const std::size_t> truth) {
  if (pred.empty()) throw std::invalid_argument("accuracy: empty input");
  const auto c = contingency(pred, truth);
  std::vector<double> w(c.table.begin(), c.table.end());
  const auto match = max_weight_assignment(w, c.rows(), c.cols());

  AccuracyResult out;
  std::uint64_t correct = 0;
  for (std::size_t r = 0; r < c.rows(); ++r) {
    if (match[r] < 0) continue;
    const auto col = static_cast<std::size_t>(match[r]);
    correct += c.table[r * c.cols() + col];
    out.mapping[c.cluster_ids[r]] = c.class_ids[col];
  }
  out.acc = static_cast<double>(correct) / static_cast<double>(pred.size());
  return out;
}

EvalReport evaluate(std::span<const std::size_t> pred,
                    std::span<const std::size_t> truth) {
  const auto counts = pair_counts(pred, truth);
  const auto prf = f_measure(counts);
  auto acc = accuracy(pred, truth);
  EvalReport out;
  out.acc = acc.acc;
  out.ri = rand_index(counts);
  out.f_measure = prf.f;
  out.precision = prf.precision;
  out.recall = prf.recall;
  out.mapping = std::move(acc.mapping);
  return out;
}

}  // namespace aimk
