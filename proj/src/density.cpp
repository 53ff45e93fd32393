#include "aimk/density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aimk {

Tcg build_tcg(const DistanceMatrix& dist, double thr) {
  if (!(thr >= 0.0)) throw std::invalid_argument("build_tcg: threshold must be >= 0");
  const std::size_t n = dist.size();
  Tcg tcg;
  tcg.thr = thr;
  tcg.neighbors.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = dist.row(i);
    auto& adj = tcg.neighbors[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i && row[j] <= thr) adj.push_back(static_cast<std::uint32_t>(j));
    }
  }
  return tcg;
}

DensityProfile densities(const Tcg& tcg, const DistanceMatrix& dist, double epsilon) {
  const std::size_t n = tcg.size();
  if (dist.size() != n) throw std::invalid_argument("densities: size mismatch");
  if (!(epsilon > 0.0)) throw std::invalid_argument("densities: epsilon must be > 0");

  DensityProfile out;
  out.epsilon = epsilon;
  out.degree_k.resize(n);
  out.mean_dist.assign(n, 0.0);
  out.rho.assign(n, 0.0);

  for (std::size_t i = 0; i < n; ++i) {
    const auto& adj = tcg.neighbors[i];
    out.degree_k[i] = adj.size();
    if (adj.empty()) continue;
    const auto row = dist.row(i);
    double sum = 0.0;
    for (const auto j : adj) sum += row[j];
    out.mean_dist[i] = sum / static_cast<double>(adj.size());
  }

  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = out.degree_k[i];
    if (k == 0) continue;
    const double d = out.mean_dist[i];
    auto [it, inserted] = out.class_extrema.try_emplace(k, d, d);
    if (!inserted) {
      it->second.first = std::max(it->second.first, d);
      it->second.second = std::min(it->second.second, d);
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = out.degree_k[i];
    if (k == 0) continue;
    const auto [d_max, d_min] = out.class_extrema.at(k);
    const double kd = static_cast<double>(k);
    const double rho = kd + (d_max - out.mean_dist[i]) / (d_max - d_min + epsilon);
    // Wide classes can round up to k+1.
    out.rho[i] = rho < kd + 1.0 ? rho : std::nextafter(kd + 1.0, 0.0);
  }
  return out;
}

}  // namespace aimk
