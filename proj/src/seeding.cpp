#include "aimk/seeding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "aimk/kernels.hpp"
#include "aimk/rng.hpp"

namespace aimk {

std::string to_string(SeedMethod method) {
  switch (method) {
    case SeedMethod::aimk: return "aimk";
    case SeedMethod::aimk_rs: return "aimk_rs";
    case SeedMethod::forgy: return "forgy";
    case SeedMethod::kmeanspp: return "kmeanspp";
    case SeedMethod::maximin: return "maximin";
  }
  return "?";
}

SeedMethod parse_seed_method(const std::string& text) {
  if (text == "aimk") return SeedMethod::aimk;
  if (text == "aimk_rs" || text == "aimk-rs") return SeedMethod::aimk_rs;
  if (text == "forgy" || text == "random" || text == "kmeans") return SeedMethod::forgy;
  if (text == "kmeanspp" || text == "kmeans++") return SeedMethod::kmeanspp;
  if (text == "maximin") return SeedMethod::maximin;
  throw std::invalid_argument("unknown seeding method '" + text +
                              "' (aimk|aimk_rs|forgy|kmeanspp|maximin)");
}

bool is_stochastic(SeedMethod method) { return method != SeedMethod::aimk; }

namespace {

void check_lambda(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw std::invalid_argument("lambda must lie in [0, 1]");
}

double normalized(double value, double lo, double hi) {
  return hi > lo ? (value - lo) / (hi - lo) : 0.0;
}

}  // namespace

HybridStats hybrid_stats(const DistanceMatrix& dist, const DensityProfile& rho) {
  const std::size_t n = rho.size();
  if (n < 2 || dist.size() != n)
    throw std::invalid_argument("hybrid_stats: need matching inputs with n >= 2");
  // Extreme pair sums come from the two largest and two smallest densities.
  std::vector<double> sorted(rho.rho);
  std::partial_sort(sorted.begin(), sorted.begin() + 2, sorted.end());
  const double low = sorted[0] + sorted[1];
  std::partial_sort(sorted.begin(), sorted.begin() + 2, sorted.end(), std::greater<>());
  const double high = sorted[0] + sorted[1];
  return {dist.min_off_diagonal(), dist.max_off_diagonal(), low, high};
}

double hybrid_distance(std::size_t i, std::size_t j, double lambda,
                       const DensityProfile& rho, const DistanceMatrix& dist,
                       const HybridStats& stats) {
  if (i == j) throw std::invalid_argument("hybrid_distance: i and j must differ");
  check_lambda(lambda);
  const double dn = normalized(dist(i, j), stats.d_min, stats.d_max);
  const double pn = normalized(rho.rho[i] + rho.rho[j], stats.p_min, stats.p_max);
  return lambda * dn * dn + (1.0 - lambda) * pn * pn;
}

AimkModel build_aimk_model(const Dataset& data, ThresholdMode mode) {
  AimkModel model;
  model.dist = pairwise_distances(data);
  model.tree = prim_mst(model.dist);
  model.skeleton = skeleton_points(model.tree);
  model.thr_mode = mode;
  model.skeleton.threshold = threshold(model.tree, model.skeleton, mode);
  model.density = densities(build_tcg(model.dist, model.skeleton.threshold), model.dist);
  model.stats = hybrid_stats(model.dist, model.density);
  return model;
}

SeedSet select_aimk_centers(const AimkModel& model, std::size_t nc, double lambda) {
  const std::size_t n = model.dist.size();
  check_lambda(lambda);
  if (nc < 2) throw std::invalid_argument("aimk: nc must be >= 2");
  if (nc > n)
    throw std::invalid_argument("aimk: nc " + std::to_string(nc) +
                                " exceeds the number of points " + std::to_string(n));

  const auto& rho = model.density.rho;
  const auto& st = model.stats;
  SeedSet seeds{{}, lambda, SeedMethod::aimk};
  seeds.center_indices.reserve(nc);

  std::vector<char> chosen(n, 0);
  std::vector<double> min_h(n, std::numeric_limits<double>::infinity());

  std::size_t next = static_cast<std::size_t>(
      std::max_element(rho.begin(), rho.end()) - rho.begin());
  while (true) {
    seeds.center_indices.push_back(next);
    chosen[next] = 1;
    if (seeds.center_indices.size() == nc) break;

    const auto row = model.dist.row(next);
    const double rho_c = rho[next];
    for (std::size_t v = 0; v < n; ++v) {
      if (chosen[v]) continue;
      const double dn = normalized(row[v], st.d_min, st.d_max);
      const double pn = normalized(rho_c + rho[v], st.p_min, st.p_max);
      const double h = lambda * dn * dn + (1.0 - lambda) * pn * pn;
      min_h[v] = std::min(min_h[v], h);
    }
    std::size_t best = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (chosen[v]) continue;
      if (best == n || min_h[v] > min_h[best]) best = v;
    }
    next = best;
  }
  return seeds;
}

SeedSet aimk_seeds(const Dataset& data, std::size_t nc, double lambda,
                   ThresholdMode mode) {
  check_lambda(lambda);
  if (nc < 2) throw std::invalid_argument("aimk: nc must be >= 2");
  if (nc > data.size())
    throw std::invalid_argument("aimk: nc " + std::to_string(nc) +
                                " exceeds the number of points " +
                                std::to_string(data.size()));
  return select_aimk_centers(build_aimk_model(data, mode), nc, lambda);
}

SeedSet aimk_rs_seeds(const Dataset& data, std::size_t nc, double lambda,
                      std::uint64_t rng_seed, ThresholdMode mode) {
  const std::size_t m = isqrt(data.size());
  if (m < std::max<std::size_t>(nc, 2))
    throw std::invalid_argument("aimk_rs: sample of " + std::to_string(m) +
                                " points is too small for nc = " + std::to_string(nc) +
                                "; use plain aimk");
  const auto sample = random_sample(data.size(), m, rng_seed);
  const Dataset sub = data.subset(sample);
  SeedSet seeds = aimk_seeds(sub, nc, lambda, mode);
  for (auto& idx : seeds.center_indices) idx = sample[idx];
  seeds.method = SeedMethod::aimk_rs;
  return seeds;
}

SeedSet forgy_seeds(const Dataset& data, std::size_t nc, std::uint64_t rng_seed) {
  if (nc < 1 || nc > data.size())
    throw std::invalid_argument("forgy: nc must lie in [1, n]");
  return {random_sample(data.size(), nc, rng_seed), 0.0, SeedMethod::forgy};
}

SeedSet kmeanspp_seeds(const Dataset& data, std::size_t nc, std::uint64_t rng_seed) {
  const std::size_t n = data.size();
  const std::size_t dim = data.dim();
  if (nc < 1 || nc > n) throw std::invalid_argument("kmeanspp: nc must lie in [1, n]");
  const double* pts = data.coords().data();

  Rng rng(rng_seed);
  SeedSet seeds{{}, 0.0, SeedMethod::kmeanspp};
  std::size_t c = rng.uniform_index(n);
  seeds.center_indices.push_back(c);

  std::vector<double> d2(n);
  std::vector<double> tmp(n);
  std::vector<std::uint32_t> unused(n);
  kernels::nearest_centers(pts, n, pts + c * dim, 1, dim, unused.data(), d2.data());

  while (seeds.center_indices.size() < nc) {
    double total = 0.0;
    for (const double v : d2) total += v;
    if (!(total > 0.0))
      throw std::invalid_argument("kmeanspp: fewer distinct points than nc = " +
                                  std::to_string(nc));
    const double target = rng.uniform01() * total;
    double cum = 0.0;
    std::size_t pick = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (d2[i] <= 0.0) continue;
      cum += d2[i];
      pick = i;
      if (cum > target) break;
    }
    seeds.center_indices.push_back(pick);
    kernels::nearest_centers(pts, n, pts + pick * dim, 1, dim, unused.data(), tmp.data());
    for (std::size_t i = 0; i < n; ++i) d2[i] = std::min(d2[i], tmp[i]);
  }
  return seeds;
}

SeedSet maximin_seeds_from(const Dataset& data, std::size_t nc, std::size_t first) {
  const std::size_t n = data.size();
  const std::size_t dim = data.dim();
  if (nc < 1 || nc > n) throw std::invalid_argument("maximin: nc must lie in [1, n]");
  if (first >= n) throw std::invalid_argument("maximin: first center out of range");
  const double* pts = data.coords().data();

  SeedSet seeds{{first}, 0.0, SeedMethod::maximin};
  std::vector<char> chosen(n, 0);
  chosen[first] = 1;
  std::vector<double> d2(n), tmp(n);
  std::vector<std::uint32_t> unused(n);
  kernels::nearest_centers(pts, n, pts + first * dim, 1, dim, unused.data(), d2.data());

  while (seeds.center_indices.size() < nc) {
    std::size_t best = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (chosen[i]) continue;
      if (best == n || d2[i] > d2[best]) best = i;
    }
    seeds.center_indices.push_back(best);
    chosen[best] = 1;
    kernels::nearest_centers(pts, n, pts + best * dim, 1, dim, unused.data(), tmp.data());
    for (std::size_t i = 0; i < n; ++i) d2[i] = std::min(d2[i], tmp[i]);
  }
  return seeds;
}

SeedSet maximin_seeds(const Dataset& data, std::size_t nc, std::uint64_t rng_seed) {
  if (data.size() == 0) throw std::invalid_argument("maximin: empty dataset");
  Rng rng(rng_seed);
  return maximin_seeds_from(data, nc, rng.uniform_index(data.size()));
}

SeedSet make_seeds(const Dataset& data, const SeedRequest& r) {
  switch (r.method) {
    case SeedMethod::aimk: return aimk_seeds(data, r.nc, r.lambda, r.thr_mode);
    case SeedMethod::aimk_rs:
      return aimk_rs_seeds(data, r.nc, r.lambda, r.rng_seed, r.thr_mode);
    case SeedMethod::forgy: return forgy_seeds(data, r.nc, r.rng_seed);
    case SeedMethod::kmeanspp: return kmeanspp_seeds(data, r.nc, r.rng_seed);
    case SeedMethod::maximin: return maximin_seeds(data, r.nc, r.rng_seed);
  }
  throw std::invalid_argument("make_seeds: unknown method");
}

}  // namespace aimk
