// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>

#include "aimk/bench.hpp"
#include "aimk/kernels.hpp"
#include "oracles.hpp"

using namespace aimk;
namespace fs = std::filesystem;

namespace {

const fs::path kData = AIMK_DATA_DIR;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& check) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.pass) ++failures;
  std::printf("%s  [%2d] %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", id, name.c_str(),
              o.detail.c_str(), secs);
  std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::optional<Dataset> load_named(const std::string& name) {
  const auto path = kData / (name + ".csv");
  if (!fs::exists(path)) return std::nullopt;
  const auto d = load_csv(path, -1);
  return Dataset(std::vector<double>(d.coords().begin(), d.coords().end()), d.dim(), d.labels(),
                 name);
}

std::vector<std::size_t> shuffled(Rng& rng, std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  for (std::size_t i = n - 1; i > 0; --i) std::swap(p[i], p[rng.uniform_index(i + 1)]);
  return p;
}

Dataset synthetic(std::size_t n, std::size_t p, std::uint64_t seed) {
  MixtureSpec spec;
  const std::size_t k = 4;
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<double> mean(p, 0.0), cov(p * p, 0.0);
    mean[c % p] = 3.0 * static_cast<double>(c + 1);
    for (std::size_t i = 0; i < p; ++i) cov[i * p + i] = 1.0;
    spec.components.push_back({0.25, mean, cov});
  }
  spec.points_per_component = (n + k - 1) / k;
  spec.rng_seed = seed;
  const auto full = generate_mixture(spec);
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  return full.subset(idx);
}

// ---- criteria ---------------------------------------------------------------

Outcome mst_oracle() {
  Rng rng(1001);
  const auto start = std::chrono::steady_clock::now();
  std::size_t bad = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 3 + rng.uniform_index(5);
    const std::size_t p = 1 + rng.uniform_index(3);
    const auto data = aimk::testing::random_dataset(rng, n, p, trial % 4 == 0);
    const auto dist = pairwise_distances(data);
    const double diff = std::abs(prim_mst(dist).total_weight() - aimk::testing::brute_force_mst_weight(dist));
    worst = std::max(worst, diff);
    if (diff > 1e-12) ++bad;
  }
  const double secs = seconds_since(start);
  char diff[32];
  std::snprintf(diff, sizeof diff, "%.2e", worst);
  return {bad == 0 && secs < 5.0, std::to_string(500 - bad) + "/500 match, max |diff| " + diff +
                                      ", " + fmt(secs, 2) + "s (< 5s)"};
}

Outcome l4_trace() {
  const auto data = aimk::testing::l4();
  std::vector<std::string> errors;
  const auto m = build_aimk_model(data, ThresholdMode::max);
  if (m.skeleton.skeleton != std::vector<std::size_t>{1, 2}) errors.push_back("skeleton");
  const double thr_max = threshold(m.tree, m.skeleton, ThresholdMode::max);
  const double thr_mean = threshold(m.tree, m.skeleton, ThresholdMode::mean);
  const double thr_min = threshold(m.tree, m.skeleton, ThresholdMode::min);
  if (thr_max != 4.5) errors.push_back("Thr(max)=" + fmt(thr_max));
  if (thr_mean != 2.75) errors.push_back("Thr(mean)=" + fmt(thr_mean));
  if (thr_min != 1.0) errors.push_back("Thr(min)=" + fmt(thr_min));
  const double expected_rho[4] = {2.0, 3.0 - 2e-10, 2.0, 0.0};
  for (std::size_t i = 0; i < 4; ++i)
    if (std::abs(m.density.rho[i] - expected_rho[i]) > 1e-9) errors.push_back("rho" + std::to_string(i));
  const auto s1 = select_aimk_centers(m, 2, 1.0).center_indices;
  const auto s0 = select_aimk_centers(m, 2, 0.0).center_indices;
  if (s1 != std::vector<std::size_t>{1, 3}) errors.push_back("AIMK(1)=(" + join(s1) + ")");
  if (s0 != std::vector<std::size_t>{1, 0}) errors.push_back("AIMK(0)=(" + join(s0) + ")");
  std::string detail = "S={1,2} Thr=4.5/2.75/1 rho=(" + fmt(m.density.rho[0], 10) + "," +
                       fmt(m.density.rho[1], 10) + "," + fmt(m.density.rho[2], 10) + "," +
                       fmt(m.density.rho[3], 1) + ") seeds(1)=(" + join(s1) + ") seeds(0)=(" +
                       join(s0) + ")";
  if (!errors.empty()) {
    detail = "mismatch:";
    for (const auto& e : errors) detail += " " + e;
  }
  return {errors.empty(), detail};
}

Outcome metric_oracle() {
  Rng rng(1003);
  std::size_t bad = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.uniform_index(49);
    const auto pred = aimk::testing::random_labels(rng, n, 1 + rng.uniform_index(6));
    const auto truth = aimk::testing::random_labels(rng, n, 1 + rng.uniform_index(6));
    const auto ref = aimk::testing::enumerate_pairs(pred, truth);
    const double tp = ref.tp, fp = ref.fp, fn = ref.fn, tn = ref.tn;
    const double ri_ref = (tp + tn) / (tp + fp + fn + tn);
    const double p = tp + fp > 0 ? tp / (tp + fp) : 0.0;
    const double r = tp + fn > 0 ? tp / (tp + fn) : 0.0;
    const double f_ref = p + r > 0 ? 2 * p * r / (p + r) : 0.0;
    const auto counts = pair_counts(pred, truth);
    const bool ok = std::abs(rand_index(counts) - ri_ref) <= 1e-12 &&
                    std::abs(f_measure(counts).f - f_ref) <= 1e-12 &&
                    std::abs(accuracy(pred, truth).acc - aimk::testing::brute_force_accuracy(pred, truth)) <= 1e-12;
    if (!ok) ++bad;
  }
  return {bad == 0, std::to_string(200 - bad) + "/200 instances agree (RI, F, ACC)"};
}

BenchConfig determinism_config() {
  BenchConfig c;
  for (const char* name : {"wine", "zoo", "haberman", "soybean-small"}) {
    const auto path = kData / (std::string(name) + ".csv");
    if (fs::exists(path)) c.datasets.push_back({name, path, DataFormat::csv, -1, std::nullopt});
  }
  for (const double lambda : {0.0, 1.0}) {
    c.methods.push_back({SeedMethod::aimk, lambda, ThresholdMode::max, 1, 1});
    c.methods.push_back({SeedMethod::aimk_rs, lambda, ThresholdMode::max, 10, 1});
  }
  c.methods.push_back({SeedMethod::forgy, 0.0, ThresholdMode::max, 10, 1});
  c.methods.push_back({SeedMethod::kmeanspp, 0.0, ThresholdMode::max, 10, 1});
  c.methods.push_back({SeedMethod::maximin, 0.0, ThresholdMode::max, 10, 1});
  return c;
}

Outcome determinism() {
  const auto config = determinism_config();
  std::string first_report, first_seeds;
  std::size_t identical = 0;
  for (int run = 0; run < 10; ++run) {
    std::ostringstream rep;
    for (const auto format : {ReportFormat::table, ReportFormat::csv, ReportFormat::json})
      write_report(run_benchmark(config), format, rep, /*include_timing=*/false);
    std::string seeds;
    for (const auto& entry : config.datasets) {
      const auto d = load_csv(entry.path, -1);
      for (const double l : {0.0, 1.0}) seeds += join(aimk_seeds(d, d.num_classes(), l).center_indices) + ";";
    }
    if (run == 0) {
      first_report = rep.str();
      first_seeds = seeds;
      ++identical;
    } else if (rep.str() == first_report && seeds == first_seeds) {
      ++identical;
    }
  }
  return {identical == 10, std::to_string(identical) + "/10 runs byte-identical (" +
                               std::to_string(first_report.size()) + " report bytes, " +
                               std::to_string(config.datasets.size()) + " datasets)"};
}

Outcome soybean_anchor() {
  const auto soy = load_named("soybean-small");
  if (!soy) return {false, "dataset not available at data/soybean-small.csv"};
  const auto seeds = aimk_seeds(*soy, 4, 0.0);
  const auto res = lloyd(*soy, seeds);
  const auto e = evaluate(res.assignments, soy->label_codes());
  const bool ok = soy->size() == 47 && e.acc == 1.0 && e.ri == 1.0 && e.f_measure == 1.0;
  return {ok, "n=" + std::to_string(soy->size()) + " ACC=" + fmt(e.acc) + " RI=" + fmt(e.ri) +
                  " F=" + fmt(e.f_measure) + " seeds=(" + join(seeds.center_indices) + ")"};
}

Outcome wine_anchor() {
  const auto wine = load_named("wine");
  if (!wine) return {false, "dataset not available at data/wine.csv"};
  const auto seeds = aimk_seeds(*wine, 3, 0.0);
  const auto e = evaluate(lloyd(*wine, seeds).assignments, wine->label_codes());
  const bool ok = std::abs(e.acc - 0.7022) <= 0.05;
  std::string detail = "ACC=" + fmt(e.acc) + " (target .7022 +/- .05)";
  if (!ok) detail += " seeds=(" + join(seeds.center_indices) + ")";
  return {ok, detail};
}

Outcome mixture_behaviour() {
  const double means[3][2] = {{0.0, 0.0}, {0.0, 1.0}, {0.5, 0.5}};
  std::size_t hits = 0;
  std::string first_misses;
  int shown = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto data = generate_mixture(separated_mixture_spec(20, seed));
    const auto seeds = aimk_seeds(data, 3, 0.0).center_indices;
    // One distinct seed near each component mean.
    std::vector<std::size_t> order{0, 1, 2};
    bool covered = false;
    do {
      bool all = true;
      for (std::size_t c = 0; c < 3; ++c) {
        const auto p = data.point(seeds[order[c]]);
        all &= std::hypot(p[0] - means[c][0], p[1] - means[c][1]) <= 0.3;
      }
      covered |= all;
    } while (!covered && std::next_permutation(order.begin(), order.end()));
    if (covered) {
      ++hits;
    } else if (shown < 3) {
      ++shown;
      first_misses += " seed" + std::to_string(seed) + ":(" + join(seeds) + ")";
    }
  }
  return {hits >= 80, std::to_string(hits) + "/100 generator seeds covered (need >= 80); misses e.g." +
                          first_misses};
}

Outcome lambda_endpoints() {
  std::size_t holds = 0;
  std::string detail;
  for (const auto& [name, nc] : std::vector<std::pair<std::string, std::size_t>>{
           {"soybean-small", 4}, {"zoo", 7}, {"wine", 3}, {"haberman", 2}}) {
    const auto data = load_named(name);
    if (!data) {
      detail += " " + name + "=n/a";
      continue;
    }
    const auto sweep = sweep_lambda(*data, nc);
    double best = 0.0;
    for (const auto& c : sweep.cells) best = std::max(best, c.eval.acc);
    const double ends = std::max(sweep.cells.front().eval.acc, sweep.cells.back().eval.acc);
    const bool ok = ends >= best - 0.01;
    holds += ok;
    detail += " " + name + "=" + (ok ? "ok" : "violated") + "(" + fmt(ends) + "/" + fmt(best) + ")";
  }
  return {holds >= 3, std::to_string(holds) + "/4 datasets hold (need >= 3):" + detail};
}

Outcome scaling() {
  auto seed_evals = [](const Dataset& d, SeedMethod method) {
    kernels::DistanceCounter counter;
    make_seeds(d, SeedRequest{method, 3, 0.0, ThresholdMode::max, 7});
    return static_cast<double>(counter.count());
  };
  const double rs10 = seed_evals(synthetic(10000, 8, 1), SeedMethod::aimk_rs);
  const double rs40 = seed_evals(synthetic(40000, 8, 2), SeedMethod::aimk_rs);
  const double a2 = seed_evals(synthetic(2000, 8, 3), SeedMethod::aimk);
  const double a4 = seed_evals(synthetic(4000, 8, 4), SeedMethod::aimk);

  const auto big = synthetic(100000, 20, 5);
  const auto start = std::chrono::steady_clock::now();
  const auto seeds = aimk_rs_seeds(big, 3, 0.0, 11);
  const auto res = lloyd(big, seeds);
  const double secs = seconds_since(start);

  const double rs_ratio = rs40 / rs10, a_ratio = a4 / a2;
  const bool ok = rs_ratio <= 5.0 && a_ratio >= 3.5 && secs < 30.0;
  return {ok, "AIMK-RS 40k/10k = " + fmt(rs_ratio, 3) + " (<= 5), AIMK 4k/2k = " + fmt(a_ratio, 3) +
                  " (>= 3.5), AIMK-RS+Lloyd n=100000 p=20 " + fmt(secs, 2) + "s (< 30s, " +
                  std::to_string(res.iterations) + " Lloyd iterations)"};
}

Outcome lloyd_monotone() {
  auto config = determinism_config();
  config.methods.push_back({SeedMethod::aimk, 0.5, ThresholdMode::mean, 1, 1});
  config.methods.push_back({SeedMethod::aimk, 0.25, ThresholdMode::min, 1, 1});
  const auto report = run_benchmark(config);
  std::size_t runs = 0, violations = 0;
  for (const auto& row : report.rows) {
    runs += row.repeats;
    violations += row.sse_increases;
  }
  // Mixture and synthetic runs on top of the benchmark datasets.
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto data = generate_mixture(separated_mixture_spec(20, seed));
    for (const auto method : {SeedMethod::aimk, SeedMethod::forgy, SeedMethod::kmeanspp}) {
      violations += lloyd(data, make_seeds(data, {method, 3, 0.0, ThresholdMode::max, seed})).sse_increases;
      ++runs;
    }
  }
  return {violations == 0 && runs > 0,
          std::to_string(violations) + " SSE increases over " + std::to_string(runs) + " Lloyd runs"};
}

// ---- property suites --------------------------------------------------------

Outcome hybrid_properties() {
  Rng rng(2001);
  std::size_t bad = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 3 + rng.uniform_index(18);
    const auto data = aimk::testing::random_dataset(rng, n, 1 + rng.uniform_index(3), trial % 3 == 0);
    const auto m = build_aimk_model(data);
    const double lambda = trial % 5 == 0 ? static_cast<double>(trial % 2) : rng.uniform01();
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double a = hybrid_distance(i, j, lambda, m.density, m.dist, m.stats);
        const double b = hybrid_distance(j, i, lambda, m.density, m.dist, m.stats);
        if (a != b || a < 0.0 || a > 1.0) ok = false;
      }
    bad += !ok;
  }
  return {bad == 0, std::to_string(1000 - bad) + "/1000 instances symmetric with 0 <= H <= 1"};
}

Outcome scale_invariance() {
  Rng rng(2003);
  std::size_t bad = 0;
  std::string example;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 4 + rng.uniform_index(30);
    const auto data = aimk::testing::random_dataset(rng, n, 1 + rng.uniform_index(4));
    const double c = std::exp(rng.uniform01() * 6.0 - 3.0);
    const std::size_t nc = 2 + rng.uniform_index(3);
    const double lambda = static_cast<double>(rng.uniform_index(2));
    const auto a = aimk_seeds(data, nc, lambda).center_indices;
    const auto b = aimk_seeds(data.scaled(c), nc, lambda).center_indices;
    if (a != b) {
      if (bad == 0) example = " first miss: trial " + std::to_string(trial) + " c=" + fmt(c, 6) +
                              " (" + join(a) + ") vs (" + join(b) + ")";
      ++bad;
    }
  }
  return {bad == 0, std::to_string(1000 - bad) + "/1000 instances keep AIMK indices under scaling" + example};
}

Outcome degree_partition() {
  Rng rng(2005);
  std::size_t bad = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + rng.uniform_index(60);
    const auto tree = aimk::testing::random_tree(rng, n);
    const auto s = skeleton_points(tree);
    std::size_t total = 0;
    bool ok = true;
    for (const auto& [deg, members] : s.degree_sets) {
      total += members.size();
      ok &= s.adjacency_counts.at(deg) <= n - members.size();
    }
    ok &= total == n;
    ok &= s.adjacency_counts.at(1) <= s.degree_sets.at(1).size();
    bad += !ok;
  }
  return {bad == 0, std::to_string(1000 - bad) + "/1000 random trees satisfy sum|U_i| = n, f_i <= |W_i|, f_1 <= |U_1|"};
}

Outcome pair_total() {
  Rng rng(2007);
  std::size_t bad = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng.uniform_index(500);
    const auto pred = aimk::testing::random_labels(rng, n, 1 + rng.uniform_index(10));
    const auto truth = aimk::testing::random_labels(rng, n, 1 + rng.uniform_index(10));
    bad += pair_counts(pred, truth).total() != n * (n - 1) / 2;
  }
  return {bad == 0, std::to_string(1000 - bad) + "/1000 instances have tp+fp+fn+tn = C(n,2)"};
}

Outcome permutation_invariance() {
  Rng rng(2009);
  std::size_t bad = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + rng.uniform_index(80);
    const std::size_t kp = 1 + rng.uniform_index(6), kt = 1 + rng.uniform_index(6);
    const auto pred = aimk::testing::random_labels(rng, n, kp);
    const auto truth = aimk::testing::random_labels(rng, n, kt);
    const auto pp = shuffled(rng, kp), pt = shuffled(rng, kt);
    auto p2 = pred, t2 = truth;
    for (auto& v : p2) v = pp[v] * 3 + 1;
    for (auto& v : t2) v = pt[v];
    const auto a = evaluate(pred, truth), b = evaluate(p2, t2);
    bad += a.acc != b.acc || a.ri != b.ri || a.f_measure != b.f_measure;
  }
  return {bad == 0, std::to_string(1000 - bad) + "/1000 relabelings leave ACC, RI, F unchanged"};
}

}  // namespace

int main() {
  std::printf("distance kernels: %s\n", std::string(kernels::isa_name(kernels::active_isa())).c_str());
  report(1, "MST oracle", mst_oracle);
  report(2, "L4 pipeline trace", l4_trace);
  report(3, "metric oracle", metric_oracle);
  report(4, "determinism", determinism);
  report(5, "Soybean-small anchor (AIMK lambda=0 -> ACC=RI=F=1)", soybean_anchor);
  report(5, "Wine anchor (AIMK lambda=0 ACC ~ .7022)", wine_anchor);
  report(6, "separated mixture seeds near component means", mixture_behaviour);
  report(7, "lambda endpoints attain best ACC", lambda_endpoints);
  report(8, "complexity scaling", scaling);
  report(9, "Lloyd SSE monotonicity", lloyd_monotone);
  report(10, "property: H symmetry and range", hybrid_properties);
  report(10, "property: AIMK index scale invariance", scale_invariance);
  report(10, "property: degree partition identities", degree_partition);
  report(10, "property: pair-count total", pair_total);
  report(10, "property: index permutation invariance", permutation_invariance);
  std::printf("%d check(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
