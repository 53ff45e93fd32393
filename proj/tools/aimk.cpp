// aimk: seeding, benchmark and data-generation front end.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "aimk/bench.hpp"
#include "aimk/kernels.hpp"

namespace {

struct DataArgs {
  std::string path;
  std::string format;
  int label_column = -1;
  bool no_labels = false;
};

void add_data_args(CLI::App* cmd, DataArgs& args) {
  cmd->add_option("dataset", args.path, "CSV or LIBSVM file")->required();
  cmd->add_option("--format", args.format, "csv|libsvm (default: by extension)");
  cmd->add_option("--label-column", args.label_column,
                  "CSV label column, negative counts from the end (default -1)");
  cmd->add_flag("--no-labels", args.no_labels, "CSV has no label column");
}

aimk::Dataset load(const DataArgs& args) {
  const auto format = args.format.empty() ? aimk::guess_data_format(args.path)
                                          : aimk::parse_data_format(args.format);
  return aimk::load_dataset(args.path, format,
                           args.no_labels ? std::nullopt : std::optional<int>(args.label_column));
}

std::size_t cluster_count(const aimk::Dataset& data, std::optional<std::size_t> k) {
  if (k) return *k;
  if (!data.has_labels()) throw std::invalid_argument("--k is required for unlabeled data");
  return data.num_classes();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AIMK k-means seeding toolkit"};
  app.require_subcommand(1);
  std::string isa = "auto";
  app.add_option("--isa", isa, "distance kernels: auto|scalar|avx2");

  // bench
  auto* bench = app.add_subcommand("bench", "run a benchmark config");
  std::string config_path;
  bool no_timing = false;
  std::string bench_format, bench_output;
  bench->add_option("config", config_path, "JSON benchmark config")->required();
  bench->add_flag("--no-timing", no_timing, "omit wall-time columns (byte-stable output)");
  bench->add_option("--format", bench_format, "override output format: table|csv|json");
  bench->add_option("-o,--output", bench_output, "override output path");

  // seeds
  auto* seeds = app.add_subcommand("seeds", "print chosen seed indices");
  DataArgs seeds_data;
  add_data_args(seeds, seeds_data);
  std::string method = "aimk", thr_mode = "max", dump_mst;
  std::optional<std::size_t> seeds_k;
  std::optional<double> lambda;
  std::uint64_t seed = 1;
  seeds->add_option("--method", method, "aimk|aimk_rs|forgy|kmeanspp|maximin");
  seeds->add_option("--k", seeds_k, "number of centers (default: number of classes)");
  seeds->add_option("--lambda", lambda, "hybrid weight in [0, 1] (aimk default: both 0 and 1)");
  seeds->add_option("--thr-mode", thr_mode, "max|mean|min");
  seeds->add_option("--seed", seed, "RNG seed for stochastic methods");
  seeds->add_option("--dump-mst", dump_mst, "write MST edges (aimk only)");

  // sweep-lambda
  auto* sweep_l = app.add_subcommand("sweep-lambda", "ACC/RI/F over lambda in {0,.25,.5,.75,1}");
  DataArgs sweep_l_data;
  add_data_args(sweep_l, sweep_l_data);
  std::optional<std::size_t> sweep_l_k;
  std::string sweep_thr = "max";
  sweep_l->add_option("--k", sweep_l_k, "number of centers (default: number of classes)");
  sweep_l->add_option("--thr-mode", sweep_thr, "max|mean|min");

  // sweep-thr
  auto* sweep_t = app.add_subcommand("sweep-thr", "ACC over thr mode x lambda in {0,1}");
  DataArgs sweep_t_data;
  add_data_args(sweep_t, sweep_t_data);
  std::optional<std::size_t> sweep_t_k;
  sweep_t->add_option("--k", sweep_t_k, "number of centers (default: number of classes)");

  // gen-mixture
  auto* gen = app.add_subcommand("gen-mixture", "sample a Gaussian mixture to CSV");
  std::string spec_path, gen_output;
  gen->add_option("spec", spec_path, "JSON mixture spec")->required();
  gen->add_option("-o,--output", gen_output, "output CSV")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (isa == "auto")
      aimk::kernels::set_isa_auto();
    else
      aimk::kernels::set_isa(aimk::kernels::parse_isa(isa));

    if (*bench) {
      auto config = aimk::load_bench_config(config_path);
      if (!bench_format.empty()) config.output_format = aimk::parse_report_format(bench_format);
      if (!bench_output.empty()) config.output_path = bench_output;
      const auto report = aimk::run_benchmark(
          config, [](const std::string& msg) { std::cerr << "warning: skipped " << msg << '\n'; });
      if (report.rows.empty()) {
        std::cerr << "error: every dataset/method combination was skipped\n";
        return 2;
      }
      if (config.output_path.empty() || config.output_path == "-") {
        aimk::write_report(report, config.output_format, std::cout, !no_timing);
      } else {
        std::ofstream out(config.output_path);
        if (!out) throw std::runtime_error("cannot write " + config.output_path);
        aimk::write_report(report, config.output_format, out, !no_timing);
      }
    } else if (*seeds) {
      const auto data = load(seeds_data);
      const std::size_t k = cluster_count(data, seeds_k);
      aimk::SeedRequest req{aimk::parse_seed_method(method), k, lambda.value_or(0.0),
                            aimk::parse_threshold_mode(thr_mode), seed};
      if (!dump_mst.empty()) {
        if (req.method != aimk::SeedMethod::aimk)
          throw std::invalid_argument("--dump-mst needs --method aimk");
        const auto model = aimk::build_aimk_model(data, req.thr_mode);
        aimk::write_mst_edges(model.tree, std::filesystem::path(dump_mst));
      }
      auto print = [](const aimk::SeedSet& set) {
        for (std::size_t i = 0; i < set.center_indices.size(); ++i)
          std::cout << (i ? " " : "") << set.center_indices[i];
        std::cout << '\n';
      };
      const bool hybrid =
          req.method == aimk::SeedMethod::aimk || req.method == aimk::SeedMethod::aimk_rs;
      if (hybrid && !lambda) {
        for (const double l : {0.0, 1.0}) {
          req.lambda = l;
          std::cout << "lambda=" << l << ": ";
          print(aimk::make_seeds(data, req));
        }
      } else {
        print(aimk::make_seeds(data, req));
      }
    } else if (*sweep_l) {
      const auto data = load(sweep_l_data);
      const auto sweep = aimk::sweep_lambda(data, cluster_count(data, sweep_l_k),
                                            aimk::parse_threshold_mode(sweep_thr));
      aimk::write_lambda_sweep(sweep, std::cout);
    } else if (*sweep_t) {
      const auto data = load(sweep_t_data);
      aimk::write_threshold_sweep(aimk::sweep_threshold(data, cluster_count(data, sweep_t_k)),
                                  std::cout);
    } else if (*gen) {
      const auto data = aimk::generate_mixture(aimk::load_mixture_spec(spec_path));
      aimk::write_csv(data, std::filesystem::path(gen_output));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
