#include "aimk/bench.hpp"

#include <chrono>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "aimk/kernels.hpp"
#include "json.hpp"

namespace aimk {

using nlohmann::json;

std::string to_string(ReportFormat format) {
  switch (format) {
    case ReportFormat::table: return "table";
    case ReportFormat::csv: return "csv";
    case ReportFormat::json: return "json";
  }
  return "?";
}

ReportFormat parse_report_format(const std::string& text) {
  if (text == "table") return ReportFormat::table;
  if (text == "csv") return ReportFormat::csv;
  if (text == "json") return ReportFormat::json;
  throw std::invalid_argument("unknown report format '" + text + "' (table|csv|json)");
}

void validate(const BenchConfig& config) {
  if (config.datasets.empty()) throw std::invalid_argument("no datasets configured");
  if (config.methods.empty()) throw std::invalid_argument("no methods configured");
  for (const auto& m : config.methods) {
    const std::string tag = to_string(m.method);
    if (m.repeats < 1) throw std::invalid_argument(tag + ": repeats must be >= 1");
    if (m.method == SeedMethod::aimk && m.repeats != 1)
      throw std::invalid_argument("aimk is deterministic and requires repeats = 1");
    if (!(m.lambda >= 0.0 && m.lambda <= 1.0))
      throw std::invalid_argument(tag + ": lambda must lie in [0, 1]");
  }
  if (config.kmeans.max_iter < 1) throw std::invalid_argument("kmeans.max_iter must be >= 1");
  if (!(config.kmeans.shift_tol >= 0.0))
    throw std::invalid_argument("kmeans.shift_tol must be >= 0");
}

BenchConfig parse_bench_config(const std::string& json_text,
                               const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(json_text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }

  BenchConfig config;
  try {
    for (const auto& d : j.value("datasets", json::array())) {
      DatasetEntry entry;
      entry.path = d.at("path").get<std::string>();
      if (entry.path.is_relative() && !base_dir.empty()) entry.path = base_dir / entry.path;
      entry.name = d.value("name", entry.path.stem().string());
      entry.format = d.contains("format")
                         ? parse_data_format(d.at("format").get<std::string>())
                         : guess_data_format(entry.path);
      if (d.contains("label_column") && !d.at("label_column").is_null())
        entry.label_column = d.at("label_column").get<int>();
      if (d.contains("k")) entry.k = d.at("k").get<std::size_t>();
      config.datasets.push_back(std::move(entry));
    }
    for (const auto& m : j.value("methods", json::array())) {
      MethodEntry base;
      base.method = parse_seed_method(m.at("method").get<std::string>());
      base.thr_mode = parse_threshold_mode(m.value("thr_mode", std::string("max")));
      base.repeats = m.value("repeats", is_stochastic(base.method) ? std::size_t{10} : std::size_t{1});
      base.rng_seed = m.value("seed", std::uint64_t{1});
      std::vector<double> lambdas{0.0};
      if (base.method == SeedMethod::aimk || base.method == SeedMethod::aimk_rs)
        lambdas = {0.0, 1.0};
      if (m.contains("lambda")) {
        const auto& l = m.at("lambda");
        lambdas = l.is_array() ? l.get<std::vector<double>>()
                               : std::vector<double>{l.get<double>()};
      }
      for (const double lambda : lambdas) {
        MethodEntry entry = base;
        entry.lambda = lambda;
        config.methods.push_back(entry);
      }
    }
    if (j.contains("kmeans")) {
      const auto& k = j.at("kmeans");
      config.kmeans.max_iter = k.value("max_iter", config.kmeans.max_iter);
      config.kmeans.shift_tol = k.value("shift_tol", config.kmeans.shift_tol);
    }
    if (j.contains("output")) {
      const auto& o = j.at("output");
      config.output_format = parse_report_format(o.value("format", std::string("table")));
      config.output_path = o.value("path", std::string{});
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  validate(config);
  return config;
}

BenchConfig load_bench_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_bench_config(buf.str(), path.parent_path());
}

namespace {

Summary summarize(const std::vector<double>& values) {
  Summary s;
  if (values.empty()) return s;
  for (const double v : values) s.mean += v;
  s.mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (const double v : values) var += (v - s.mean) * (v - s.mean);
  s.std = std::sqrt(var / static_cast<double>(values.size()));
  return s;
}

std::string shortest(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string fixed(double v, int digits = 4) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

std::string join_indices(const std::vector<std::size_t>& idx, char sep) {
  std::string out;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(idx[i]);
  }
  return out;
}

}  // namespace

BenchRow run_method(const Dataset& data, std::size_t nc, const MethodEntry& method,
                    const LloydOptions& kmeans) {
  if (!data.has_labels())
    throw std::invalid_argument("dataset '" + data.name() + "' has no labels");
  const auto truth = data.label_codes();

  BenchRow row;
  row.dataset = data.name();
  row.method = method.method;
  row.lambda = method.lambda;
  row.thr_mode = method.thr_mode;
  row.nc = nc;
  row.repeats = method.repeats;

  std::vector<double> acc, ri, f, sse;
  double seed_evals = 0.0, lloyd_evals = 0.0;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t r = 0; r < method.repeats; ++r) {
    SeedRequest req{method.method, nc, method.lambda, method.thr_mode, method.rng_seed + r};
    kernels::DistanceCounter seed_counter;
    const SeedSet seeds = make_seeds(data, req);
    seed_evals += static_cast<double>(seed_counter.count());

    kernels::DistanceCounter lloyd_counter;
    const auto result = lloyd(data, seeds, kmeans);
    lloyd_evals += static_cast<double>(lloyd_counter.count());

    const auto eval = evaluate(result.assignments, truth);
    acc.push_back(eval.acc);
    ri.push_back(eval.ri);
    f.push_back(eval.f_measure);
    sse.push_back(result.sse);
    row.sse_increases += result.sse_increases;
    if (r == 0) row.first_seeds = seeds.center_indices;
  }
  const auto stop = std::chrono::steady_clock::now();
  const double reps = static_cast<double>(method.repeats);
  row.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count() / reps;
  row.seed_distance_evals = seed_evals / reps;
  row.lloyd_distance_evals = lloyd_evals / reps;
  row.acc = summarize(acc);
  row.ri = summarize(ri);
  row.f = summarize(f);
  row.sse = summarize(sse);
  return row;
}

BenchReport run_benchmark(const BenchConfig& config, const WarningSink& warn) {
  validate(config);
  BenchReport report;
  auto skip = [&](const std::string& what) {
    report.skipped.push_back(what);
    if (warn) warn(what);
  };

  for (const auto& entry : config.datasets) {
    std::optional<Dataset> data;
    try {
      data.emplace(load_dataset(entry.path, entry.format, entry.label_column));
    } catch (const std::exception& e) {
      skip(entry.name + ": " + e.what());
      continue;
    }
    if (!data->has_labels()) {
      skip(entry.name + ": no label column; evaluation needs ground truth");
      continue;
    }
    const Dataset named(std::vector<double>(data->coords().begin(), data->coords().end()),
                        data->dim(), data->labels(), entry.name);
    const std::size_t nc = entry.k.value_or(named.num_classes());
    for (const auto& method : config.methods) {
      try {
        report.rows.push_back(run_method(named, nc, method, config.kmeans));
      } catch (const std::invalid_argument& e) {
        skip(entry.name + "/" + to_string(method.method) + ": " + e.what());
      }
    }
  }
  return report;
}

void write_report(const BenchReport& report, ReportFormat format, std::ostream& out,
                  bool include_timing) {
  switch (format) {
    case ReportFormat::json: {
      for (const auto& r : report.rows) {
        json j{{"dataset", r.dataset},
               {"method", to_string(r.method)},
               {"lambda", r.lambda},
               {"thr_mode", to_string(r.thr_mode)},
               {"nc", r.nc},
               {"repeats", r.repeats},
               {"acc", r.acc.mean},
               {"acc_std", r.acc.std},
               {"ri", r.ri.mean},
               {"ri_std", r.ri.std},
               {"f", r.f.mean},
               {"f_std", r.f.std},
               {"sse", r.sse.mean},
               {"seed_distance_evals", r.seed_distance_evals},
               {"lloyd_distance_evals", r.lloyd_distance_evals},
               {"sse_increases", r.sse_increases},
               {"seeds", r.first_seeds}};
        if (include_timing) j["wall_ms"] = r.wall_ms;
        out << j.dump() << '\n';
      }
      break;
    }
    case ReportFormat::csv: {
      out << "dataset,method,lambda,thr_mode,nc,repeats,acc,acc_std,ri,ri_std,f,f_std,"
             "sse,seed_distance_evals,lloyd_distance_evals,sse_increases,seeds";
      if (include_timing) out << ",wall_ms";
      out << '\n';
      for (const auto& r : report.rows) {
        out << r.dataset << ',' << to_string(r.method) << ',' << shortest(r.lambda) << ','
            << to_string(r.thr_mode) << ',' << r.nc << ',' << r.repeats << ','
            << shortest(r.acc.mean) << ',' << shortest(r.acc.std) << ','
            << shortest(r.ri.mean) << ',' << shortest(r.ri.std) << ','
            << shortest(r.f.mean) << ',' << shortest(r.f.std) << ','
            << shortest(r.sse.mean) << ',' << shortest(r.seed_distance_evals) << ','
            << shortest(r.lloyd_distance_evals) << ',' << r.sse_increases << ','
            << join_indices(r.first_seeds, ' ');
        if (include_timing) out << ',' << shortest(r.wall_ms);
        out << '\n';
      }
      break;
    }
    case ReportFormat::table: {
      std::vector<std::vector<std::string>> cells;
      std::vector<std::string> header{"dataset", "method", "lambda", "thr", "nc", "reps",
                                      "ACC", "RI", "F", "SSE", "seed_dists", "lloyd_dists"};
      if (include_timing) header.push_back("ms");
      cells.push_back(header);
      for (const auto& r : report.rows) {
        auto stat = [&](const Summary& s) {
          return r.repeats > 1 ? fixed(s.mean) + "±" + fixed(s.std) : fixed(s.mean);
        };
        const bool hybrid = r.method == SeedMethod::aimk || r.method == SeedMethod::aimk_rs;
        std::vector<std::string> line{r.dataset, to_string(r.method),
                                      hybrid ? fixed(r.lambda, 2) : "-",
                                      hybrid ? to_string(r.thr_mode) : "-", std::to_string(r.nc),
                                      std::to_string(r.repeats), stat(r.acc), stat(r.ri),
                                      stat(r.f), fixed(r.sse.mean, 3),
                                      fixed(r.seed_distance_evals, 0),
                                      fixed(r.lloyd_distance_evals, 0)};
        if (include_timing) line.push_back(fixed(r.wall_ms, 2));
        cells.push_back(std::move(line));
      }
      // "±" is two bytes but one column wide.
      auto width = [](const std::string& s) {
        std::size_t w = 0;
        for (const unsigned char ch : s) w += (ch & 0xC0) != 0x80;
        return w;
      };
      std::vector<std::size_t> widths(header.size(), 0);
      for (const auto& line : cells)
        for (std::size_t c = 0; c < line.size(); ++c) widths[c] = std::max(widths[c], width(line[c]));
      for (const auto& line : cells) {
        for (std::size_t c = 0; c < line.size(); ++c) {
          if (c) out << "  ";
          out << line[c];
          if (c + 1 < line.size()) out << std::string(widths[c] - width(line[c]), ' ');
        }
        out << '\n';
      }
      for (const auto& s : report.skipped) out << "# skipped " << s << '\n';
      break;
    }
  }
}

// ---- sweeps -----------------------------------------------------------------

namespace {

SweepCell run_cell(const Dataset& data, const AimkModel& model,
                   const std::vector<std::size_t>& truth, std::size_t nc, double lambda,
                   const LloydOptions& kmeans) {
  SweepCell cell;
  cell.lambda = lambda;
  cell.thr_mode = model.thr_mode;
  const auto seeds = select_aimk_centers(model, nc, lambda);
  cell.seeds = seeds.center_indices;
  const auto result = lloyd(data, seeds, kmeans);
  cell.sse_increases = result.sse_increases;
  cell.eval = evaluate(result.assignments, truth);
  return cell;
}

void require_labels(const Dataset& data) {
  if (!data.has_labels())
    throw std::invalid_argument("sweep needs a labeled dataset ('" + data.name() + "')");
}

}  // namespace

LambdaSweep sweep_lambda(const Dataset& data, std::size_t nc, ThresholdMode mode,
                         const LloydOptions& kmeans) {
  require_labels(data);
  const auto truth = data.label_codes();
  const AimkModel model = build_aimk_model(data, mode);

  LambdaSweep sweep;
  for (const double lambda : kSweepLambdas)
    sweep.cells.push_back(run_cell(data, model, truth, nc, lambda, kmeans));

  for (std::size_t index = 0; index < 3; ++index) {
    auto score = [&](const SweepCell& c) {
      return index == 0 ? c.eval.acc : index == 1 ? c.eval.ri : c.eval.f_measure;
    };
    double best = -1.0;
    for (const auto& c : sweep.cells) best = std::max(best, score(c));
    for (const auto& c : sweep.cells)
      if (score(c) == best) sweep.argmax[index].push_back(c.lambda);
    sweep.endpoint_attains_max[index] =
        score(sweep.cells.front()) == best || score(sweep.cells.back()) == best;
  }
  return sweep;
}

ThresholdSweep sweep_threshold(const Dataset& data, std::size_t nc,
                               const LloydOptions& kmeans) {
  require_labels(data);
  const auto truth = data.label_codes();
  ThresholdSweep sweep;
  const ThresholdMode modes[3] = {ThresholdMode::min, ThresholdMode::mean, ThresholdMode::max};
  for (std::size_t m = 0; m < 3; ++m) {
    const AimkModel model = build_aimk_model(data, modes[m]);
    sweep.cells[m][0] = run_cell(data, model, truth, nc, 0.0, kmeans);
    sweep.cells[m][1] = run_cell(data, model, truth, nc, 1.0, kmeans);
  }
  return sweep;
}

void write_lambda_sweep(const LambdaSweep& sweep, std::ostream& out) {
  const char* names[3] = {"ACC", "RI", "F"};
  out << std::left << std::setw(6) << "index";
  for (const auto& c : sweep.cells) out << std::setw(13) << ("lambda=" + shortest(c.lambda));
  out << "endpoint-max\n";
  for (std::size_t index = 0; index < 3; ++index) {
    out << std::setw(6) << names[index];
    for (const auto& c : sweep.cells) {
      const double v = index == 0 ? c.eval.acc : index == 1 ? c.eval.ri : c.eval.f_measure;
      bool is_max = false;
      for (const double l : sweep.argmax[index]) is_max |= l == c.lambda;
      out << std::setw(13) << (fixed(v) + (is_max ? "*" : ""));
    }
    out << (sweep.endpoint_attains_max[index] ? "yes" : "NO (flagged)") << '\n';
  }
  for (const auto& c : sweep.cells)
    out << "seeds lambda=" << shortest(c.lambda) << ": " << join_indices(c.seeds, ' ') << '\n';
}

void write_threshold_sweep(const ThresholdSweep& sweep, std::ostream& out) {
  const char* modes[3] = {"min", "mean", "max"};
  out << "thr    ACC(lambda=0)/ACC(lambda=1)\n";
  for (std::size_t m = 0; m < 3; ++m) {
    out << std::left << std::setw(6) << modes[m] << ' ' << fixed(sweep.cells[m][0].eval.acc)
        << '/' << fixed(sweep.cells[m][1].eval.acc) << '\n';
  }
}

}  // namespace aimk
