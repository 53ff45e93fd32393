#include "aimk/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string_view>
#include <unordered_map>

#include "json.hpp"

namespace aimk {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_real(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
  return fields;
}

std::string line_prefix(std::size_t line) {
  return "line " + std::to_string(line) + ": ";
}

bool is_blank_or_comment(std::string_view line) {
  const auto t = trim(line);
  return t.empty() || t.front() == '#';
}

// Cholesky factor of a dim×dim SPD matrix (lower, row-major).
std::optional<std::vector<double>> cholesky(const std::vector<double>& a,
                                            std::size_t dim) {
  std::vector<double> l(dim * dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double sum = a[i * dim + j];
      for (std::size_t k = 0; k < j; ++k) sum -= l[i * dim + k] * l[j * dim + k];
      if (i == j) {
        if (!(sum > 0.0)) return std::nullopt;
        l[i * dim + i] = std::sqrt(sum);
      } else {
        l[i * dim + j] = sum / l[j * dim + j];
      }
    }
  }
  return l;
}

}  // namespace

// ---- Dataset ----------------------------------------------------------------

Dataset::Dataset(std::vector<double> coords, std::size_t dim,
                 std::optional<std::vector<std::string>> labels,
                 std::string name)
    : coords_(std::move(coords)),
      dim_(dim),
      labels_(std::move(labels)),
      name_(std::move(name)) {
  if (dim_ == 0) throw std::invalid_argument("Dataset: dimension must be >= 1");
  if (coords_.empty() || coords_.size() % dim_ != 0)
    throw std::invalid_argument("Dataset: need a positive multiple of dim coordinates");
  n_ = coords_.size() / dim_;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (!std::isfinite(coords_[i]))
      throw std::invalid_argument("Dataset: non-finite coordinate at point " +
                                  std::to_string(i / dim_));
  }
  if (labels_ && labels_->size() != n_)
    throw std::invalid_argument("Dataset: label count " +
                                std::to_string(labels_->size()) +
                                " does not match point count " +
                                std::to_string(n_));
}

const std::vector<std::string>& Dataset::labels() const {
  if (!labels_) throw std::logic_error("Dataset '" + name_ + "' has no labels");
  return *labels_;
}

std::vector<std::size_t> Dataset::label_codes() const {
  return encode_labels(labels());
}

std::size_t Dataset::num_classes() const {
  const auto codes = label_codes();
  return codes.empty() ? 0 : *std::max_element(codes.begin(), codes.end()) + 1;
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  std::vector<double> coords;
  coords.reserve(indices.size() * dim_);
  std::optional<std::vector<std::string>> labels;
  if (labels_) labels.emplace().reserve(indices.size());
  for (const auto i : indices) {
    if (i >= n_) throw std::out_of_range("Dataset::subset: index out of range");
    const auto p = point(i);
    coords.insert(coords.end(), p.begin(), p.end());
    if (labels) labels->push_back((*labels_)[i]);
  }
  return Dataset(std::move(coords), dim_, std::move(labels), name_);
}

Dataset Dataset::scaled(double factor) const {
  std::vector<double> coords(coords_);
  for (auto& c : coords) c *= factor;
  return Dataset(std::move(coords), dim_, labels_, name_);
}

std::vector<std::size_t> encode_labels(std::span<const std::string> labels) {
  std::unordered_map<std::string, std::size_t> codes;
  std::vector<std::size_t> out;
  out.reserve(labels.size());
  for (const auto& label : labels) {
    const auto [it, inserted] = codes.try_emplace(label, codes.size());
    out.push_back(it->second);
  }
  return out;
}

// ---- CSV --------------------------------------------------------------------

Dataset parse_csv(std::istream& in, std::optional<int> label_column,
                  std::string name) {
  std::vector<double> coords;
  std::vector<std::string> labels;
  std::size_t fields = 0;
  std::size_t label_index = 0;
  std::size_t rows = 0;
  bool first = true;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    const auto parts = split(line, ',');

    if (first) {
      fields = parts.size();
      if (label_column) {
        const long idx = *label_column < 0
                             ? static_cast<long>(fields) + *label_column
                             : *label_column;
        if (idx < 0 || idx >= static_cast<long>(fields))
          throw ParseError(line_prefix(line_no) + "label column " +
                               std::to_string(*label_column) +
                               " out of range for " + std::to_string(fields) +
                               " fields",
                           line_no);
        label_index = static_cast<std::size_t>(idx);
      }
      if (fields - (label_column ? 1 : 0) == 0)
        throw ParseError(line_prefix(line_no) + "no coordinate columns", line_no);
      first = false;

      bool all_text = true;
      for (std::size_t c = 0; c < fields; ++c) {
        if (label_column && c == label_index) continue;
        if (parse_real(parts[c])) all_text = false;
      }
      if (all_text) continue;  // header
    }

    if (parts.size() != fields)
      throw ParseError(line_prefix(line_no) + "expected " +
                           std::to_string(fields) + " fields, found " +
                           std::to_string(parts.size()),
                       line_no);
    for (std::size_t c = 0; c < fields; ++c) {
      if (label_column && c == label_index) {
        labels.emplace_back(parts[c]);
        continue;
      }
      const auto value = parse_real(parts[c]);
      if (!value)
        throw ParseError(line_prefix(line_no) + "non-numeric value '" +
                             std::string(parts[c]) + "' in column " +
                             std::to_string(c),
                         line_no);
      if (!std::isfinite(*value))
        throw ParseError(line_prefix(line_no) + "non-finite value in column " +
                             std::to_string(c),
                         line_no);
      coords.push_back(*value);
    }
    ++rows;
  }
  if (rows == 0) throw ParseError("empty file: no data rows", 0);

  const std::size_t dim = fields - (label_column ? 1 : 0);
  std::optional<std::vector<std::string>> maybe_labels;
  if (label_column) maybe_labels = std::move(labels);
  return Dataset(std::move(coords), dim, std::move(maybe_labels), std::move(name));
}

Dataset load_csv(const std::filesystem::path& path,
                 std::optional<int> label_column) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_csv(in, label_column, path.stem().string());
}

void write_csv(const Dataset& data, std::ostream& out) {
  char buf[64];
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto p = data.point(i);
    for (std::size_t d = 0; d < p.size(); ++d) {
      if (d) out << ',';
      const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, p[d]);
      out.write(buf, end - buf);
    }
    if (data.has_labels()) out << ',' << data.labels()[i];
    out << '\n';
  }
}

void write_csv(const Dataset& data, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_csv(data, out);
}

// ---- LIBSVM -----------------------------------------------------------------

Dataset parse_libsvm(std::istream& in, std::string name) {
  struct Row {
    std::vector<std::pair<std::size_t, double>> features;
  };
  std::vector<Row> rows;
  std::vector<std::string> labels;
  std::size_t dim = 0;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    std::istringstream tokens(line);
    std::string token;
    tokens >> token;
    labels.push_back(token);
    Row row;
    std::size_t last = 0;
    while (tokens >> token) {
      const auto colon = token.find(':');
      if (colon == std::string::npos)
        throw ParseError(line_prefix(line_no) + "expected index:value, got '" +
                             token + "'",
                         line_no);
      std::size_t index = 0;
      const std::string_view idx_text(token.data(), colon);
      const auto [ptr, ec] =
          std::from_chars(idx_text.data(), idx_text.data() + idx_text.size(), index);
      if (ec != std::errc{} || ptr != idx_text.data() + idx_text.size() || index == 0)
        throw ParseError(line_prefix(line_no) + "bad feature index in '" + token + "'",
                         line_no);
      const auto value = parse_real(std::string_view(token).substr(colon + 1));
      if (!value || !std::isfinite(*value))
        throw ParseError(line_prefix(line_no) + "bad feature value in '" + token + "'",
                         line_no);
      if (index <= last)
        throw ParseError(line_prefix(line_no) + "feature indices must be strictly increasing (" +
                             std::to_string(index) + " after " + std::to_string(last) + ")",
                         line_no);
      last = index;
      row.features.emplace_back(index, *value);
    }
    dim = std::max(dim, last);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("empty file: no data rows", 0);
  if (dim == 0) throw ParseError("no features in file", 0);

  std::vector<double> coords(rows.size() * dim, 0.0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (const auto& [index, value] : rows[i].features)
      coords[i * dim + index - 1] = value;
  }
  return Dataset(std::move(coords), dim, std::move(labels), std::move(name));
}

Dataset load_libsvm(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_libsvm(in, path.stem().string());
}

DataFormat parse_data_format(const std::string& text) {
  if (text == "csv") return DataFormat::csv;
  if (text == "libsvm") return DataFormat::libsvm;
  throw std::invalid_argument("unknown data format '" + text + "' (csv|libsvm)");
}

DataFormat guess_data_format(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".libsvm" || ext == ".svm" || ext == ".scale") return DataFormat::libsvm;
  return DataFormat::csv;
}

Dataset load_dataset(const std::filesystem::path& path, DataFormat format,
                     std::optional<int> label_column) {
  if (format == DataFormat::libsvm) return load_libsvm(path);
  return load_csv(path, label_column);
}

// ---- mixtures ---------------------------------------------------------------

Dataset generate_mixture(const MixtureSpec& spec) {
  if (spec.components.empty())
    throw std::invalid_argument("mixture: no components");
  if (spec.points_per_component == 0)
    throw std::invalid_argument("mixture: points_per_component must be >= 1");
  const std::size_t dim = spec.components.front().mean.size();
  if (dim == 0) throw std::invalid_argument("mixture: empty mean vector");

  double weight_sum = 0.0;
  std::vector<std::vector<double>> factors;
  for (std::size_t c = 0; c < spec.components.size(); ++c) {
    const auto& comp = spec.components[c];
    const std::string which = "mixture component " + std::to_string(c);
    if (!(comp.weight > 0.0)) throw std::invalid_argument(which + ": weight must be positive");
    weight_sum += comp.weight;
    if (comp.mean.size() != dim)
      throw std::invalid_argument(which + ": mean has the wrong dimension");
    if (comp.covariance.size() != dim * dim)
      throw std::invalid_argument(which + ": covariance must be " +
                                  std::to_string(dim) + "x" + std::to_string(dim));
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < i; ++j) {
        const double a = comp.covariance[i * dim + j];
        const double b = comp.covariance[j * dim + i];
        if (std::abs(a - b) > 1e-12 * std::max({1.0, std::abs(a), std::abs(b)}))
          throw std::invalid_argument(which + ": covariance is not symmetric");
      }
    auto l = cholesky(comp.covariance, dim);
    if (!l) throw std::invalid_argument(which + ": covariance is not positive definite");
    factors.push_back(std::move(*l));
  }
  if (std::abs(weight_sum - 1.0) > 1e-9)
    throw std::invalid_argument("mixture: weights must sum to 1");

  Rng rng(spec.rng_seed);
  const std::size_t n = spec.components.size() * spec.points_per_component;
  std::vector<double> coords;
  coords.reserve(n * dim);
  std::vector<std::string> labels;
  labels.reserve(n);
  std::vector<double> z(dim);
  for (std::size_t c = 0; c < spec.components.size(); ++c) {
    const auto& mean = spec.components[c].mean;
    const auto& l = factors[c];
    for (std::size_t s = 0; s < spec.points_per_component; ++s) {
      for (auto& v : z) v = rng.normal();
      for (std::size_t i = 0; i < dim; ++i) {
        double x = mean[i];
        for (std::size_t j = 0; j <= i; ++j) x += l[i * dim + j] * z[j];
        coords.push_back(x);
      }
      labels.push_back(std::to_string(c));
    }
  }
  return Dataset(std::move(coords), dim, std::move(labels), "mixture");
}

MixtureSpec separated_mixture_spec(std::size_t points_per_component,
                                   std::uint64_t seed) {
  MixtureSpec spec;
  const std::vector<double> cov{0.01, 0.0, 0.0, 0.01};
  for (const auto& mean : {std::vector<double>{0.0, 0.0}, std::vector<double>{0.0, 1.0},
                           std::vector<double>{0.5, 0.5}})
    spec.components.push_back({1.0 / 3.0, mean, cov});
  spec.points_per_component = points_per_component;
  spec.rng_seed = seed;
  return spec;
}

MixtureSpec parse_mixture_spec(const std::string& json_text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("mixture spec: ") + e.what());
  }
  try {
    MixtureSpec spec;
    for (const auto& c : j.at("components")) {
      MixtureComponent comp;
      comp.weight = c.at("weight").get<double>();
      comp.mean = c.at("mean").get<std::vector<double>>();
      const auto& cov = c.at("covariance");
      if (!cov.empty() && cov.front().is_array()) {
        for (const auto& row : cov)
          for (const auto& v : row) comp.covariance.push_back(v.get<double>());
      } else {
        comp.covariance = cov.get<std::vector<double>>();
      }
      spec.components.push_back(std::move(comp));
    }
    spec.points_per_component = j.at("points_per_component").get<std::size_t>();
    if (j.contains("seed")) spec.rng_seed = j.at("seed").get<std::uint64_t>();
    else if (j.contains("rng_seed")) spec.rng_seed = j.at("rng_seed").get<std::uint64_t>();
    return spec;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("mixture spec: ") + e.what());
  }
}

MixtureSpec load_mixture_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_mixture_spec(buf.str());
}

// ---- sampling ---------------------------------------------------------------

std::vector<std::size_t> random_sample(std::size_t n, std::size_t size,
                                       std::uint64_t rng_seed) {
  if (size < 1) throw std::invalid_argument("random_sample: size must be >= 1");
  if (size > n)
    throw std::invalid_argument("random_sample: size " + std::to_string(size) +
                                " exceeds population " + std::to_string(n));
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  Rng rng(rng_seed);
  for (std::size_t i = 0; i < size; ++i) {
    const std::size_t j = i + rng.uniform_index(n - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(size);
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::size_t isqrt(std::size_t n) {
  auto r = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace aimk
