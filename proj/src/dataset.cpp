#include "gbrvfl/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "gbrvfl/rng.hpp"

namespace gbrvfl {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  std::stringstream ss(line);
  while (std::getline(ss, cur, ',')) cells.push_back(trim(cur));
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  const char* begin = s.data();
  const char* end = begin + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc() || ptr != end) return false;
  return std::isfinite(out);
}

// largest-remainder apportionment of `total` across classes proportional to
// their sizes; ties on the remainder go to the smaller class index
std::vector<int> apportion(const std::vector<int>& class_sizes, double fraction, int total) {
  int c = static_cast<int>(class_sizes.size());
  std::vector<int> take(c);
  std::vector<std::pair<double, int>> remainder(c);
  int assigned = 0;
  for (int i = 0; i < c; ++i) {
    double exact = fraction * class_sizes[i];
    take[i] = static_cast<int>(std::floor(exact));
    remainder[i] = {exact - take[i], i};
    assigned += take[i];
  }
  std::sort(remainder.begin(), remainder.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first > y.first;
    return x.second < y.second;
  });
  for (int i = 0; assigned < total && i < c; ++i) {
    int cls = remainder[i].second;
    if (take[cls] < class_sizes[cls]) {
      ++take[cls];
      ++assigned;
    }
  }
  return take;
}

Dataset subset(const Dataset& d, const std::vector<int>& rows) {
  Dataset out;
  out.features = Matrix(rows.size(), d.cols());
  out.labels.resize(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    out.features.row(i) = d.features.row(rows[i]);
    out.labels[i] = d.labels[rows[i]];
  }
  out.class_count = d.class_count;
  out.feature_names = d.feature_names;
  out.class_names = d.class_names;
  return out;
}

}  // namespace

const char* norm_method_name(NormMethod m) {
  switch (m) {
    case NormMethod::None: return "none";
    case NormMethod::Zscore: return "zscore";
    case NormMethod::Minmax: return "minmax";
  }
  return "?";
}

NormMethod norm_method_from_name(const std::string& name) {
  if (name == "none") return NormMethod::None;
  if (name == "zscore") return NormMethod::Zscore;
  if (name == "minmax") return NormMethod::Minmax;
  throw Error(ErrorKind::InvalidArgument, "unknown normalization method: " + name);
}

Dataset load_csv(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::MissingFile, "cannot open file: " + path);

  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    rows.push_back(split_line(line));
  }

  Dataset d;
  size_t start = 0;
  if (options.has_header) {
    if (rows.empty()) throw Error(ErrorKind::CorruptFile, "header-only file: " + path);
    start = 1;
  }
  if (rows.size() <= start) throw Error(ErrorKind::CorruptFile, "no data rows in " + path);

  size_t width = rows[start].size();
  for (size_t i = start; i < rows.size(); ++i) {
    if (rows[i].size() != width)
      throw Error(ErrorKind::RaggedRows,
                  "row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                      " columns, expected " + std::to_string(width));
  }
  if (width < 2)
    throw Error(ErrorKind::CorruptFile, "need at least one feature and the label column");

  size_t label_col = options.label_column < 0 ? width - 1 : static_cast<size_t>(options.label_column);
  if (label_col >= width)
    throw Error(ErrorKind::InvalidArgument, "label column out of range");

  if (options.has_header) {
    for (size_t j = 0; j < width; ++j)
      if (j != label_col) d.feature_names.push_back(rows[0][j]);
  }

  size_t m = rows.size() - start;
  size_t p = width - 1;
  d.features = Matrix(m, p);
  d.labels.resize(m);
  std::map<std::string, int> label_ids;

  for (size_t i = 0; i < m; ++i) {
    const auto& cells = rows[i + start];
    size_t jj = 0;
    for (size_t j = 0; j < width; ++j) {
      if (j == label_col) continue;
      double v;
      if (!parse_double(cells[j], v))
        throw Error(ErrorKind::NonNumericFeature,
                    "non-numeric feature '" + cells[j] + "' at row " + std::to_string(i + 1) +
                        ", column " + std::to_string(j + 1));
      d.features(i, jj++) = v;
    }
    const std::string& token = cells[label_col];
    auto it = label_ids.find(token);
    if (it == label_ids.end()) {
      it = label_ids.emplace(token, static_cast<int>(d.class_names.size())).first;
      d.class_names.push_back(token);
    }
    d.labels[i] = it->second;
  }
  d.class_count = static_cast<int>(d.class_names.size());
  if (d.class_count < 2)
    throw Error(ErrorKind::SingleClass, "dataset has a single class: " + path);
  return d;
}

Matrix one_hot(const Dataset& d) {
  Matrix z = Matrix::Zero(d.rows(), d.class_count);
  for (Eigen::Index i = 0; i < d.rows(); ++i) z(i, d.labels[i]) = 1.0;
  return z;
}

std::pair<Dataset, Dataset> train_test_split(const Dataset& d, const SplitSpec& s) {
  if (s.train_fraction <= 0.0 || s.train_fraction >= 1.0)
    throw Error(ErrorKind::InvalidArgument, "train_fraction must be in (0,1)");
  int m = static_cast<int>(d.rows());
  int target = static_cast<int>(std::llround(s.train_fraction * m));
  SplitMix64 g(s.seed);

  std::vector<int> train_rows, test_rows;
  if (s.stratified) {
    std::vector<std::vector<int>> by_class(d.class_count);
    for (int i = 0; i < m; ++i) by_class[d.labels[i]].push_back(i);
    std::vector<int> sizes;
    for (auto& v : by_class) {
      if (static_cast<int>(v.size()) < 2)
        throw Error(ErrorKind::TooFewSamples,
                    "stratified split needs at least 2 samples per class");
      sizes.push_back(static_cast<int>(v.size()));
    }
    auto take = apportion(sizes, s.train_fraction, target);
    for (int c = 0; c < d.class_count; ++c) {
      auto& idx = by_class[c];
      // Fisher-Yates
      for (size_t i = idx.size(); i > 1; --i) std::swap(idx[i - 1], idx[g.next_below(i)]);
      for (size_t i = 0; i < idx.size(); ++i)
        (static_cast<int>(i) < take[c] ? train_rows : test_rows).push_back(idx[i]);
    }
  } else {
    std::vector<int> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    for (size_t i = idx.size(); i > 1; --i) std::swap(idx[i - 1], idx[g.next_below(i)]);
    for (int i = 0; i < m; ++i) (i < target ? train_rows : test_rows).push_back(idx[i]);
  }
  std::sort(train_rows.begin(), train_rows.end());
  std::sort(test_rows.begin(), test_rows.end());
  return {subset(d, train_rows), subset(d, test_rows)};
}

Dataset inject_label_noise(const Dataset& d, const NoiseSpec& n) {
  if (n.rate < 0.0 || n.rate >= 1.0)
    throw Error(ErrorKind::InvalidArgument, "noise rate must be in [0,1)");
  Dataset out = d;
  int m = static_cast<int>(d.rows());
  int flips = static_cast<int>(std::llround(n.rate * m));
  if (flips == 0) return out;

  SplitMix64 g(n.seed);
  // partial Fisher-Yates to draw `flips` distinct indices
  std::vector<int> idx(m);
  std::iota(idx.begin(), idx.end(), 0);
  for (int i = 0; i < flips; ++i) {
    int j = i + static_cast<int>(g.next_below(m - i));
    std::swap(idx[i], idx[j]);
  }
  for (int i = 0; i < flips; ++i) {
    int row = idx[i];
    int old = out.labels[row];
    int r = static_cast<int>(g.next_below(d.class_count - 1));
    out.labels[row] = r + (r >= old ? 1 : 0);
  }
  return out;
}

Dataset synthesize(const SynthSpec& spec) {
  if (spec.n_samples < 2 * spec.n_classes)
    throw Error(ErrorKind::InvalidArgument, "n_samples must be at least 2 per class");
  if (spec.n_features < 1 || spec.n_classes < 2 || spec.n_clusters_per_class < 1 ||
      spec.class_separation <= 0.0)
    throw Error(ErrorKind::InvalidArgument, "invalid synthesis spec");

  Dataset d;
  d.features = Matrix(spec.n_samples, spec.n_features);
  d.labels.resize(spec.n_samples);
  d.class_count = spec.n_classes;
  for (int c = 0; c < spec.n_classes; ++c) d.class_names.push_back("c" + std::to_string(c));

  // Class c lives at offset c*sep along axis 0; its clusters are spread along
  // axis 1. Unit-variance isotropic noise, so class_separation is in sigma.
  SplitMix64 g(spec.seed);
  for (int i = 0; i < spec.n_samples; ++i) {
    int cls = i % spec.n_classes;
    int cluster = (i / spec.n_classes) % spec.n_clusters_per_class;
    d.labels[i] = cls;
    for (int j = 0; j < spec.n_features; ++j) {
      double mu = 0.0;
      if (j == 0) mu = cls * spec.class_separation;
      if (j == 1 && spec.n_features > 1) mu = cluster * spec.class_separation;
      d.features(i, j) = mu + g.next_gaussian();
    }
  }
  return d;
}

std::pair<Dataset, NormStats> normalize(const Dataset& d, NormMethod method) {
  NormStats stats;
  stats.method = method;
  int p = static_cast<int>(d.cols());
  stats.a.resize(p, 0.0);
  stats.b.resize(p, 0.0);
  stats.degenerate.assign(p, false);

  if (method == NormMethod::None) {
    stats.degenerate.assign(p, true);
    return {d, stats};
  }
  for (int j = 0; j < p; ++j) {
    if (method == NormMethod::Zscore) {
      double mean = d.features.col(j).mean();
      double var = (d.features.col(j).array() - mean).square().sum() /
                   std::max<Eigen::Index>(1, d.rows() - 1);
      double sd = std::sqrt(var);
      stats.a[j] = mean;
      stats.b[j] = sd;
      stats.degenerate[j] = !(sd > 0.0);
    } else {
      double lo = d.features.col(j).minCoeff();
      double hi = d.features.col(j).maxCoeff();
      stats.a[j] = lo;
      stats.b[j] = hi;
      stats.degenerate[j] = !(hi > lo);
    }
  }
  return {normalize_with(d, stats), stats};
}

Dataset normalize_with(const Dataset& d, const NormStats& stats) {
  if (stats.method == NormMethod::None) return d;
  if (static_cast<size_t>(d.cols()) != stats.a.size())
    throw Error(ErrorKind::DimensionMismatch, "normalization stats do not match feature count");
  Dataset out = d;
  for (int j = 0; j < d.cols(); ++j) {
    if (stats.degenerate[j]) continue;
    if (stats.method == NormMethod::Zscore)
      out.features.col(j) = (d.features.col(j).array() - stats.a[j]) / stats.b[j];
    else
      out.features.col(j) = (d.features.col(j).array() - stats.a[j]) / (stats.b[j] - stats.a[j]);
  }
  return out;
}

Dataset denormalize(const Dataset& d, const NormStats& stats) {
  if (stats.method == NormMethod::None) return d;
  if (static_cast<size_t>(d.cols()) != stats.a.size())
    throw Error(ErrorKind::DimensionMismatch, "normalization stats do not match feature count");
  Dataset out = d;
  for (int j = 0; j < d.cols(); ++j) {
    if (stats.degenerate[j]) continue;
    if (stats.method == NormMethod::Zscore)
      out.features.col(j) = d.features.col(j).array() * stats.b[j] + stats.a[j];
    else
      out.features.col(j) = d.features.col(j).array() * (stats.b[j] - stats.a[j]) + stats.a[j];
  }
  return out;
}

void save_csv(const Dataset& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::MissingFile, "cannot write file: " + path);
  out.precision(17);
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    for (Eigen::Index j = 0; j < d.cols(); ++j) out << d.features(i, j) << ",";
    const std::string& name = d.class_names.empty() ? std::to_string(d.labels[i])
                                                    : d.class_names[d.labels[i]];
    out << name << "\n";
  }
}

}  // namespace gbrvfl
