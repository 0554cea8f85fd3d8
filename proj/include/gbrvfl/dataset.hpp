#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gbrvfl/common.hpp"

namespace gbrvfl {

struct Dataset {
  Matrix features;              // M x P
  std::vector<int> labels;      // dense indices in [0, class_count)
  int class_count = 0;
  std::vector<std::string> feature_names;  // empty when the file had no header
  std::vector<std::string> class_names;    // index -> original label token

  Eigen::Index rows() const { return features.rows(); }
  Eigen::Index cols() const { return features.cols(); }
};

struct CsvOptions {
  bool has_header = false;
  int label_column = -1;  // -1 = last column
};

struct SplitSpec {
  double train_fraction = 0.70;
  uint64_t seed = 0;
  bool stratified = true;
};

struct NoiseSpec {
  double rate = 0.0;  // in [0,1)
  uint64_t seed = 0;
};

struct SynthSpec {
  int n_samples = 0;
  int n_features = 32;
  int n_classes = 2;
  int n_clusters_per_class = 1;
  double class_separation = 1.0;
  uint64_t seed = 0;
};

enum class NormMethod { None, Zscore, Minmax };

struct NormStats {
  NormMethod method = NormMethod::None;
  // zscore: a=mean, b=std; minmax: a=min, b=max
  std::vector<double> a;
  std::vector<double> b;
  std::vector<bool> degenerate;  // per-feature passthrough flag
};

const char* norm_method_name(NormMethod m);
NormMethod norm_method_from_name(const std::string& name);

Dataset load_csv(const std::string& path, const CsvOptions& options = {});
Matrix one_hot(const Dataset& d);
std::pair<Dataset, Dataset> train_test_split(const Dataset& d, const SplitSpec& s);
Dataset inject_label_noise(const Dataset& d, const NoiseSpec& n);
Dataset synthesize(const SynthSpec& spec);

// Without stats: fit on d and return the fitted stats. With stats: apply them
// (test-time path).
std::pair<Dataset, NormStats> normalize(const Dataset& d, NormMethod method);
Dataset normalize_with(const Dataset& d, const NormStats& stats);
Dataset denormalize(const Dataset& d, const NormStats& stats);

void save_csv(const Dataset& d, const std::string& path);

}  // namespace gbrvfl
