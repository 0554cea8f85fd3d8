#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gbrvfl/common.hpp"
#include "gbrvfl/dataset.hpp"
#include "gbrvfl/granular.hpp"
#include "gbrvfl/graph.hpp"
#include "gbrvfl/randlayer.hpp"
#include "gbrvfl/solver.hpp"

namespace gbrvfl {

enum class Variant { RVFL, RVFLwoDL, GB_RVFL, GB_RVFLwoDL, GE_GB_RVFL };
const char* variant_name(Variant v);
Variant variant_from_name(const std::string& name);
bool variant_uses_balls(Variant v);
bool variant_uses_direct_link(Variant v);

struct ModelSpec {
  Variant variant = Variant::RVFL;
  double reg = 1.0;          // C
  double graph_reg = 0.0;    // alpha, GE only
  int hidden_nodes = 23;     // g
  Activation activation = Activation::Relu;
  double rho = 1.0;          // purity threshold, GB variants
  std::optional<int> min_balls;
  uint64_t seed = 0;
  GraphMode graph_mode = GraphMode::IntrinsicOnly;
  NormMethod norm = NormMethod::Zscore;
};

struct GbSummary {
  int k = 0;
  int unsplittable = 0;
};

struct TrainedModel {
  ModelSpec spec;
  RandomLayer layer;
  Matrix output_weights;  // f x C
  NormStats norm_stats;
  int input_dim = 0;
  int class_count = 0;
  std::vector<std::string> class_names;
  std::optional<GbSummary> gb_summary;  // GB variants only
  SolveBranch solve_branch = SolveBranch::Primal;
};

struct Prediction {
  Matrix scores;            // n x C
  std::vector<int> labels;  // argmax per row, ties to smallest index
};

// Seed streams: the layer draws from spec.seed directly; granular-ball
// generation uses derive_seed(spec.seed, 2).
TrainedModel train(const ModelSpec& spec, const Dataset& train_data);

Prediction predict(const TrainedModel& m, const Matrix& inputs);

std::string save_model(const TrainedModel& m);
TrainedModel load_model(const std::string& bytes);
void save_model_file(const TrainedModel& m, const std::string& path);
TrainedModel load_model_file(const std::string& path);

}  // namespace gbrvfl
