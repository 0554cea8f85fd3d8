#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gbrvfl/common.hpp"
#include "gbrvfl/dataset.hpp"
#include "gbrvfl/models.hpp"

namespace gbrvfl {

struct ConfusionCounts {
  long long tp = 0, fp = 0, tn = 0, fn = 0;
  long long total() const { return tp + fp + tn + fn; }
};

// One-vs-rest counts for the designated positive class.
ConfusionCounts confusion(const std::vector<int>& pred,
                          const std::vector<int>& truth, int positive_class);

// Ratios with undefined denominators reported as empty optionals, never NaN.
struct MetricSet {
  std::optional<double> accuracy;
  std::optional<double> sensitivity;
  std::optional<double> specificity;
  std::optional<double> precision;
};

MetricSet metrics(const std::vector<int>& pred, const std::vector<int>& truth,
                  int positive_class);
MetricSet metrics_from_counts(const ConfusionCounts& c);

struct CrossValResult {
  ModelSpec best;
  int best_index = 0;
  std::vector<std::vector<double>> fold_accuracy;  // grid x folds
  std::vector<double> mean_accuracy;               // per grid point
};

// Stratified round-robin folds after a seeded shuffle. Ties on mean accuracy
// go to smaller reg, then fewer hidden nodes, then smaller graph_reg, then
// smaller activation index.
CrossValResult cross_validate(const std::vector<ModelSpec>& grid,
                              const Dataset& train, int folds, uint64_t seed);

struct RankTable {
  std::vector<std::string> models;    // size m
  std::vector<std::string> datasets;  // size d
  Matrix accuracy;                    // m x d
  Matrix ranks;                       // m x d midranks, 1 = best accuracy
  std::vector<double> average_rank;   // per model
};

RankTable rank_table(const Matrix& accuracy,
                     const std::vector<std::string>& models = {},
                     const std::vector<std::string>& datasets = {});

struct FriedmanResult {
  double chi2 = 0.0;
  double f_stat = 0.0;
  int dof1 = 0;  // m - 1
  int dof2 = 0;  // (m - 1)(d - 1)
  std::optional<bool> reject_null;  // set when a critical value was supplied
};

FriedmanResult friedman(const std::vector<double>& average_ranks,
                        int n_datasets,
                        std::optional<double> f_critical = std::nullopt);
FriedmanResult friedman(const RankTable& rt,
                        std::optional<double> f_critical = std::nullopt);

struct NemenyiResult {
  double critical_difference = 0.0;
  double q_alpha = 0.0;
  std::vector<std::vector<bool>> significant;  // |R_i - R_j| >= CD
};

NemenyiResult nemenyi(const std::vector<double>& average_ranks, int n_datasets,
                      double q_alpha);
NemenyiResult nemenyi(const RankTable& rt, double q_alpha);

// Two-tailed critical values for the Nemenyi test, alpha in {0.05, 0.10},
// 2..10 models (standard studentized-range-derived table).
double nemenyi_q(double alpha, int n_models);

}  // namespace gbrvfl
