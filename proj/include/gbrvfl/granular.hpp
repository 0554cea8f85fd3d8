#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "gbrvfl/common.hpp"
#include "gbrvfl/dataset.hpp"

namespace gbrvfl {

struct GranularBall {
  Vector center;                    // mean of member rows
  double radius = 0.0;              // max member distance to center
  int label = 0;                    // majority class, ties to smallest index
  double purity = 1.0;
  int member_count = 0;
  std::vector<int> member_indices;  // original training row indices
  bool unsplittable = false;        // finalized below threshold
};

struct GBSet {
  std::vector<GranularBall> balls;
  Matrix centers_matrix;   // k x P
  Matrix labels_onehot;    // k x C
  double purity_threshold = 1.0;
  uint64_t generation_seed = 0;
  int class_count = 0;

  int k() const { return static_cast<int>(balls.size()); }
  int unsplittable_count() const;
};

struct GenerateOptions {
  std::optional<int> min_balls;
  // Called after each splitting round (round 0 = the initial single ball)
  // with the balls that exist at that point, finalized and pending alike.
  std::function<void(int round, const std::vector<GranularBall>&)> observer;
};

// purity and majority label, majority ties broken by smallest class index
std::pair<double, int> purity(const std::vector<int>& labels);

struct TwoMeansSplit {
  std::vector<int> a;
  std::vector<int> b;
};

// Lloyd's iteration with two clusters. First center is a uniformly chosen
// point, second the point farthest from it; runs until assignments are stable
// or 100 iterations. Returns nullopt when the split is degenerate (all points
// identical), in which case the caller marks the ball unsplittable.
std::optional<TwoMeansSplit> two_means(const Matrix& points, uint64_t seed);

GBSet generate(const Dataset& train, double rho, uint64_t seed,
               const GenerateOptions& opts = {});

void save_gbset_csv(const GBSet& set, const std::string& path);

}  // namespace gbrvfl
