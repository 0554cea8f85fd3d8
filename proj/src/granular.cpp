#include "gbrvfl/granular.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>

#include "gbrvfl/kernels.hpp"
#include "gbrvfl/rng.hpp"

namespace gbrvfl {

int GBSet::unsplittable_count() const {
  int n = 0;
  for (const auto& b : balls) n += b.unsplittable;
  return n;
}

std::pair<double, int> purity(const std::vector<int>& labels) {
  if (labels.empty())
    throw Error(ErrorKind::InvalidArgument, "purity of an empty label set");
  int max_label = *std::max_element(labels.begin(), labels.end());
  std::vector<int> counts(max_label + 1, 0);
  for (int y : labels) {
    if (y < 0) throw Error(ErrorKind::InvalidArgument, "negative class index");
    counts[y]++;
  }
  int majority = 0;
  for (int c = 1; c <= max_label; ++c)
    if (counts[c] > counts[majority]) majority = c;
  return {static_cast<double>(counts[majority]) / labels.size(), majority};
}

std::optional<TwoMeansSplit> two_means(const Matrix& points, uint64_t seed) {
  const Eigen::Index q = points.rows();
  const Eigen::Index p = points.cols();
  if (q < 2)
    throw Error(ErrorKind::TooFewSamples, "two_means needs at least 2 points");

  bool all_identical = true;
  for (Eigen::Index i = 1; i < q && all_identical; ++i)
    all_identical = points.row(i) == points.row(0);
  if (all_identical) return std::nullopt;

  const auto& k = kernels::ops();
  auto row = [&](Eigen::Index i) { return points.data() + i * p; };

  SplitMix64 g(seed);
  Eigen::Index first = static_cast<Eigen::Index>(g.next_below(q));
  Eigen::Index second = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < q; ++i) {
    double d = k.squared_distance(row(i), row(first), p);
    if (d > best) {
      best = d;
      second = i;
    }
  }
  if (!(best > 0.0)) return std::nullopt;

  Vector ca = points.row(first);
  Vector cb = points.row(second);
  std::vector<int> assign(q, -1), prev;

  for (int iter = 0; iter < 100; ++iter) {
    prev = assign;
    int na = 0;
    for (Eigen::Index i = 0; i < q; ++i) {
      double da = k.squared_distance(row(i), ca.data(), p);
      double db = k.squared_distance(row(i), cb.data(), p);
      assign[i] = da <= db ? 0 : 1;
      na += assign[i] == 0;
    }
    if (na == 0 || na == static_cast<int>(q)) {
      // a cluster emptied; recover by seeding it with the point farthest
      // from the surviving center (strictly positive unless all identical)
      const Vector& full = na == 0 ? cb : ca;
      Eigen::Index far = 0;
      double far_d = -1.0;
      for (Eigen::Index i = 0; i < q; ++i) {
        double d = k.squared_distance(row(i), full.data(), p);
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      if (!(far_d > 0.0)) return std::nullopt;
      assign[far] = na == 0 ? 0 : 1;
      na = na == 0 ? 1 : na - 1;
    }
    if (assign == prev) break;

    ca.setZero();
    cb.setZero();
    int ca_n = 0, cb_n = 0;
    for (Eigen::Index i = 0; i < q; ++i) {
      if (assign[i] == 0) {
        k.vec_add(ca.data(), row(i), p);
        ++ca_n;
      } else {
        k.vec_add(cb.data(), row(i), p);
        ++cb_n;
      }
    }
    k.vec_scale(ca.data(), 1.0 / ca_n, p);
    k.vec_scale(cb.data(), 1.0 / cb_n, p);
  }

  TwoMeansSplit split;
  for (Eigen::Index i = 0; i < q; ++i)
    (assign[i] == 0 ? split.a : split.b).push_back(static_cast<int>(i));
  if (split.a.empty() || split.b.empty()) return std::nullopt;
  return split;
}

namespace {

GranularBall make_ball(const Dataset& train, std::vector<int> indices,
                       bool unsplittable) {
  const auto& k = kernels::ops();
  const Eigen::Index p = train.cols();
  GranularBall b;
  b.member_indices = std::move(indices);
  b.member_count = static_cast<int>(b.member_indices.size());
  b.unsplittable = unsplittable;

  b.center = Vector::Zero(p);
  for (int idx : b.member_indices)
    k.vec_add(b.center.data(), train.features.data() + Eigen::Index(idx) * p, p);
  k.vec_scale(b.center.data(), 1.0 / b.member_count, p);

  double r2 = 0.0;
  for (int idx : b.member_indices)
    r2 = std::max(r2, k.squared_distance(train.features.data() + Eigen::Index(idx) * p,
                                         b.center.data(), p));
  b.radius = std::sqrt(r2);

  std::vector<int> labs;
  labs.reserve(b.member_indices.size());
  for (int idx : b.member_indices) labs.push_back(train.labels[idx]);
  auto [pur, maj] = purity(labs);
  b.purity = pur;
  b.label = maj;
  return b;
}

Matrix gather_rows(const Dataset& train, const std::vector<int>& indices) {
  Matrix pts(indices.size(), train.cols());
  for (size_t i = 0; i < indices.size(); ++i)
    pts.row(i) = train.features.row(indices[i]);
  return pts;
}

}  // namespace

GBSet generate(const Dataset& train, double rho, uint64_t seed,
               const GenerateOptions& opts) {
  if (!(rho > 0.5 && rho <= 1.0))
    throw Error(ErrorKind::InvalidArgument, "purity threshold must be in (0.5, 1]");
  if (train.rows() < 1)
    throw Error(ErrorKind::TooFewSamples, "cannot generate balls from an empty dataset");

  const int m = static_cast<int>(train.rows());
  uint64_t split_counter = 0;
  auto next_split_seed = [&] { return derive_seed(seed, split_counter++); };

  std::vector<GranularBall> finalized;
  std::vector<std::vector<int>> pending;
  {
    std::vector<int> all(m);
    std::iota(all.begin(), all.end(), 0);
    pending.push_back(std::move(all));
  }

  int round = 0;
  auto notify = [&] {
    if (!opts.observer) return;
    std::vector<GranularBall> snapshot = finalized;
    for (const auto& idx : pending) snapshot.push_back(make_ball(train, idx, false));
    opts.observer(round, snapshot);
  };
  notify();

  while (!pending.empty()) {
    std::vector<std::vector<int>> next;
    for (auto& indices : pending) {
      std::vector<int> labs;
      labs.reserve(indices.size());
      for (int idx : indices) labs.push_back(train.labels[idx]);
      auto [pur, maj] = purity(labs);
      if (pur >= rho) {
        finalized.push_back(make_ball(train, std::move(indices), false));
        continue;
      }
      auto split = two_means(gather_rows(train, indices), next_split_seed());
      if (!split) {
        finalized.push_back(make_ball(train, std::move(indices), true));
        continue;
      }
      std::vector<int> left, right;
      for (int i : split->a) left.push_back(indices[i]);
      for (int i : split->b) right.push_back(indices[i]);
      next.push_back(std::move(left));
      next.push_back(std::move(right));
    }
    pending = std::move(next);
    ++round;
    notify();
  }

  if (opts.min_balls) {
    std::vector<bool> exhausted(finalized.size(), false);
    bool changed = false;
    while (static_cast<int>(finalized.size()) < *opts.min_balls) {
      int pick = -1;
      for (size_t i = 0; i < finalized.size(); ++i) {
        if (exhausted[i] || finalized[i].member_count < 2) continue;
        if (pick < 0 || finalized[i].member_count > finalized[pick].member_count)
          pick = static_cast<int>(i);
      }
      if (pick < 0) break;
      auto& ball = finalized[pick];
      auto split = two_means(gather_rows(train, ball.member_indices), next_split_seed());
      if (!split) {
        exhausted[pick] = true;
        continue;
      }
      std::vector<int> left, right;
      for (int i : split->a) left.push_back(ball.member_indices[i]);
      for (int i : split->b) right.push_back(ball.member_indices[i]);
      finalized[pick] = make_ball(train, std::move(left), false);
      finalized.push_back(make_ball(train, std::move(right), false));
      exhausted.push_back(false);
      exhausted[pick] = false;
      changed = true;
    }
    if (changed) {
      ++round;
      notify();
    }
  }

  GBSet set;
  set.balls = std::move(finalized);
  set.purity_threshold = rho;
  set.generation_seed = seed;
  set.class_count = train.class_count;
  set.centers_matrix = Matrix(set.k(), train.cols());
  set.labels_onehot = Matrix::Zero(set.k(), train.class_count);
  for (int i = 0; i < set.k(); ++i) {
    set.centers_matrix.row(i) = set.balls[i].center.transpose();
    set.labels_onehot(i, set.balls[i].label) = 1.0;
  }
  return set;
}

void save_gbset_csv(const GBSet& set, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::MissingFile, "cannot write file: " + path);
  out.precision(17);
  const Eigen::Index p = set.centers_matrix.cols();
  for (Eigen::Index j = 0; j < p; ++j) out << "center" << j << ",";
  out << "radius,label,purity,member_count\n";
  for (const auto& b : set.balls) {
    for (Eigen::Index j = 0; j < p; ++j) out << b.center(j) << ",";
    out << b.radius << "," << b.label << "," << b.purity << "," << b.member_count << "\n";
  }
}

}  // namespace gbrvfl
