#include "gbrvfl/evalstats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gbrvfl/rng.hpp"

namespace gbrvfl {

namespace {

std::optional<double> ratio(long long num, long long den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

Dataset take_rows(const Dataset& d, const std::vector<int>& idx) {
  Dataset out;
  out.features = Matrix(static_cast<Eigen::Index>(idx.size()), d.cols());
  out.labels.reserve(idx.size());
  for (size_t i = 0; i < idx.size(); ++i) {
    out.features.row(static_cast<Eigen::Index>(i)) = d.features.row(idx[i]);
    out.labels.push_back(d.labels[idx[i]]);
  }
  out.class_count = d.class_count;
  out.feature_names = d.feature_names;
  out.class_names = d.class_names;
  return out;
}

// true when a beats b on the tie chain: reg, hidden nodes, graph reg, activation
bool simpler_spec(const ModelSpec& a, const ModelSpec& b) {
  if (a.reg != b.reg) return a.reg < b.reg;
  if (a.hidden_nodes != b.hidden_nodes) return a.hidden_nodes < b.hidden_nodes;
  if (a.graph_reg != b.graph_reg) return a.graph_reg < b.graph_reg;
  return static_cast<int>(a.activation) < static_cast<int>(b.activation);
}

}  // namespace

ConfusionCounts confusion(const std::vector<int>& pred,
                          const std::vector<int>& truth, int positive_class) {
  if (pred.size() != truth.size())
    throw Error(ErrorKind::LengthMismatch, "prediction and truth lengths differ");
  ConfusionCounts c;
  for (size_t i = 0; i < pred.size(); ++i) {
    bool p = pred[i] == positive_class;
    bool t = truth[i] == positive_class;
    c.tp += p && t;
    c.fp += p && !t;
    c.fn += !p && t;
    c.tn += !p && !t;
  }
  return c;
}

MetricSet metrics_from_counts(const ConfusionCounts& c) {
  MetricSet m;
  m.accuracy = ratio(c.tp + c.tn, c.total());
  m.sensitivity = ratio(c.tp, c.tp + c.fn);
  m.specificity = ratio(c.tn, c.tn + c.fp);
  m.precision = ratio(c.tp, c.tp + c.fp);
  return m;
}

MetricSet metrics(const std::vector<int>& pred, const std::vector<int>& truth,
                  int positive_class) {
  return metrics_from_counts(confusion(pred, truth, positive_class));
}

RankTable rank_table(const Matrix& accuracy,
                     const std::vector<std::string>& models,
                     const std::vector<std::string>& datasets) {
  int m = static_cast<int>(accuracy.rows());
  int d = static_cast<int>(accuracy.cols());
  if (m < 1 || d < 1)
    throw Error(ErrorKind::InvalidArgument, "rank table needs a non-empty accuracy matrix");
  if (!models.empty() && static_cast<int>(models.size()) != m)
    throw Error(ErrorKind::LengthMismatch, "model names do not match accuracy rows");
  if (!datasets.empty() && static_cast<int>(datasets.size()) != d)
    throw Error(ErrorKind::LengthMismatch, "dataset names do not match accuracy columns");

  RankTable rt;
  rt.models = models;
  rt.datasets = datasets;
  if (rt.models.empty())
    for (int i = 0; i < m; ++i) rt.models.push_back("model" + std::to_string(i + 1));
  if (rt.datasets.empty())
    for (int j = 0; j < d; ++j) rt.datasets.push_back("dataset" + std::to_string(j + 1));
  rt.accuracy = accuracy;
  rt.ranks = Matrix(m, d);

  std::vector<int> order(m);
  for (int j = 0; j < d; ++j) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return accuracy(a, j) > accuracy(b, j);
    });
    int pos = 0;
    while (pos < m) {
      int end = pos;
      while (end + 1 < m && accuracy(order[end + 1], j) == accuracy(order[pos], j)) ++end;
      double midrank = (pos + 1 + end + 1) / 2.0;
      for (int t = pos; t <= end; ++t) rt.ranks(order[t], j) = midrank;
      pos = end + 1;
    }
  }
  rt.average_rank.resize(m);
  for (int i = 0; i < m; ++i) rt.average_rank[i] = rt.ranks.row(i).mean();
  return rt;
}

FriedmanResult friedman(const std::vector<double>& average_ranks, int n_datasets,
                        std::optional<double> f_critical) {
  int m = static_cast<int>(average_ranks.size());
  if (m < 2) throw Error(ErrorKind::InvalidArgument, "friedman needs at least 2 models");
  if (n_datasets < 2)
    throw Error(ErrorKind::InvalidArgument, "friedman needs at least 2 datasets");

  double sum_sq = 0.0;
  for (double r : average_ranks) sum_sq += r * r;
  double chi2 = 12.0 * n_datasets / (m * (m + 1.0)) *
                (sum_sq - m * (m + 1.0) * (m + 1.0) / 4.0);
  double denom = n_datasets * (m - 1.0) - chi2;
  double f = denom > 0.0 ? chi2 * (n_datasets - 1.0) / denom
                         : std::numeric_limits<double>::infinity();

  FriedmanResult out;
  out.chi2 = chi2;
  out.f_stat = f;
  out.dof1 = m - 1;
  out.dof2 = (m - 1) * (n_datasets - 1);
  if (f_critical) out.reject_null = f > *f_critical;
  return out;
}

FriedmanResult friedman(const RankTable& rt, std::optional<double> f_critical) {
  return friedman(rt.average_rank, static_cast<int>(rt.accuracy.cols()), f_critical);
}

NemenyiResult nemenyi(const std::vector<double>& average_ranks, int n_datasets,
                      double q_alpha) {
  int m = static_cast<int>(average_ranks.size());
  if (m < 2) throw Error(ErrorKind::InvalidArgument, "nemenyi needs at least 2 models");
  if (n_datasets < 1)
    throw Error(ErrorKind::InvalidArgument, "nemenyi needs at least 1 dataset");

  NemenyiResult out;
  out.q_alpha = q_alpha;
  out.critical_difference = q_alpha * std::sqrt(m * (m + 1.0) / (6.0 * n_datasets));
  out.significant.assign(m, std::vector<bool>(m, false));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      out.significant[i][j] =
          i != j && std::abs(average_ranks[i] - average_ranks[j]) >= out.critical_difference;
  return out;
}

NemenyiResult nemenyi(const RankTable& rt, double q_alpha) {
  return nemenyi(rt.average_rank, static_cast<int>(rt.accuracy.cols()), q_alpha);
}

double nemenyi_q(double alpha, int n_models) {
  static const double q05[] = {1.960, 2.343, 2.569, 2.728, 2.850,
                               2.949, 3.031, 3.102, 3.164};
  static const double q10[] = {1.645, 2.052, 2.291, 2.459, 2.589,
                               2.693, 2.780, 2.855, 2.920};
  if (n_models < 2 || n_models > 10)
    throw Error(ErrorKind::InvalidArgument, "q table covers 2 to 10 models");
  if (std::abs(alpha - 0.05) < 1e-12) return q05[n_models - 2];
  if (std::abs(alpha - 0.10) < 1e-12) return q10[n_models - 2];
  throw Error(ErrorKind::InvalidArgument, "q table covers alpha 0.05 and 0.10");
}

CrossValResult cross_validate(const std::vector<ModelSpec>& grid,
                              const Dataset& train_data, int folds, uint64_t seed) {
  if (grid.empty()) throw Error(ErrorKind::InvalidArgument, "empty spec grid");
  if (folds < 2) throw Error(ErrorKind::InvalidArgument, "need at least 2 folds");
  if (train_data.class_count < 2)
    throw Error(ErrorKind::SingleClass, "cross validation needs at least 2 classes");

  int n = static_cast<int>(train_data.rows());
  std::vector<std::vector<int>> by_class(train_data.class_count);
  for (int i = 0; i < n; ++i) by_class[train_data.labels[i]].push_back(i);
  for (const auto& members : by_class)
    if (static_cast<int>(members.size()) < folds)
      throw Error(ErrorKind::TooFewSamples,
                  "every class needs at least one sample per fold");

  SplitMix64 rng(seed);
  std::vector<int> fold_of(n, 0);
  for (auto& members : by_class) {
    for (size_t i = members.size(); i > 1; --i)
      std::swap(members[i - 1], members[rng.next_below(i)]);
    for (size_t pos = 0; pos < members.size(); ++pos)
      fold_of[members[pos]] = static_cast<int>(pos % folds);
  }

  std::vector<Dataset> fit_part(folds), val_part(folds);
  for (int f = 0; f < folds; ++f) {
    std::vector<int> fit_idx, val_idx;
    for (int i = 0; i < n; ++i) (fold_of[i] == f ? val_idx : fit_idx).push_back(i);
    fit_part[f] = take_rows(train_data, fit_idx);
    val_part[f] = take_rows(train_data, val_idx);
  }

  CrossValResult out;
  out.fold_accuracy.assign(grid.size(), std::vector<double>(folds, 0.0));
  out.mean_accuracy.assign(grid.size(), 0.0);
  for (size_t g = 0; g < grid.size(); ++g) {
    for (int f = 0; f < folds; ++f) {
      TrainedModel m = train(grid[g], fit_part[f]);
      auto pred = predict(m, val_part[f].features);
      int hits = 0;
      for (size_t i = 0; i < pred.labels.size(); ++i)
        hits += pred.labels[i] == val_part[f].labels[i];
      out.fold_accuracy[g][f] = static_cast<double>(hits) / pred.labels.size();
    }
    double s = 0.0;
    for (double a : out.fold_accuracy[g]) s += a;
    out.mean_accuracy[g] = s / folds;
  }

  int best = 0;
  for (size_t g = 1; g < grid.size(); ++g) {
    if (out.mean_accuracy[g] > out.mean_accuracy[best] ||
        (out.mean_accuracy[g] == out.mean_accuracy[best] &&
         simpler_spec(grid[g], grid[best])))
      best = static_cast<int>(g);
  }
  out.best_index = best;
  out.best = grid[best];
  return out;
}

}  // namespace gbrvfl
