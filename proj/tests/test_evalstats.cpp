#include <doctest.h>

#include <cmath>
#include <limits>

#include "gbrvfl/evalstats.hpp"
#include "gbrvfl/rng.hpp"

using namespace gbrvfl;

TEST_SUITE("evalstats") {

TEST_CASE("confusion counts one-vs-rest") {
  std::vector<int> pred{0, 1, 1, 0, 1};
  std::vector<int> truth{0, 1, 0, 1, 1};
  auto c = confusion(pred, truth, 1);
  CHECK(c.tp == 2);
  CHECK(c.fp == 1);
  CHECK(c.fn == 1);
  CHECK(c.tn == 1);
  CHECK(c.total() == 5);

  auto flipped = confusion(pred, truth, 0);
  CHECK(flipped.tp == c.tn);
  CHECK(flipped.fp == c.fn);

  CHECK_THROWS_AS(confusion({0, 1}, {0}, 0), Error);
}

TEST_CASE("metric ratios from pinned counts") {
  ConfusionCounts c{3, 1, 4, 2};
  auto m = metrics_from_counts(c);
  REQUIRE(m.accuracy.has_value());
  CHECK(*m.accuracy == doctest::Approx(0.7));
  CHECK(*m.sensitivity == doctest::Approx(0.6));
  CHECK(*m.specificity == doctest::Approx(0.8));
  CHECK(*m.precision == doctest::Approx(0.75));
}

TEST_CASE("undefined ratios come back empty, never NaN") {
  auto no_pos = metrics_from_counts({0, 0, 5, 0});  // no positives in truth or pred
  CHECK(!no_pos.sensitivity.has_value());
  CHECK(!no_pos.precision.has_value());
  CHECK(*no_pos.specificity == doctest::Approx(1.0));
  CHECK(*no_pos.accuracy == doctest::Approx(1.0));

  auto no_neg = metrics_from_counts({4, 0, 0, 1});
  CHECK(!no_neg.specificity.has_value());
  CHECK(*no_neg.sensitivity == doctest::Approx(0.8));

  auto empty = metrics_from_counts({0, 0, 0, 0});
  CHECK(!empty.accuracy.has_value());
  CHECK(!empty.sensitivity.has_value());
  CHECK(!empty.specificity.has_value());
  CHECK(!empty.precision.has_value());
}

TEST_CASE("metrics agree with exact formulas on random label pairs") {
  SplitMix64 rng(404);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 5 + static_cast<int>(rng.next_below(40));
    std::vector<int> pred(n), truth(n);
    for (int i = 0; i < n; ++i) {
      pred[i] = static_cast<int>(rng.next_below(3));
      truth[i] = static_cast<int>(rng.next_below(3));
    }
    int positive = static_cast<int>(rng.next_below(3));
    auto c = confusion(pred, truth, positive);
    long long tp = 0, fp = 0, tn = 0, fn = 0;
    for (int i = 0; i < n; ++i) {
      bool p = pred[i] == positive, t = truth[i] == positive;
      tp += p && t;
      fp += p && !t;
      fn += !p && t;
      tn += !p && !t;
    }
    CHECK(c.tp == tp);
    CHECK(c.fp == fp);
    CHECK(c.tn == tn);
    CHECK(c.fn == fn);
    auto m = metrics(pred, truth, positive);
    CHECK(*m.accuracy == doctest::Approx(double(tp + tn) / n));
    if (tp + fn > 0) CHECK(*m.sensitivity == doctest::Approx(double(tp) / (tp + fn)));
    if (tn + fp > 0) CHECK(*m.specificity == doctest::Approx(double(tn) / (tn + fp)));
    if (tp + fp > 0)
      CHECK(*m.precision == doctest::Approx(double(tp) / (tp + fp)));
    else
      CHECK(!m.precision.has_value());
  }
}

TEST_CASE("rank table computes midranks per dataset") {
  Matrix acc(3, 2);
  // dataset 0: distinct; dataset 1: two-way tie for best
  acc << 0.70, 0.90,
         0.90, 0.90,
         0.80, 0.50;
  auto rt = rank_table(acc);
  CHECK(rt.ranks(0, 0) == 3.0);
  CHECK(rt.ranks(1, 0) == 1.0);
  CHECK(rt.ranks(2, 0) == 2.0);
  CHECK(rt.ranks(0, 1) == 1.5);
  CHECK(rt.ranks(1, 1) == 1.5);
  CHECK(rt.ranks(2, 1) == 3.0);
  CHECK(rt.average_rank[0] == doctest::Approx(2.25));
  CHECK(rt.average_rank[1] == doctest::Approx(1.25));
  CHECK(rt.average_rank[2] == doctest::Approx(2.5));
  CHECK(rt.models.size() == 3);
  CHECK(rt.datasets.size() == 2);
}

TEST_CASE("rank columns always sum to m(m+1)/2 and full ties hit the midpoint") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    int m = 2 + static_cast<int>(rng.next_below(7));
    int d = 2 + static_cast<int>(rng.next_below(7));
    Matrix acc(m, d);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < d; ++j)
        acc(i, j) = std::round(rng.next_unit() * 4) / 4.0;  // force frequent ties
    auto rt = rank_table(acc);
    for (int j = 0; j < d; ++j)
      CHECK(rt.ranks.col(j).sum() == doctest::Approx(m * (m + 1) / 2.0));
  }

  Matrix tied = Matrix::Constant(4, 3, 0.5);
  auto rt = rank_table(tied);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 3; ++j) CHECK(rt.ranks(i, j) == doctest::Approx(2.5));
}

TEST_CASE("rank table name handling") {
  Matrix acc = Matrix::Zero(2, 2);
  auto rt = rank_table(acc, {"a", "b"}, {"x", "y"});
  CHECK(rt.models[1] == "b");
  CHECK(rt.datasets[0] == "x");
  CHECK_THROWS_AS(rank_table(acc, {"only-one"}, {}), Error);
}

TEST_CASE("friedman statistics on the reference rank vector") {
  std::vector<double> ranks{4.98, 5.13, 4.65, 4.37, 5.18, 5.32, 3.57, 2.80};
  auto fr = friedman(ranks, 30);
  CHECK(fr.chi2 == doctest::Approx(27.782).epsilon(1e-4));
  CHECK(fr.f_stat == doctest::Approx(4.4215).epsilon(1e-3));
  CHECK(fr.dof1 == 7);
  CHECK(fr.dof2 == 203);
  CHECK(!fr.reject_null.has_value());

  auto with_crit = friedman(ranks, 30, 2.05);
  REQUIRE(with_crit.reject_null.has_value());
  CHECK(*with_crit.reject_null);
  auto high_crit = friedman(ranks, 30, 100.0);
  CHECK(!*high_crit.reject_null);
}

TEST_CASE("friedman from a rank table matches the hand computation") {
  Matrix acc(2, 3);
  acc << 0.9, 0.8, 0.7,
         0.8, 0.9, 0.6;
  auto rt = rank_table(acc);
  CHECK(rt.average_rank[0] == doctest::Approx(4.0 / 3.0));
  CHECK(rt.average_rank[1] == doctest::Approx(5.0 / 3.0));
  auto fr = friedman(rt);
  CHECK(fr.chi2 == doctest::Approx(1.0 / 3.0));
  CHECK(fr.dof1 == 1);
  CHECK(fr.dof2 == 2);
}

TEST_CASE("friedman degenerate consistency saturates chi2") {
  // both datasets order the 3 models identically: chi2 hits its maximum d(m-1)
  std::vector<double> ranks{1.0, 2.0, 3.0};
  auto fr = friedman(ranks, 2);
  CHECK(fr.chi2 == doctest::Approx(4.0));
  CHECK(std::isinf(fr.f_stat));
  CHECK_THROWS_AS(friedman(std::vector<double>{1.0}, 5), Error);
  CHECK_THROWS_AS(friedman(ranks, 1), Error);
}

TEST_CASE("nemenyi critical difference and significance grid") {
  std::vector<double> ranks{4.98, 5.13, 4.65, 4.37, 5.18, 5.32, 3.57, 2.80};
  double q = nemenyi_q(0.10, 8);
  CHECK(q == doctest::Approx(2.780));
  auto nm = nemenyi(ranks, 30, q);
  CHECK(nm.critical_difference == doctest::Approx(1.7582).epsilon(1e-3));
  CHECK(nm.q_alpha == q);

  // comparisons against the last (best-ranked) model
  std::vector<bool> expected{true, true, true, false, true, true, false};
  for (int i = 0; i < 7; ++i) {
    CHECK(nm.significant[7][i] == expected[i]);
    CHECK(nm.significant[i][7] == expected[i]);
  }
  for (int i = 0; i < 8; ++i) CHECK(!nm.significant[i][i]);
}

TEST_CASE("critical difference scales inversely with sqrt of dataset count") {
  std::vector<double> ranks{1.0, 2.0, 3.0};
  double q = nemenyi_q(0.05, 3);
  auto a = nemenyi(ranks, 10, q);
  auto b = nemenyi(ranks, 40, q);
  CHECK(a.critical_difference == doctest::Approx(2.0 * b.critical_difference));
}

TEST_CASE("nemenyi q table bounds") {
  CHECK(nemenyi_q(0.05, 2) == doctest::Approx(1.960));
  CHECK(nemenyi_q(0.05, 10) == doctest::Approx(3.164));
  CHECK(nemenyi_q(0.10, 2) == doctest::Approx(1.645));
  CHECK(nemenyi_q(0.10, 10) == doctest::Approx(2.920));
  CHECK_THROWS_AS(nemenyi_q(0.01, 5), Error);
  CHECK_THROWS_AS(nemenyi_q(0.05, 1), Error);
  CHECK_THROWS_AS(nemenyi_q(0.05, 11), Error);
}

TEST_CASE("cross validation picks the dominant spec deterministically") {
  Dataset d = synthesize({.n_samples = 100, .n_features = 4, .n_classes = 2,
                          .n_clusters_per_class = 1, .class_separation = 8.0,
                          .seed = 17});
  // one always-positive hidden unit and no direct link scores every row as a
  // positive multiple of the same weight vector, so it predicts one constant
  // class and cannot beat the prior
  ModelSpec bad;
  bad.variant = Variant::RVFLwoDL;
  bad.reg = 10.0;
  bad.hidden_nodes = 1;
  bad.activation = Activation::Sigmoid;
  bad.seed = 5;
  ModelSpec good = bad;
  good.variant = Variant::RVFL;
  good.hidden_nodes = 15;

  auto cv = cross_validate({bad, good}, d, 5, 99);
  CHECK(cv.best_index == 1);
  CHECK(cv.best.hidden_nodes == 15);
  CHECK(cv.fold_accuracy.size() == 2);
  CHECK(cv.fold_accuracy[0].size() == 5);
  CHECK(cv.mean_accuracy[1] > cv.mean_accuracy[0]);
  CHECK(cv.mean_accuracy[1] >= 0.95);
  for (size_t g = 0; g < 2; ++g) {
    double s = 0;
    for (double a : cv.fold_accuracy[g]) s += a;
    CHECK(cv.mean_accuracy[g] == doctest::Approx(s / 5));
  }

  auto again = cross_validate({bad, good}, d, 5, 99);
  CHECK(again.mean_accuracy == cv.mean_accuracy);
  auto other_seed = cross_validate({bad, good}, d, 5, 100);
  CHECK(other_seed.best_index == 1);  // folds move, the winner should not
}

TEST_CASE("cross validation tie break prefers the simpler spec") {
  Dataset d = synthesize({.n_samples = 80, .n_features = 3, .n_classes = 2,
                          .n_clusters_per_class = 1, .class_separation = 12.0,
                          .seed = 23});
  ModelSpec base;
  base.variant = Variant::RVFL;
  base.hidden_nodes = 12;
  base.activation = Activation::Sigmoid;
  base.seed = 7;

  ModelSpec big = base;
  big.reg = 100.0;
  ModelSpec small = base;
  small.reg = 1.0;
  // larger reg listed first: a first-wins rule would pick index 0
  auto cv = cross_validate({big, small}, d, 4, 3);
  REQUIRE(cv.mean_accuracy[0] == cv.mean_accuracy[1]);
  CHECK(cv.best_index == 1);
  CHECK(cv.best.reg == 1.0);

  ModelSpec wide = base;
  wide.hidden_nodes = 24;
  auto cv2 = cross_validate({wide, base}, d, 4, 3);
  if (cv2.mean_accuracy[0] == cv2.mean_accuracy[1]) CHECK(cv2.best.hidden_nodes == 12);
}

TEST_CASE("cross validation input guards") {
  Dataset d = synthesize({.n_samples = 30, .n_features = 2, .n_classes = 2,
                          .n_clusters_per_class = 1, .class_separation = 4.0,
                          .seed = 1});
  ModelSpec spec;
  CHECK_THROWS_AS(cross_validate({}, d, 3, 0), Error);
  CHECK_THROWS_AS(cross_validate({spec}, d, 1, 0), Error);
  Dataset tiny = d;
  tiny.features = d.features.topRows(3);
  tiny.labels = {0, 1, 0};
  CHECK_THROWS_AS(cross_validate({spec}, tiny, 3, 0), Error);  // class 1 thinner than folds
}

}  // TEST_SUITE
