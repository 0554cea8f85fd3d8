#include <doctest.h>

#include <vector>

#include "gbrvfl/graph.hpp"
#include "gbrvfl/rng.hpp"

using namespace gbrvfl;

namespace {

Matrix random_matrix(int r, int c, uint64_t seed) {
  SplitMix64 g(seed);
  Matrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = g.next_symmetric();
  return m;
}

std::vector<int> random_labels(int k, int classes, uint64_t seed) {
  SplitMix64 g(seed);
  std::vector<int> labels(k);
  for (int i = 0; i < k; ++i) labels[i] = static_cast<int>(g.next_below(classes));
  for (int c = 0; c < classes; ++c) labels[c % k] = c;
  return labels;
}

}  // namespace

TEST_SUITE("graph") {

TEST_CASE("lda weights on the documented four-row case") {
  auto gw = lda_weights({0, 0, 1, 1});
  CHECK(gw.k == 4);
  Matrix expect_int(4, 4);
  expect_int << 0.5, 0.5, 0, 0,
                0.5, 0.5, 0, 0,
                0, 0, 0.5, 0.5,
                0, 0, 0.5, 0.5;
  CHECK((gw.intrinsic - expect_int).cwiseAbs().maxCoeff() == 0.0);

  Matrix expect_pen(4, 4);
  double same = 0.25 - 0.5, cross = 0.25;
  expect_pen << same, same, cross, cross,
                same, same, cross, cross,
                cross, cross, same, same,
                cross, cross, same, same;
  CHECK((gw.penalty - expect_pen).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("lda weights preconditions") {
  CHECK_THROWS_AS(lda_weights({0}), Error);
  CHECK_THROWS_AS(lda_weights({0, 0, 0}), Error);  // single class
  CHECK_NOTHROW(lda_weights({0, 1}));
}

TEST_CASE("complementarity: intrinsic + penalty = (1/k) ones for random labels") {
  for (uint64_t s = 0; s < 25; ++s) {
    SplitMix64 g(500 + s);
    int k = 2 + static_cast<int>(g.next_below(30));
    int classes = 2 + static_cast<int>(g.next_below(std::min(4, k - 1)));
    auto labels = random_labels(k, classes, 600 + s);
    auto gw = lda_weights(labels);
    Matrix sum = gw.intrinsic + gw.penalty;
    Matrix expect = Matrix::Constant(k, k, 1.0 / k);
    CHECK((sum - expect).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("laplacian basics and quadratic form identity") {
  CHECK(laplacian(Matrix::Zero(3, 3)) == Matrix::Zero(3, 3));

  Matrix ones = Matrix::Constant(2, 2, 1.0);
  Matrix l = laplacian(ones);
  Matrix expect(2, 2);
  expect << 1, -1, -1, 1;
  CHECK(l == expect);

  for (uint64_t s = 0; s < 10; ++s) {
    Matrix w = random_matrix(8, 8, 700 + s);
    w = ((w + Matrix(w.transpose())) * 0.5).eval();
    Matrix lap = laplacian(w);
    CHECK(lap.rowwise().sum().cwiseAbs().maxCoeff() < 1e-12);

    SplitMix64 g(800 + s);
    Vector x(8);
    for (int i = 0; i < 8; ++i) x(i) = g.next_symmetric();
    double quad = x.transpose() * lap * x;
    double expect_quad = 0.0;
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j)
        expect_quad += 0.5 * w(i, j) * (x(i) - x(j)) * (x(i) - x(j));
    CHECK(quad == doctest::Approx(expect_quad).epsilon(1e-10));
  }
}

TEST_CASE("embedding with identity design returns the intrinsic laplacian") {
  auto gw = lda_weights({0, 1, 0, 1});
  Matrix d = Matrix::Identity(4, 4);
  auto em = embedding_matrix(d, gw, GraphMode::IntrinsicOnly);
  Matrix expect = laplacian(gw.intrinsic);
  CHECK((em.u - expect).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("embedding matches a dense triple-product oracle") {
  auto gw = lda_weights({0, 1, 1});
  Matrix d = random_matrix(3, 2, 901);
  auto em = embedding_matrix(d, gw, GraphMode::IntrinsicOnly);

  Matrix lap = laplacian(gw.intrinsic);
  Matrix expect = Matrix::Zero(2, 2);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) expect(a, b) += d(i, a) * lap(i, j) * d(j, b);
  CHECK((em.u - expect).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("intrinsic-mode embeddings are symmetric PSD over random cases") {
  for (uint64_t s = 0; s < 15; ++s) {
    SplitMix64 g(1000 + s);
    int k = 3 + static_cast<int>(g.next_below(20));
    int f = 2 + static_cast<int>(g.next_below(10));
    auto labels = random_labels(k, 2 + static_cast<int>(g.next_below(2)), 1100 + s);
    Matrix d = random_matrix(k, f, 1200 + s);
    auto em = embedding_matrix(d, lda_weights(labels), GraphMode::IntrinsicOnly);
    CHECK((em.u - Matrix(em.u.transpose())).cwiseAbs().maxCoeff() < 1e-10);
    Eigen::SelfAdjointEigenSolver<Matrix> es(em.u);
    double scale = std::max(1e-30, em.u.norm());
    CHECK(es.eigenvalues().minCoeff() >= -1e-8 * scale);
  }
}

TEST_CASE("penalty mode produces a symmetric matrix with clipped spectrum") {
  for (uint64_t s = 0; s < 5; ++s) {
    SplitMix64 g(1300 + s);
    int k = 6 + static_cast<int>(g.next_below(10));
    int f = 3;
    auto labels = random_labels(k, 2, 1400 + s);
    Matrix d = random_matrix(k, f, 1500 + s);
    auto em = embedding_matrix(d, lda_weights(labels), GraphMode::IntrinsicAndPenalty);
    CHECK(em.mode == GraphMode::IntrinsicAndPenalty);
    CHECK((em.u - Matrix(em.u.transpose())).cwiseAbs().maxCoeff() < 1e-10);
    Eigen::SelfAdjointEigenSolver<Matrix> es(em.u);
    CHECK(es.eigenvalues().minCoeff() >= -1e-8);
  }
}

TEST_CASE("embedding rejects mismatched label counts") {
  auto gw = lda_weights({0, 1});
  CHECK_THROWS_AS(embedding_matrix(random_matrix(3, 2, 1), gw, GraphMode::IntrinsicOnly), Error);
}

}  // TEST_SUITE
