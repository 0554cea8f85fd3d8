#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gbrvfl/interpret.hpp"
#include "gbrvfl/rng.hpp"
#include "oracle.hpp"

using namespace gbrvfl;

namespace {

Matrix random_matrix(int r, int c, uint64_t seed) {
  SplitMix64 rng(seed);
  Matrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = rng.next_gaussian();
  return m;
}

Matrix orthonormal_columns(int r, int c, uint64_t seed) {
  Matrix m = random_matrix(r, c, seed);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(r, c);
  return q;
}

// pinv(B') (B'B + (1/reg) I + (alpha/reg) U) for a full-column-rank basis,
// where pinv(B') = B (B'B)^-1, all through the hand-rolled oracle routines
Matrix oracle_feature_matrix(const Matrix& b, double reg, double alpha,
                             const Matrix* u) {
  int n = static_cast<int>(b.rows()), f = static_cast<int>(b.cols());
  oracle::Mat bm(n, std::vector<double>(f));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < f; ++j) bm[i][j] = b(i, j);
  auto bt = oracle::transpose(bm);
  auto gram = oracle::matmul(bt, bm);
  auto pinv_bt = oracle::matmul(bm, oracle::invert(gram));
  auto inner = gram;
  for (int i = 0; i < f; ++i) inner[i][i] += 1.0 / reg;
  if (u)
    for (int i = 0; i < f; ++i)
      for (int j = 0; j < f; ++j) inner[i][j] += alpha / reg * (*u)(i, j);
  auto em = oracle::matmul(pinv_bt, inner);
  Matrix e(n, f);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < f; ++j) e(i, j) = em[i][j];
  return e;
}

}  // namespace

TEST_SUITE("interpret") {

TEST_CASE("weak regularization leaves an orthonormal basis unchanged") {
  Matrix b = orthonormal_columns(12, 5, 42);
  auto e2 = feature_matrix(2, b, 1e10);
  CHECK(e2.which == 2);
  CHECK(e2.data.rows() == 12);
  CHECK(e2.data.cols() == 5);
  CHECK((e2.data - b).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("zero graph strength reproduces the graph-free matrix exactly") {
  Matrix b = random_matrix(10, 4, 7);
  Matrix u = Matrix::Identity(4, 4) * 3.0;
  auto with_graph = feature_matrix(1, b, 2.0, 0.0, &u);
  auto without = feature_matrix(2, b, 2.0);
  CHECK(with_graph.data == without.data);
}

TEST_CASE("feature matrices match the dense oracle") {
  for (uint64_t seed : {1ull, 2ull, 3ull}) {
    Matrix b = random_matrix(8, 3, seed);
    Matrix u_half = random_matrix(3, 3, seed + 100);
    Matrix u = (u_half.transpose() * u_half).eval();

    auto e2 = feature_matrix(2, b, 5.0);
    CHECK((e2.data - oracle_feature_matrix(b, 5.0, 0.0, nullptr)).cwiseAbs().maxCoeff() <
          1e-10);

    auto e1 = feature_matrix(1, b, 5.0, 0.7, &u);
    CHECK((e1.data - oracle_feature_matrix(b, 5.0, 0.7, &u)).cwiseAbs().maxCoeff() <
          1e-10);
  }
}

TEST_CASE("feature matrix input guards") {
  Matrix b = random_matrix(6, 3, 9);
  CHECK_THROWS_AS(feature_matrix(0, b, 1.0), Error);
  CHECK_THROWS_AS(feature_matrix(7, b, 1.0), Error);
  CHECK_THROWS_AS(feature_matrix(2, b, 0.0), Error);
  Matrix bad_u = Matrix::Zero(2, 2);
  CHECK_THROWS_AS(feature_matrix(1, b, 1.0, 0.5, &bad_u), Error);
  Matrix nan_b = b;
  nan_b(0, 0) = std::nan("");
  CHECK_THROWS_AS(feature_matrix(2, nan_b, 1.0), Error);
}

TEST_CASE("cropping keeps the top-left block") {
  FeatureMatrix e;
  e.which = 4;
  e.data = random_matrix(6, 9, 13);
  auto same = crop_to(e, 6, 9);
  CHECK(same.data == e.data);
  auto cropped = crop_to(e, 6, 4);
  CHECK(cropped.data.rows() == 6);
  CHECK(cropped.data.cols() == 4);
  CHECK(cropped.data == e.data.leftCols(4));
  auto twice = crop_to(crop_to(e, 5, 4), 5, 4);
  CHECK(twice.data == e.data.topLeftCorner(5, 4));
  CHECK(twice.which == 4);
  CHECK_THROWS_AS(crop_to(e, 7, 9), Error);
  try {
    crop_to(e, 6, 10);
    FAIL("expected TargetLarger");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::TargetLarger);
  }
}

TEST_CASE("pairwise distances agree with the double loop") {
  Matrix pts(2, 2);
  pts << 0, 0,
         3, 4;
  auto de = pairwise_distances(pts);
  CHECK(de.data(0, 1) == doctest::Approx(5.0));
  CHECK(de.data(1, 0) == doctest::Approx(5.0));
  CHECK(de.data(0, 0) == 0.0);

  Matrix r = random_matrix(9, 4, 55);
  auto d = pairwise_distances(r);
  CHECK(d.data.rows() == 9);
  CHECK(d.data.cols() == 9);
  for (int i = 0; i < 9; ++i) {
    CHECK(d.data(i, i) == 0.0);
    for (int j = 0; j < 9; ++j) {
      double acc = 0;
      for (int c = 0; c < 4; ++c) acc += (r(i, c) - r(j, c)) * (r(i, c) - r(j, c));
      CHECK(std::abs(d.data(i, j) - std::sqrt(acc)) < 1e-12);
      CHECK(d.data(i, j) == d.data(j, i));
    }
  }
}

TEST_CASE("distance score accounting") {
  DistanceMatrix zero2{Matrix::Zero(2, 2)};
  DistanceMatrix off;
  off.data = Matrix::Zero(2, 2);
  off.data(0, 1) = 3.0;
  off.data(1, 0) = 4.0;

  auto rep = dde_scores(off, zero2, zero2, zero2, off, zero2);
  CHECK(rep.dde1 == doctest::Approx(5.0));
  CHECK(rep.dde2 == doctest::Approx(0.0));
  CHECK(rep.dde4 == doctest::Approx(0.0));
  CHECK(rep.dde5 == doctest::Approx(5.0));

  auto self = dde_scores(zero2, zero2, zero2, zero2, zero2, zero2);
  CHECK(self.dde1 == 0.0);
  CHECK(self.dde5 == 0.0);

  DistanceMatrix three{Matrix::Zero(3, 3)};
  CHECK_THROWS_AS(dde_scores(three, zero2, zero2, zero2, zero2, zero2), Error);
  // the sample-side trio may differ in size from the ball-side trio
  auto mixed = dde_scores(zero2, zero2, zero2, three, three, three);
  CHECK(mixed.dde4 == 0.0);
}

TEST_CASE("csv export round trips") {
  Matrix m(2, 3);
  m << 1.5, -2.25, 1.0 / 3.0,
       0.0, 1e-17, 42.0;
  auto path = (std::filesystem::temp_directory_path() / "gbrvfl_mat.csv").string();
  save_matrix_csv(m, path);
  std::ifstream in(path);
  REQUIRE(in.good());
  Matrix back(2, 3);
  std::string line;
  for (int i = 0; std::getline(in, line); ++i) {
    std::stringstream row(line);
    std::string cell;
    for (int j = 0; std::getline(row, cell, ','); ++j) back(i, j) = std::stod(cell);
  }
  CHECK(back == m);
  std::remove(path.c_str());
}

TEST_CASE("pgm export writes a scaled grayscale image") {
  Matrix m(2, 2);
  m << 0.0, 1.0,
       0.5, 0.25;
  auto path = (std::filesystem::temp_directory_path() / "gbrvfl_img.pgm").string();
  save_matrix_pgm(m, path);
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string magic;
  int w, h, maxval;
  in >> magic >> w >> h >> maxval;
  CHECK(magic == "P2");
  CHECK(w == 2);
  CHECK(h == 2);
  CHECK(maxval == 255);
  int px[4];
  for (int& v : px) in >> v;
  CHECK(px[0] == 0);
  CHECK(px[1] == 255);
  CHECK(px[2] == 128);
  CHECK(px[3] == 64);

  save_matrix_pgm(Matrix::Constant(3, 3, 7.0), path);
  std::ifstream flat(path);
  flat >> magic >> w >> h >> maxval;
  int v, count = 0;
  while (flat >> v) {
    CHECK(v == 0);
    ++count;
  }
  CHECK(count == 9);
  std::remove(path.c_str());
}

}  // TEST_SUITE
