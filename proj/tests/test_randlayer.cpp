#include <doctest.h>

#include <cmath>

#include "gbrvfl/randlayer.hpp"
#include "gbrvfl/rng.hpp"

using namespace gbrvfl;

TEST_SUITE("randlayer") {

TEST_CASE("activation closed forms at reference points") {
  CHECK(activation_eval(Activation::Sigmoid, 0.0) == 0.5);
  CHECK(activation_eval(Activation::Tansig, 0.0) == 0.0);
  CHECK(activation_eval(Activation::Sin, 0.0) == 0.0);
  CHECK(activation_eval(Activation::Radbas, 0.0) == 1.0);
  CHECK(activation_eval(Activation::Relu, -3.0) == 0.0);
  CHECK(activation_eval(Activation::Relu, 2.0) == 2.0);
  CHECK(activation_eval(Activation::Selu, -1.0) == doctest::Approx(-1.1113).epsilon(1e-4));
  CHECK(activation_eval(Activation::Selu, 2.0) == doctest::Approx(1.0507009873554805 * 2.0).epsilon(1e-12));
  CHECK(activation_eval(Activation::Hardlim, 0.0) == 1.0);
  CHECK(activation_eval(Activation::Hardlim, -0.1) == 0.0);
  CHECK(activation_eval(Activation::Tribas, 0.25) == 0.75);
  CHECK(activation_eval(Activation::Tribas, -2.0) == 0.0);
  CHECK(activation_eval(Activation::Sgn, 0.0) == 0.0);
  CHECK(activation_eval(Activation::Sgn, 5.0) == 1.0);
  CHECK(activation_eval(Activation::Sgn, -5.0) == -1.0);
  CHECK(activation_eval(Activation::LeakyRelu, -2.0) == -0.02);
  CHECK(activation_eval(Activation::LeakyRelu, 2.0) == 2.0);
}

TEST_CASE("activation index mapping is stable") {
  CHECK(activation_from_index(1) == Activation::Selu);
  CHECK(activation_from_index(2) == Activation::Relu);
  CHECK(activation_from_index(3) == Activation::Sigmoid);
  CHECK(activation_from_index(4) == Activation::Sin);
  CHECK(activation_from_index(5) == Activation::Hardlim);
  CHECK(activation_from_index(6) == Activation::Tribas);
  CHECK(activation_from_index(7) == Activation::Radbas);
  CHECK(activation_from_index(8) == Activation::Sgn);
  CHECK(activation_from_index(9) == Activation::LeakyRelu);
  CHECK(activation_from_index(10) == Activation::Tansig);
  CHECK_THROWS_AS(activation_from_index(0), Error);
  CHECK_THROWS_AS(activation_from_index(11), Error);
}

TEST_CASE("layer draws are in range, seeded, and stream-split") {
  auto layer = make_layer(7, 40, Activation::Sigmoid, 123);
  CHECK(layer.weights.rows() == 7);
  CHECK(layer.weights.cols() == 40);
  CHECK(layer.biases.size() == 40);
  CHECK(layer.weights.minCoeff() >= -1.0);
  CHECK(layer.weights.maxCoeff() < 1.0);
  CHECK(layer.biases.minCoeff() >= 0.0);
  CHECK(layer.biases.maxCoeff() < 1.0);

  auto same = make_layer(7, 40, Activation::Sigmoid, 123);
  CHECK(layer.weights == same.weights);
  CHECK(layer.biases == same.biases);

  auto other = make_layer(7, 40, Activation::Sigmoid, 124);
  CHECK(layer.weights != other.weights);

  // documented generator contract: weights from substream 0 row-major,
  // biases from substream 1
  SplitMix64 wg(derive_seed(123, 0));
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 40; ++j) CHECK(layer.weights(i, j) == wg.next_symmetric());
  SplitMix64 bg(derive_seed(123, 1));
  for (int j = 0; j < 40; ++j) CHECK(layer.biases(j) == bg.next_unit());
}

TEST_CASE("project equals the elementwise scalar oracle") {
  auto layer = make_layer(3, 6, Activation::Tansig, 9);
  SplitMix64 g(17);
  Matrix inputs(5, 3);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 3; ++j) inputs(i, j) = g.next_symmetric() * 2.0;

  Matrix h = project(layer, inputs);
  CHECK(h.rows() == 5);
  CHECK(h.cols() == 6);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 6; ++j) {
      double pre = layer.biases(j);
      for (int kk = 0; kk < 3; ++kk) pre += inputs(i, kk) * layer.weights(kk, j);
      CHECK(h(i, j) == doctest::Approx(activation_eval(Activation::Tansig, pre)).epsilon(1e-12));
    }
  }
}

TEST_CASE("project special cases and batch consistency") {
  auto layer = make_layer(4, 8, Activation::Sigmoid, 5);
  layer.biases.setZero();
  Matrix zeros = Matrix::Zero(3, 4);
  Matrix h = project(layer, zeros);
  CHECK((h.array() == 0.5).all());

  RandomLayer tiny;
  tiny.weights = Matrix::Constant(1, 1, 1.0);
  tiny.biases = Vector::Zero(1);
  tiny.activation = Activation::Relu;
  Matrix in(1, 1);
  in << -3.0;
  CHECK(project(tiny, in)(0, 0) == 0.0);

  // concatenated batches == concatenation of projections
  auto l2 = make_layer(2, 5, Activation::Radbas, 77);
  SplitMix64 g(3);
  Matrix a(4, 2), b(3, 2);
  for (int i = 0; i < 4; ++i) for (int j = 0; j < 2; ++j) a(i, j) = g.next_symmetric();
  for (int i = 0; i < 3; ++i) for (int j = 0; j < 2; ++j) b(i, j) = g.next_symmetric();
  Matrix ab(7, 2);
  ab << a, b;
  Matrix hab = project(l2, ab);
  Matrix ha = project(l2, a);
  Matrix hb = project(l2, b);
  CHECK(hab.topRows(4) == ha);
  CHECK(hab.bottomRows(3) == hb);

  Matrix wrong(2, 3);
  wrong.setZero();
  CHECK_THROWS_AS(project(l2, wrong), Error);
}

TEST_CASE("hardlim and sgn emit only their permitted values over random input") {
  auto lh = make_layer(6, 30, Activation::Hardlim, 41);
  auto ls = make_layer(6, 30, Activation::Sgn, 42);
  SplitMix64 g(55);
  Matrix in(50, 6);
  for (int i = 0; i < 50; ++i)
    for (int j = 0; j < 6; ++j) in(i, j) = 3.0 * g.next_symmetric();
  Matrix hh = project(lh, in);
  Matrix hs = project(ls, in);
  CHECK(((hh.array() == 0.0) || (hh.array() == 1.0)).all());
  CHECK(((hs.array() == -1.0) || (hs.array() == 0.0) || (hs.array() == 1.0)).all());
}

}  // TEST_SUITE
