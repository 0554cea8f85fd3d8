#pragma once

#include <cstdint>
#include <string>

#include "gbrvfl/common.hpp"

namespace gbrvfl {

// Activation function ids. The numbering is part of the on-disk model format.
enum class Activation : int {
  Selu = 1,
  Relu = 2,
  Sigmoid = 3,
  Sin = 4,
  Hardlim = 5,
  Tribas = 6,
  Radbas = 7,
  Sgn = 8,
  LeakyRelu = 9,
  Tansig = 10,
};

Activation activation_from_index(int index);  // Error(InvalidArgument) outside 1..10
const char* activation_name(Activation a);

double activation_eval(Activation a, double x);

struct RandomLayer {
  Matrix weights;  // P x g, uniform [-1,1)
  Vector biases;   // g, uniform [0,1)
  Activation activation = Activation::Relu;
  uint64_t seed = 0;
};

// Weights are drawn from substream 0 of the seed in row-major order, biases
// from substream 1; both via SplitMix64 so layers rebuild bit-for-bit.
RandomLayer make_layer(int input_dim, int hidden_nodes, Activation activation,
                       uint64_t seed);

// Row i of the result is activation(inputs.row(i) * weights + biases).
Matrix project(const RandomLayer& layer, const Matrix& inputs);

// In-place activation over a dense matrix; uses the kernel table where a
// vectorized variant exists.
void apply_activation(Activation a, Matrix& m);

}  // namespace gbrvfl
