#include "gbrvfl/randlayer.hpp"

#include <cmath>

#include "gbrvfl/kernels.hpp"
#include "gbrvfl/rng.hpp"

namespace gbrvfl {

namespace {
constexpr double kSeluLambda = 1.0507009873554804934193349852946;
constexpr double kSeluAlpha = 1.6732632423543772848170429916717;
}  // namespace

Activation activation_from_index(int index) {
  if (index < 1 || index > 10)
    throw Error(ErrorKind::InvalidArgument,
                "activation index must be 1..10, got " + std::to_string(index));
  return static_cast<Activation>(index);
}

const char* activation_name(Activation a) {
  switch (a) {
    case Activation::Selu: return "selu";
    case Activation::Relu: return "relu";
    case Activation::Sigmoid: return "sigmoid";
    case Activation::Sin: return "sin";
    case Activation::Hardlim: return "hardlim";
    case Activation::Tribas: return "tribas";
    case Activation::Radbas: return "radbas";
    case Activation::Sgn: return "sgn";
    case Activation::LeakyRelu: return "leakyrelu";
    case Activation::Tansig: return "tansig";
  }
  return "?";
}

double activation_eval(Activation a, double x) {
  switch (a) {
    case Activation::Selu:
      return x > 0.0 ? kSeluLambda * x : kSeluLambda * kSeluAlpha * (std::exp(x) - 1.0);
    case Activation::Relu: return x > 0.0 ? x : 0.0;
    case Activation::Sigmoid: return 1.0 / (1.0 + std::exp(-x));
    case Activation::Sin: return std::sin(x);
    case Activation::Hardlim: return x >= 0.0 ? 1.0 : 0.0;
    case Activation::Tribas: {
      double t = 1.0 - std::fabs(x);
      return t > 0.0 ? t : 0.0;
    }
    case Activation::Radbas: return std::exp(-x * x);
    case Activation::Sgn: return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
    case Activation::LeakyRelu: return x > 0.0 ? x : 0.01 * x;
    case Activation::Tansig: return std::tanh(x);
  }
  return x;
}

RandomLayer make_layer(int input_dim, int hidden_nodes, Activation activation,
                       uint64_t seed) {
  if (input_dim < 1 || hidden_nodes < 1)
    throw Error(ErrorKind::InvalidArgument, "layer dimensions must be positive");
  RandomLayer layer;
  layer.activation = activation;
  layer.seed = seed;
  layer.weights = Matrix(input_dim, hidden_nodes);
  layer.biases = Vector(hidden_nodes);
  SplitMix64 wg(derive_seed(seed, 0));
  for (int i = 0; i < input_dim; ++i)
    for (int j = 0; j < hidden_nodes; ++j) layer.weights(i, j) = wg.next_symmetric();
  SplitMix64 bg(derive_seed(seed, 1));
  for (int j = 0; j < hidden_nodes; ++j) layer.biases(j) = bg.next_unit();
  return layer;
}

void apply_activation(Activation a, Matrix& m) {
  double* data = m.data();
  size_t n = static_cast<size_t>(m.size());
  const auto& k = kernels::ops();
  switch (a) {
    case Activation::Relu: k.relu(data, n); return;
    case Activation::LeakyRelu: k.leaky_relu(data, n, 0.01); return;
    case Activation::Hardlim: k.hardlim(data, n); return;
    case Activation::Tribas: k.tribas(data, n); return;
    case Activation::Sgn: k.sgn(data, n); return;
    default: break;
  }
  for (size_t i = 0; i < n; ++i) data[i] = activation_eval(a, data[i]);
}

Matrix project(const RandomLayer& layer, const Matrix& inputs) {
  if (inputs.cols() != layer.weights.rows())
    throw Error(ErrorKind::DimensionMismatch,
                "projection expects " + std::to_string(layer.weights.rows()) +
                    " input columns, got " + std::to_string(inputs.cols()));
  Matrix h = inputs * layer.weights;
  h.rowwise() += layer.biases.transpose();
  apply_activation(layer.activation, h);
  return h;
}

}  // namespace gbrvfl
