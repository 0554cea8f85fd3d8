#include <cmath>
#include <cstddef>

#include "gbrvfl/kernels.hpp"

namespace gbrvfl::kernels {
namespace {

void relu_scalar(double* x, size_t n) {
  for (size_t i = 0; i < n; ++i) x[i] = x[i] > 0.0 ? x[i] : 0.0;
}

void leaky_relu_scalar(double* x, size_t n, double slope) {
  for (size_t i = 0; i < n; ++i) x[i] = x[i] > 0.0 ? x[i] : slope * x[i];
}

void hardlim_scalar(double* x, size_t n) {
  for (size_t i = 0; i < n; ++i) x[i] = x[i] >= 0.0 ? 1.0 : 0.0;
}

void tribas_scalar(double* x, size_t n) {
  for (size_t i = 0; i < n; ++i) {
    double t = 1.0 - std::fabs(x[i]);
    x[i] = t > 0.0 ? t : 0.0;
  }
}

void sgn_scalar(double* x, size_t n) {
  for (size_t i = 0; i < n; ++i) x[i] = x[i] > 0.0 ? 1.0 : (x[i] < 0.0 ? -1.0 : 0.0);
}

double squared_distance_scalar(const double* a, const double* b, size_t n) {
  double acc = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

void vec_add_scalar(double* acc, const double* x, size_t n) {
  for (size_t i = 0; i < n; ++i) acc[i] += x[i];
}

void vec_scale_scalar(double* x, double s, size_t n) {
  for (size_t i = 0; i < n; ++i) x[i] *= s;
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops t = {
      relu_scalar,    leaky_relu_scalar, hardlim_scalar,
      tribas_scalar,  sgn_scalar,        squared_distance_scalar,
      vec_add_scalar, vec_scale_scalar,
  };
  return t;
}

}  // namespace gbrvfl::kernels
