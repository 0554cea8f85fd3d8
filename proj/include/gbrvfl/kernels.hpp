#pragma once

#include <cstddef>
#include <string>

// Hot inner-loop kernels with a scalar reference implementation and an AVX2
// variant selected at runtime. The active table is picked once per process:
// AVX2 when the CPU supports it, unless GBRVFL_KERNELS=scalar is set in the
// environment. Tests may force a backend via set_backend.
namespace gbrvfl::kernels {

enum class Backend { Scalar, Avx2 };

struct Ops {
  void (*relu)(double* x, size_t n);
  void (*leaky_relu)(double* x, size_t n, double slope);
  void (*hardlim)(double* x, size_t n);
  void (*tribas)(double* x, size_t n);
  void (*sgn)(double* x, size_t n);
  double (*squared_distance)(const double* a, const double* b, size_t n);
  void (*vec_add)(double* acc, const double* x, size_t n);
  void (*vec_scale)(double* x, double s, size_t n);
};

bool backend_supported(Backend b);
Backend active_backend();
void set_backend(Backend b);  // throws Error(InvalidArgument) if unsupported
const char* backend_name(Backend b);

const Ops& ops();            // active table
const Ops& table(Backend b); // specific table (for equivalence tests)

}  // namespace gbrvfl::kernels
