#include "gbrvfl/kernels.hpp"

#include <cstdlib>
#include <cstring>

#include "gbrvfl/common.hpp"

namespace gbrvfl::kernels {

const Ops& scalar_ops();
#if defined(__x86_64__) || defined(_M_X64)
const Ops& avx2_ops();
#endif

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend pick_default() {
  const char* env = std::getenv("GBRVFL_KERNELS");
  if (env && std::strcmp(env, "scalar") == 0) return Backend::Scalar;
  return cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
}

Backend& current() {
  static Backend b = pick_default();
  return b;
}

}  // namespace

bool backend_supported(Backend b) {
  switch (b) {
    case Backend::Scalar: return true;
    case Backend::Avx2: return cpu_has_avx2();
  }
  return false;
}

Backend active_backend() { return current(); }

void set_backend(Backend b) {
  if (!backend_supported(b))
    throw Error(ErrorKind::InvalidArgument,
                std::string("kernel backend not supported on this cpu: ") + backend_name(b));
  current() = b;
}

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
  }
  return "?";
}

const Ops& table(Backend b) {
#if defined(__x86_64__) || defined(_M_X64)
  if (b == Backend::Avx2) return avx2_ops();
#endif
  return scalar_ops();
}

const Ops& ops() { return table(current()); }

}  // namespace gbrvfl::kernels
