// AVX2 + FMA kernel variants. This translation unit is the only one compiled
// with -mavx2 -mfma; callers reach it through the runtime-dispatched table.
#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <cstddef>

#include "gbrvfl/kernels.hpp"

namespace gbrvfl::kernels {
namespace {

void relu_avx2(double* x, size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(x + i);
    _mm256_storeu_pd(x + i, _mm256_max_pd(v, zero));
  }
  for (; i < n; ++i) x[i] = x[i] > 0.0 ? x[i] : 0.0;
}

void leaky_relu_avx2(double* x, size_t n, double slope) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d k = _mm256_set1_pd(slope);
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(x + i);
    __m256d neg = _mm256_mul_pd(v, k);
    __m256d mask = _mm256_cmp_pd(v, zero, _CMP_GT_OQ);
    _mm256_storeu_pd(x + i, _mm256_blendv_pd(neg, v, mask));
  }
  for (; i < n; ++i) x[i] = x[i] > 0.0 ? x[i] : slope * x[i];
}

void hardlim_avx2(double* x, size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(x + i);
    __m256d mask = _mm256_cmp_pd(v, zero, _CMP_GE_OQ);
    _mm256_storeu_pd(x + i, _mm256_and_pd(mask, one));
  }
  for (; i < n; ++i) x[i] = x[i] >= 0.0 ? 1.0 : 0.0;
}

void tribas_avx2(double* x, size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d absmask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7FFFFFFFFFFFFFFFLL));
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(x + i);
    __m256d t = _mm256_sub_pd(one, _mm256_and_pd(v, absmask));
    _mm256_storeu_pd(x + i, _mm256_max_pd(t, zero));
  }
  for (; i < n; ++i) {
    double t = 1.0 - std::fabs(x[i]);
    x[i] = t > 0.0 ? t : 0.0;
  }
}

void sgn_avx2(double* x, size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d minus_one = _mm256_set1_pd(-1.0);
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(x + i);
    __m256d pos = _mm256_and_pd(_mm256_cmp_pd(v, zero, _CMP_GT_OQ), one);
    __m256d neg = _mm256_and_pd(_mm256_cmp_pd(v, zero, _CMP_LT_OQ), minus_one);
    _mm256_storeu_pd(x + i, _mm256_or_pd(pos, neg));
  }
  for (; i < n; ++i) x[i] = x[i] > 0.0 ? 1.0 : (x[i] < 0.0 ? -1.0 : 0.0);
}

double squared_distance_avx2(const double* a, const double* b, size_t n) {
  __m256d acc = _mm256_setzero_pd();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_fmadd_pd(d, d, acc);
  }
  __m128d lo = _mm256_castpd256_pd128(acc);
  __m128d hi = _mm256_extractf128_pd(acc, 1);
  __m128d sum2 = _mm_add_pd(lo, hi);
  double sum = _mm_cvtsd_f64(_mm_add_sd(sum2, _mm_unpackhi_pd(sum2, sum2)));
  for (; i < n; ++i) {
    double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

void vec_add_avx2(double* acc, const double* x, size_t n) {
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_add_pd(_mm256_loadu_pd(acc + i), _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(acc + i, v);
  }
  for (; i < n; ++i) acc[i] += x[i];
}

void vec_scale_avx2(double* x, double s, size_t n) {
  const __m256d k = _mm256_set1_pd(s);
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(x + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), k));
  }
  for (; i < n; ++i) x[i] *= s;
}

}  // namespace

const Ops& avx2_ops() {
  static const Ops t = {
      relu_avx2,    leaky_relu_avx2, hardlim_avx2,
      tribas_avx2,  sgn_avx2,        squared_distance_avx2,
      vec_add_avx2, vec_scale_avx2,
  };
  return t;
}

}  // namespace gbrvfl::kernels

#endif  // x86_64
