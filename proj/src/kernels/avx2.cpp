// AVX2 + FMA kernel variants. Compiled with -mavx2 -mfma; only reachable
// after a runtime cpuid check (see dispatch.cpp). Reductions use two
// independent accumulators, so results may differ from the scalar reference
// in the last ulps; the equivalence tests bound that difference.

#include "cvbench/kernels.hpp"

#if defined(CVBENCH_HAVE_AVX2)

#include <immintrin.h>

namespace cvbench::kernels {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d shuf = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4),
                           _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double squared_l2_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(a + i + 4),
                               _mm256_loadu_pd(b + i + 4));
    acc0 = _mm256_fmadd_pd(d0, d0, acc0);
    acc1 = _mm256_fmadd_pd(d1, d1, acc1);
  }
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc0 = _mm256_fmadd_pd(d, d, acc0);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) {
    double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

double sum_avx2(const double* x, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
    acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(x + i + 4));
  }
  for (; i + 4 <= n; i += 4) acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += x[i];
  return acc;
}

double weighted_sq_dev_sum_avx2(const double* x, const double* mu,
                                const double* w, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(mu + i));
    acc = _mm256_fmadd_pd(_mm256_mul_pd(_mm256_loadu_pd(w + i), d), d, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) {
    double d = x[i] - mu[i];
    s += w[i] * d * d;
  }
  return s;
}

void scale_shift_avx2(const double* x, const double* shift, const double* scale,
                      double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d =
        _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(shift + i));
    _mm256_storeu_pd(out + i, _mm256_mul_pd(d, _mm256_loadu_pd(scale + i)));
  }
  for (; i < n; ++i) out[i] = (x[i] - shift[i]) * scale[i];
}

void add_scaled_avx2(double* y, const double* x, double alpha, std::size_t n) {
  __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d r =
        _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    _mm256_storeu_pd(y + i, r);
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void lerp_toward_avx2(double* p, const double* x, double alpha, std::size_t n) {
  __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vp = _mm256_loadu_pd(p + i);
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), vp);
    _mm256_storeu_pd(p + i, _mm256_fmadd_pd(va, d, vp));
  }
  for (; i < n; ++i) p[i] += alpha * (x[i] - p[i]);
}

}  // namespace

const Backend* avx2_backend_impl() {
  static const Backend backend{
      "avx2",           dot_avx2,        squared_l2_avx2,
      sum_avx2,         weighted_sq_dev_sum_avx2,
      scale_shift_avx2, add_scaled_avx2, lerp_toward_avx2,
  };
  return &backend;
}

}  // namespace cvbench::kernels

#else

namespace cvbench::kernels {
const Backend* avx2_backend_impl() { return nullptr; }
}  // namespace cvbench::kernels

#endif
