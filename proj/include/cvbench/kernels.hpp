#pragma once
// Arithmetic inner-loop kernels. src/kernels/scalar.cpp holds the reference
// implementations; src/kernels/avx2.cpp holds AVX2+FMA variants. The active
// backend is picked once at startup from cpuid and can be overridden with
// CVBENCH_KERNELS=scalar|avx2. SIMD variants are equivalence-tested against
// the scalar reference in tests/test_kernels.cpp.

#include <cstddef>

namespace cvbench::kernels {

struct Backend {
  const char* name;
  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // sum_i (a[i] - b[i])^2
  double (*squared_l2)(const double* a, const double* b, std::size_t n);
  // sum_i x[i]
  double (*sum)(const double* x, std::size_t n);
  // sum_i w[i] * (x[i] - mu[i])^2
  double (*weighted_sq_dev_sum)(const double* x, const double* mu,
                                const double* w, std::size_t n);
  // out[i] = (x[i] - shift[i]) * scale[i]
  void (*scale_shift)(const double* x, const double* shift,
                      const double* scale, double* out, std::size_t n);
  // y[i] += alpha * x[i]
  void (*add_scaled)(double* y, const double* x, double alpha, std::size_t n);
  // p[i] += alpha * (x[i] - p[i])
  void (*lerp_toward)(double* p, const double* x, double alpha, std::size_t n);
};

const Backend& scalar_backend();
bool avx2_supported();                       // cpu + build both have it
const Backend* backend_by_name(const char* name);  // nullptr if unavailable
const Backend& active();

inline double dot(const double* a, const double* b, std::size_t n) {
  return active().dot(a, b, n);
}
inline double squared_l2(const double* a, const double* b, std::size_t n) {
  return active().squared_l2(a, b, n);
}
inline double sum(const double* x, std::size_t n) { return active().sum(x, n); }
inline double weighted_sq_dev_sum(const double* x, const double* mu,
                                  const double* w, std::size_t n) {
  return active().weighted_sq_dev_sum(x, mu, w, n);
}
inline void scale_shift(const double* x, const double* shift,
                        const double* scale, double* out, std::size_t n) {
  active().scale_shift(x, shift, scale, out, n);
}
inline void add_scaled(double* y, const double* x, double alpha,
                       std::size_t n) {
  active().add_scaled(y, x, alpha, n);
}
inline void lerp_toward(double* p, const double* x, double alpha,
                        std::size_t n) {
  active().lerp_toward(p, x, alpha, n);
}

}  // namespace cvbench::kernels
