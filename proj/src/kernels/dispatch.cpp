#include "cvbench/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace cvbench::kernels {

const Backend* avx2_backend_impl();  // defined in avx2.cpp, null if not built

namespace {

bool cpu_has_avx2_fma() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Backend& choose() {
  const Backend* avx2 = avx2_supported() ? avx2_backend_impl() : nullptr;
  if (const char* env = std::getenv("CVBENCH_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return scalar_backend();
    if (std::strcmp(env, "avx2") == 0 && avx2) return *avx2;
  }
  return avx2 ? *avx2 : scalar_backend();
}

}  // namespace

bool avx2_supported() {
  return avx2_backend_impl() != nullptr && cpu_has_avx2_fma();
}

const Backend* backend_by_name(const char* name) {
  if (std::strcmp(name, "scalar") == 0) return &scalar_backend();
  if (std::strcmp(name, "avx2") == 0 && avx2_supported())
    return avx2_backend_impl();
  return nullptr;
}

const Backend& active() {
  static const Backend& backend = choose();
  return backend;
}

}  // namespace cvbench::kernels
