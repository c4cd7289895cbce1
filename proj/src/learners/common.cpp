#include "cvbench/kernels.hpp"
#include "internal.hpp"

#include <cmath>

namespace cvbench::detail {

void Scaler::apply(const double* in, double* out, std::size_t d) const {
  kernels::scale_shift(in, shift.data(), scale.data(), out, d);
}

Scaler fit_scaler(const DataView& view) {
  std::size_t n = view.size();
  std::size_t d = view.dim();
  Scaler s;
  s.shift.assign(d, 0.0);
  s.scale.assign(d, 1.0);
  if (n == 0) return s;

  std::vector<double> mean(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double* r = view.row(i);
    for (std::size_t j = 0; j < d; ++j) mean[j] += r[j];
  }
  for (std::size_t j = 0; j < d; ++j) mean[j] /= static_cast<double>(n);

  std::vector<double> var(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double* r = view.row(i);
    for (std::size_t j = 0; j < d; ++j) {
      double diff = r[j] - mean[j];
      var[j] += diff * diff;
    }
  }
  for (std::size_t j = 0; j < d; ++j) {
    var[j] /= static_cast<double>(n);
    if (var[j] > 0.0) {
      s.shift[j] = mean[j];
      s.scale[j] = 1.0 / std::sqrt(var[j]);
    }
    // zero-variance features pass through unscaled
  }
  return s;
}

TrainSet standardize(const DataView& view, const Scaler& scaler) {
  TrainSet t;
  t.n = view.size();
  t.d = view.dim();
  t.z.resize(t.n * t.d);
  t.y.resize(t.n);
  for (std::size_t i = 0; i < t.n; ++i) {
    scaler.apply(view.row(i), t.z.data() + i * t.d, t.d);
    t.y[i] = view.label(i);
  }
  return t;
}

}  // namespace cvbench::detail
