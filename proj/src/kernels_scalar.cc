// sedkit/kernels_scalar.cc

// Copyright 2026  The sedkit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>

#include "sedkit/kernels.h"

namespace sedkit {
namespace kernels {
namespace {

void clamp_unit_scalar(const double* x, double* out, size_t n, double eps) {
  const double lo = eps, hi = 1.0 - eps;
  for (size_t i = 0; i < n; ++i)
    out[i] = std::min(std::max(x[i], lo), hi);
}

void bce_scalar(const double* y, const double* p, double* out, size_t n,
                double eps) {
  const double lo = eps, hi = 1.0 - eps;
  for (size_t i = 0; i < n; ++i) {
    const double pc = std::min(std::max(p[i], lo), hi);
    out[i] = -(y[i] * std::log(pc) + (1.0 - y[i]) * std::log(1.0 - pc));
  }
}

void bce_grad_scalar(const double* y, const double* p, const double* w,
                     double scale, double* out, size_t n, double eps) {
  const double lo = eps, hi = 1.0 - eps;
  for (size_t i = 0; i < n; ++i) {
    const double pc = std::min(std::max(p[i], lo), hi);
    double g = (pc - y[i]) / (pc * (1.0 - pc));
    g = g * scale;
    if (w) g = g * w[i];
    out[i] = g;
  }
}

void sigmoid_scalar(const double* z, double* out, size_t n) {
  // exp argument kept in [-708, 0]; saturated logits stay finite.
  for (size_t i = 0; i < n; ++i) {
    const double zc = std::min(std::max(z[i], -708.0), 708.0);
    const double e = std::exp(-std::abs(zc));
    out[i] = zc >= 0.0 ? 1.0 / (1.0 + e) : e / (1.0 + e);
  }
}

void binarize_scalar(const double* x, double threshold, double* out,
                     size_t n) {
  for (size_t i = 0; i < n; ++i) out[i] = x[i] > threshold ? 1.0 : 0.0;
}

void conv_add_scalar(const double* src, size_t n, const double* taps,
                     size_t num_taps, double* dst) {
  const long c = static_cast<long>(num_taps - 1) / 2;
  const long ln = static_cast<long>(n);
  for (long i = 0; i < ln; ++i) {
    double acc = 0.0;
    for (long j = 0; j < static_cast<long>(num_taps); ++j) {
      const long s = i + j - c;
      if (s >= 0 && s < ln) acc += src[s] * taps[j];
    }
    dst[i] += acc;
  }
}

void binary_median_scalar(const double* x, size_t n, int length, double* out) {
  const int h = (length - 1) / 2;
  const double need = (length + 1) / 2;  // ones required for a 1 output
  const long ln = static_cast<long>(n);
  // Sliding count of ones; counts are small integers, exact in double.
  double run = 0.0;
  for (long j = 0; j <= std::min<long>(h, ln - 1); ++j) run += x[j];
  for (long i = 0; i < ln; ++i) {
    out[i] = run >= need ? 1.0 : 0.0;
    const long add = i + h + 1;
    if (add < ln) run += x[add];
    const long rem = i - h;
    if (rem >= 0) run -= x[rem];
  }
}

void axpy_scalar(double a, const double* x, double* y, size_t n) {
  for (size_t i = 0; i < n; ++i) y[i] = y[i] + a * x[i];
}

double dot_scalar(const double* x, const double* y, size_t n) {
  double acc = 0.0;
  for (size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

}  // namespace

const KernelTable& scalar() {
  static const KernelTable table = {
      "scalar",          clamp_unit_scalar, bce_scalar,
      bce_grad_scalar,   sigmoid_scalar,    binarize_scalar,
      conv_add_scalar,   binary_median_scalar,
      axpy_scalar,       dot_scalar,
  };
  return table;
}

}  // namespace kernels
}  // namespace sedkit
