// sedkit/kernels.h

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

#ifndef SEDKIT_KERNELS_H_
#define SEDKIT_KERNELS_H_

#include <cstddef>

namespace sedkit {
namespace kernels {

// Data-parallel inner loops behind the tensor operations. Every kernel has a
// scalar reference implementation and may have an AVX2 variant; the variant
// used at runtime is picked once by active().
//
// Contract per kernel family:
//  * maps (clamp_unit, binarize, bce_grad, axpy, conv_add, binary_median)
//    produce bit-identical results in every variant: same per-element
//    operation sequence, no FMA contraction.
//  * transcendental maps (bce, sigmoid) agree with the scalar reference to
//    a few ulp; the variant in use is fixed for the process lifetime, so
//    results stay byte-reproducible on a given machine.
//  * reductions (dot) use a variant-specific but fixed accumulation order.
struct KernelTable {
  const char* name;

  // out[i] = min(max(x[i], eps), 1 - eps)
  void (*clamp_unit)(const double* x, double* out, size_t n, double eps);

  // out[i] = -( y[i]*log(p') + (1-y[i])*log(1-p') ), p' = clamped p[i]
  void (*bce)(const double* y, const double* p, double* out, size_t n,
              double eps);

  // out[i] = w[i] * scale * (p' - y[i]) / (p' * (1 - p')), w == nullptr -> 1
  void (*bce_grad)(const double* y, const double* p, const double* w,
                   double scale, double* out, size_t n, double eps);

  // out[i] = 1 / (1 + exp(-z[i])), computed through exp(-|z|)
  void (*sigmoid)(const double* z, double* out, size_t n);

  // out[i] = x[i] > threshold ? 1 : 0
  void (*binarize)(const double* x, double threshold, double* out, size_t n);

  // dst[i] += sum_j src[i + j - c] * taps[j], c = (num_taps-1)/2, zero padded.
  // num_taps must be odd.
  void (*conv_add)(const double* src, size_t n, const double* taps,
                   size_t num_taps, double* dst);

  // Sliding median of a 0/1 sequence, window `length` (odd), zero padded:
  // out[i] = 1 iff the window around i holds >= (length+1)/2 ones.
  void (*binary_median)(const double* x, size_t n, int length, double* out);

  // y[i] += a * x[i]
  void (*axpy)(double a, const double* x, double* y, size_t n);

  // sum_i x[i] * y[i]
  double (*dot)(const double* x, const double* y, size_t n);
};

// Scalar reference implementation; always available.
const KernelTable& scalar();

// AVX2 variant, or nullptr when the build or the CPU lacks AVX2 support.
const KernelTable* avx2();

// Variant selected for this process: SEDKIT_KERNELS=scalar|avx2|auto
// (default auto = AVX2 when available). Read once.
const KernelTable& active();

}  // namespace kernels
}  // namespace sedkit

#endif  // SEDKIT_KERNELS_H_
