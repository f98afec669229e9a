// sedkit/kernels_avx2.cc

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

// This translation unit is compiled with -mavx2 on x86-64 builds only.
// Callers must check kernels::avx2() != nullptr before use.

#include "sedkit/kernels.h"

#if defined(__AVX2__)

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace sedkit {
namespace kernels {
namespace {

// ---- vector exp/log, Cephes polynomial ports -------------------------------
// Double-precision, valid for the ranges these kernels feed them:
// vexp: x in [-708, 0]; vlog: positive normal x. Agreement with libm is a
// couple of ulp, covered by the equivalence tests.

// biased exponents are < 2048, so a pack-to-int32 path suffices
inline __m256d int64_lanes_to_pd(__m256i v) {
  const __m128i lo = _mm256_castsi256_si128(v);
  const __m128i hi = _mm256_extracti128_si256(v, 1);
  const __m128i packed = _mm_unpacklo_epi64(
      _mm_shuffle_epi32(lo, _MM_SHUFFLE(0, 0, 2, 0)),
      _mm_shuffle_epi32(hi, _MM_SHUFFLE(0, 0, 2, 0)));
  return _mm256_cvtepi32_pd(packed);
}

inline __m256d vexp_pd(__m256d x) {
  const __m256d log2e = _mm256_set1_pd(1.4426950408889634073599);
  const __m256d c1 = _mm256_set1_pd(6.93145751953125e-1);
  const __m256d c2 = _mm256_set1_pd(1.42860682030941723212e-6);

  __m256d px = _mm256_floor_pd(
      _mm256_add_pd(_mm256_mul_pd(log2e, x), _mm256_set1_pd(0.5)));
  const __m128i n32 = _mm256_cvtpd_epi32(px);

  x = _mm256_sub_pd(x, _mm256_mul_pd(px, c1));
  x = _mm256_sub_pd(x, _mm256_mul_pd(px, c2));
  const __m256d xx = _mm256_mul_pd(x, x);

  // px = x * P(xx)
  __m256d p = _mm256_set1_pd(1.26177193074810590878e-4);
  p = _mm256_add_pd(_mm256_mul_pd(p, xx),
                    _mm256_set1_pd(3.02994407707441961300e-2));
  p = _mm256_add_pd(_mm256_mul_pd(p, xx),
                    _mm256_set1_pd(9.99999999999999999910e-1));
  p = _mm256_mul_pd(p, x);

  __m256d q = _mm256_set1_pd(3.00198505138664455042e-6);
  q = _mm256_add_pd(_mm256_mul_pd(q, xx),
                    _mm256_set1_pd(2.52448340349684104192e-3));
  q = _mm256_add_pd(_mm256_mul_pd(q, xx),
                    _mm256_set1_pd(2.27265548208155028766e-1));
  q = _mm256_add_pd(_mm256_mul_pd(q, xx),
                    _mm256_set1_pd(2.00000000000000000005e0));

  __m256d r = _mm256_div_pd(p, _mm256_sub_pd(q, p));
  r = _mm256_add_pd(_mm256_set1_pd(1.0),
                    _mm256_add_pd(r, r));

  // scale by 2^n via exponent bits; n stays within [-1022, 1022] here
  const __m256i n64 = _mm256_cvtepi32_epi64(n32);
  const __m256i pow2 =
      _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
  return _mm256_mul_pd(r, _mm256_castsi256_pd(pow2));
}

// log via 2*atanh((m-1)/(m+1)) on the mantissa folded into [sqrt(1/2),
// sqrt(2)); |t| <= 0.1716 so twelve series terms reach double precision
inline __m256d vlog_pd(__m256d x) {
  const __m256i mant_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
  const __m256i half_exp = _mm256_set1_epi64x(0x3FE0000000000000LL);

  const __m256i bits = _mm256_castpd_si256(x);
  const __m256i biased = _mm256_srli_epi64(
      _mm256_and_si256(bits, _mm256_set1_epi64x(0x7FF0000000000000LL)), 52);
  __m256d e =
      _mm256_sub_pd(int64_lanes_to_pd(biased), _mm256_set1_pd(1022.0));
  __m256d m = _mm256_castsi256_pd(
      _mm256_or_si256(_mm256_and_si256(bits, mant_mask), half_exp));

  const __m256d sqrth = _mm256_set1_pd(0.70710678118654752440);
  const __m256d below = _mm256_cmp_pd(m, sqrth, _CMP_LT_OQ);
  m = _mm256_add_pd(m, _mm256_and_pd(below, m));
  e = _mm256_sub_pd(e, _mm256_and_pd(below, _mm256_set1_pd(1.0)));

  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d t = _mm256_div_pd(_mm256_sub_pd(m, one),
                                  _mm256_add_pd(m, one));
  const __m256d u = _mm256_mul_pd(t, t);

  __m256d s = _mm256_set1_pd(1.0 / 23.0);
  const double coeffs[] = {1.0 / 21, 1.0 / 19, 1.0 / 17, 1.0 / 15,
                           1.0 / 13, 1.0 / 11, 1.0 / 9,  1.0 / 7,
                           1.0 / 5,  1.0 / 3,  1.0};
  for (double c : coeffs)
    s = _mm256_add_pd(_mm256_mul_pd(s, u), _mm256_set1_pd(c));
  const __m256d log_m =
      _mm256_mul_pd(_mm256_add_pd(t, t), s);

  // e*ln2 with a hi/lo split
  __m256d r = _mm256_add_pd(
      log_m, _mm256_mul_pd(e, _mm256_set1_pd(6.93145751953125e-1)));
  r = _mm256_add_pd(
      r, _mm256_mul_pd(e, _mm256_set1_pd(1.42860682030941723212e-6)));
  return r;
}

// ---- kernels ---------------------------------------------------------------

inline __m256d clamp_vec(__m256d v, __m256d lo, __m256d hi) {
  return _mm256_min_pd(_mm256_max_pd(v, lo), hi);
}

void clamp_unit_avx2(const double* x, double* out, size_t n, double eps) {
  const __m256d lo = _mm256_set1_pd(eps);
  const __m256d hi = _mm256_set1_pd(1.0 - eps);
  size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, clamp_vec(_mm256_loadu_pd(x + i), lo, hi));
  if (i < n) scalar().clamp_unit(x + i, out + i, n - i, eps);
}

void bce_avx2(const double* y, const double* p, double* out, size_t n,
              double eps) {
  const __m256d lo = _mm256_set1_pd(eps);
  const __m256d hi = _mm256_set1_pd(1.0 - eps);
  const __m256d one = _mm256_set1_pd(1.0);
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d yv = _mm256_loadu_pd(y + i);
    const __m256d pc = clamp_vec(_mm256_loadu_pd(p + i), lo, hi);
    const __m256d a = _mm256_mul_pd(yv, vlog_pd(pc));
    const __m256d b = _mm256_mul_pd(_mm256_sub_pd(one, yv),
                                    vlog_pd(_mm256_sub_pd(one, pc)));
    _mm256_storeu_pd(out + i,
                     _mm256_sub_pd(_mm256_setzero_pd(), _mm256_add_pd(a, b)));
  }
  if (i < n) scalar().bce(y + i, p + i, out + i, n - i, eps);
}

void bce_grad_avx2(const double* y, const double* p, const double* w,
                   double scale, double* out, size_t n, double eps) {
  const __m256d lo = _mm256_set1_pd(eps);
  const __m256d hi = _mm256_set1_pd(1.0 - eps);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d sc = _mm256_set1_pd(scale);
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d yv = _mm256_loadu_pd(y + i);
    const __m256d pc = clamp_vec(_mm256_loadu_pd(p + i), lo, hi);
    __m256d g = _mm256_div_pd(
        _mm256_sub_pd(pc, yv),
        _mm256_mul_pd(pc, _mm256_sub_pd(one, pc)));
    g = _mm256_mul_pd(g, sc);
    if (w) g = _mm256_mul_pd(g, _mm256_loadu_pd(w + i));
    _mm256_storeu_pd(out + i, g);
  }
  if (i < n)
    scalar().bce_grad(y + i, p + i, w ? w + i : nullptr, scale, out + i,
                      n - i, eps);
}

void sigmoid_avx2(const double* z, double* out, size_t n) {
  const __m256d lim = _mm256_set1_pd(708.0);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d zc = clamp_vec(_mm256_loadu_pd(z + i),
                                 _mm256_sub_pd(_mm256_setzero_pd(), lim), lim);
    const __m256d az = _mm256_andnot_pd(sign_mask, zc);
    const __m256d e = vexp_pd(_mm256_sub_pd(_mm256_setzero_pd(), az));
    const __m256d denom = _mm256_add_pd(one, e);
    const __m256d pos = _mm256_div_pd(one, denom);
    const __m256d neg = _mm256_div_pd(e, denom);
    const __m256d is_neg = _mm256_cmp_pd(zc, _mm256_setzero_pd(), _CMP_LT_OQ);
    _mm256_storeu_pd(out + i, _mm256_blendv_pd(pos, neg, is_neg));
  }
  if (i < n) scalar().sigmoid(z + i, out + i, n - i);
}

void binarize_avx2(const double* x, double threshold, double* out, size_t n) {
  const __m256d thr = _mm256_set1_pd(threshold);
  const __m256d one = _mm256_set1_pd(1.0);
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d m = _mm256_cmp_pd(_mm256_loadu_pd(x + i), thr, _CMP_GT_OQ);
    _mm256_storeu_pd(out + i, _mm256_and_pd(m, one));
  }
  if (i < n) scalar().binarize(x + i, threshold, out + i, n - i);
}

// bounds-checked tap loop, identical op order to the scalar reference
inline void conv_add_edge(const double* src, long ln, const double* taps,
                          long num_taps, long c, long begin, long end,
                          double* dst) {
  for (long i = begin; i < end; ++i) {
    double acc = 0.0;
    for (long j = 0; j < num_taps; ++j) {
      const long s = i + j - c;
      if (s >= 0 && s < ln) acc += src[s] * taps[j];
    }
    dst[i] += acc;
  }
}

void conv_add_avx2(const double* src, size_t n, const double* taps,
                   size_t num_taps, double* dst) {
  const long c = static_cast<long>(num_taps - 1) / 2;
  const long nt = static_cast<long>(num_taps);
  const long ln = static_cast<long>(n);
  // outputs in [lo, hi) see the full tap span in bounds
  const long lo = std::min<long>(c, ln);
  const long hi = std::max<long>(lo, ln - c);

  conv_add_edge(src, ln, taps, nt, c, 0, lo, dst);

  long i = lo;
  for (; i + 4 <= hi; i += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (long j = 0; j < nt; ++j) {
      const __m256d s = _mm256_loadu_pd(src + i + j - c);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(s, _mm256_set1_pd(taps[j])));
    }
    _mm256_storeu_pd(dst + i, _mm256_add_pd(_mm256_loadu_pd(dst + i), acc));
  }
  for (; i < hi; ++i) {
    double acc = 0.0;
    for (long j = 0; j < nt; ++j) acc += src[i + j - c] * taps[j];
    dst[i] += acc;
  }

  conv_add_edge(src, ln, taps, nt, c, hi, ln, dst);
}

// zero-padded window counts; counts are exact small integers
inline void binary_median_edge(const double* x, long ln, long h, double need,
                               long begin, long end, double* out) {
  for (long i = begin; i < end; ++i) {
    double acc = 0.0;
    for (long j = -h; j <= h; ++j) {
      const long s = i + j;
      if (s >= 0 && s < ln) acc += x[s];
    }
    out[i] = acc >= need ? 1.0 : 0.0;
  }
}

void binary_median_avx2(const double* x, size_t n, int length, double* out) {
  const long h = (length - 1) / 2;
  const double need = (length + 1) / 2;
  const long ln = static_cast<long>(n);
  const long lo = std::min<long>(h, ln);
  const long hi = std::max<long>(lo, ln - h);

  binary_median_edge(x, ln, h, need, 0, lo, out);

  const __m256d needv = _mm256_set1_pd(need);
  const __m256d one = _mm256_set1_pd(1.0);
  long i = lo;
  for (; i + 4 <= hi; i += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (long j = -h; j <= h; ++j)
      acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i + j));
    const __m256d m = _mm256_cmp_pd(acc, needv, _CMP_GE_OQ);
    _mm256_storeu_pd(out + i, _mm256_and_pd(m, one));
  }
  for (; i < hi; ++i) {
    double acc = 0.0;
    for (long j = -h; j <= h; ++j) acc += x[i + j];
    out[i] = acc >= need ? 1.0 : 0.0;
  }

  binary_median_edge(x, ln, h, need, hi, ln, out);
}

void axpy_avx2(double a, const double* x, double* y, size_t n) {
  const __m256d av = _mm256_set1_pd(a);
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d r = _mm256_add_pd(
        _mm256_loadu_pd(y + i),
        _mm256_mul_pd(av, _mm256_loadu_pd(x + i)));
    _mm256_storeu_pd(y + i, r);
  }
  if (i < n) scalar().axpy(a, x + i, y + i, n - i);
}

double dot_avx2(const double* x, const double* y, size_t n) {
  __m256d acc = _mm256_setzero_pd();
  size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_add_pd(acc,
                        _mm256_mul_pd(_mm256_loadu_pd(x + i),
                                      _mm256_loadu_pd(y + i)));
  // fixed lane order: (0+2) + (1+3), then tail in index order
  const __m128d lo = _mm256_castpd256_pd128(acc);
  const __m128d hi = _mm256_extractf128_pd(acc, 1);
  const __m128d s2 = _mm_add_pd(lo, hi);
  double r = _mm_cvtsd_f64(_mm_add_sd(s2, _mm_unpackhi_pd(s2, s2)));
  for (; i < n; ++i) r += x[i] * y[i];
  return r;
}

}  // namespace

const KernelTable* avx2_impl() {
  static const KernelTable table = {
      "avx2",         clamp_unit_avx2, bce_avx2,
      bce_grad_avx2,  sigmoid_avx2,    binarize_avx2,
      conv_add_avx2,  binary_median_avx2,
      axpy_avx2,      dot_avx2,
  };
  return &table;
}

}  // namespace kernels
}  // namespace sedkit

#endif  // __AVX2__
