// sedkit/rng.h

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

#ifndef SEDKIT_RNG_H_
#define SEDKIT_RNG_H_

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace sedkit {
namespace rng {

// Sampling helpers on top of std::mt19937_64. The engine is fully specified
// by the standard; the std::*_distribution adapters are not, so we roll our
// own here to keep corpora byte-reproducible across standard libraries.

using Engine = std::mt19937_64;

// uniform in [0, 1), 53-bit resolution
inline double uniform01(Engine& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

inline double uniform(Engine& g, double lo, double hi) {
  return lo + (hi - lo) * uniform01(g);
}

// uniform integer in [lo, hi], hi >= lo
inline std::int64_t uniform_int(Engine& g, std::int64_t lo, std::int64_t hi) {
  const double span = static_cast<double>(hi - lo + 1);
  std::int64_t v = lo + static_cast<std::int64_t>(uniform01(g) * span);
  return v > hi ? hi : v;
}

// standard normal via Box-Muller (second value discarded)
inline double normal(Engine& g) {
  const double u1 = 1.0 - uniform01(g);  // (0, 1]
  const double u2 = uniform01(g);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.28318530717958647692 * u2);
}

// Knuth's product method; fine for the small means used here
inline int poisson(Engine& g, double mean) {
  if (mean <= 0.0) return 0;
  const double limit = std::exp(-mean);
  int k = 0;
  double p = 1.0;
  do {
    ++k;
    p *= uniform01(g);
  } while (p > limit);
  return k - 1;
}

// Fisher-Yates, deterministic across platforms
template <typename T>
void shuffle(std::vector<T>& v, Engine& g) {
  for (std::int64_t i = static_cast<std::int64_t>(v.size()) - 1; i > 0; --i) {
    const std::int64_t j = uniform_int(g, 0, i);
    std::swap(v[i], v[j]);
  }
}

}  // namespace rng
}  // namespace sedkit

#endif  // SEDKIT_RNG_H_
