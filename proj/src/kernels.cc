// sedkit/kernels.cc

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

#include "sedkit/kernels.h"

#include <cstdlib>
#include <string>

#include "sedkit/error.h"

namespace sedkit {
namespace kernels {

#if defined(__x86_64__)
const KernelTable* avx2_impl();  // kernels_avx2.cc, built with -mavx2
#endif

const KernelTable* avx2() {
#if defined(__x86_64__)
  if (__builtin_cpu_supports("avx2")) return avx2_impl();
#endif
  return nullptr;
}

const KernelTable& active() {
  static const KernelTable* selected = [] {
    const char* env = std::getenv("SEDKIT_KERNELS");
    const std::string mode = env ? env : "auto";
    if (mode == "scalar") return &scalar();
    if (mode == "avx2") {
      const KernelTable* t = avx2();
      if (!t)
        throw ValidationError(
            "SEDKIT_KERNELS=avx2 requested but AVX2 is not available");
      return t;
    }
    if (mode != "auto")
      throw ValidationError("SEDKIT_KERNELS: unknown mode '" + mode +
                            "' (expected scalar, avx2 or auto)");
    const KernelTable* t = avx2();
    return t ? t : &scalar();
  }();
  return *selected;
}

}  // namespace kernels
}  // namespace sedkit
