// sedkit/parallel.h

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

#ifndef SEDKIT_PARALLEL_H_
#define SEDKIT_PARALLEL_H_

#include <functional>

namespace sedkit {

// Thread cap from SEDKIT_THREADS (0 or unset = hardware concurrency).
int thread_budget();

// Runs fn(i) for i in [0, n). Work is partitioned statically; callers must
// write results into per-index slots so output does not depend on the thread
// count. Exceptions propagate (first one wins).
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace sedkit

#endif  // SEDKIT_PARALLEL_H_
