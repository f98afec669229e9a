// sedkit/weighting.h

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

#ifndef SEDKIT_WEIGHTING_H_
#define SEDKIT_WEIGHTING_H_

#include <cstdint>
#include <span>
#include <vector>

#include "sedkit/types.h"

namespace sedkit {

// Half-sine window parameters: alpha is the peak height, sigma the width in
// frames. sigma must be odd when nonzero so the window has a center tap.
// alpha = 0 or sigma = 0 disables boundary weighting entirely.
struct WindowParams {
  double alpha = 0.0;
  int sigma = 0;
};

void validate_window(const WindowParams& params);

// Marks label transitions per class: o_k(n) = |y_k(n) - y_k(n-1)| with
// y_k(-1) = 0. Soft labels keep their amplitude in the impulse. No impulse is
// synthesized past the last frame, so an event running to the end of the clip
// has no offset impulse.
BoundaryImpulse detect_boundaries(const LabelTensor& labels);

// w[i] = alpha * sin(pi * (i+1) / (sigma+1)) for i = 0..sigma-1.
// Symmetric; peak alpha at the center tap (sigma-1)/2; empty for sigma = 0.
std::vector<double> sin_window(const WindowParams& params);

// mask = 1 + (boundary impulses convolved with the sin window), centered,
// zero padded at clip edges. Overlapping window contributions sum linearly.
WeightMask build_weight_mask(const LabelTensor& labels,
                             const WindowParams& params);

// Per-class event counts (M_k) and active-frame counts (N_k).
struct ClassStats {
  ClassVocabulary vocab;
  std::vector<std::int64_t> event_counts;
  std::vector<std::int64_t> frame_counts;
};

// From annotations: events are counted directly, frame counts come from
// rasterizing each clip onto the grid.
ClassStats collect_class_stats(std::span<const EventList> clips,
                               const FrameGrid& grid,
                               const ClassVocabulary& vocab);
// From label tensors: active frames are entries > 0.5, events are maximal
// runs of active frames.
ClassStats collect_class_stats(std::span<const LabelTensor> labels);

// omega(k) = e^{1/M_k} / sum_j e^{1/M_j}; sums to 1 and decreases in M_k.
// Any M_k = 0 is an undefined statistic and throws.
std::vector<double> count_class_weights(const ClassStats& stats);

// Effective-number weighting:
//   beta(k) = (M_k - 1) / M_k, r(k) = N_k / sum_j N_j,
//   u_k = (1 - beta) / (1 - beta^max(1, floor(lambda * r(k)))),
// normalized so the weights sum to K. M_k = 0 or N_k = 0 throws.
std::vector<double> effective_number_weights(const ClassStats& stats,
                                             double lambda);

}  // namespace sedkit

#endif  // SEDKIT_WEIGHTING_H_
