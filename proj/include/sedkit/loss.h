// sedkit/loss.h

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

#ifndef SEDKIT_LOSS_H_
#define SEDKIT_LOSS_H_

#include <span>
#include <vector>

#include "sedkit/types.h"
#include "sedkit/weighting.h"

namespace sedkit {

// Scores are clamped to [kScoreEps, 1 - kScoreEps] before any log.
inline constexpr double kScoreEps = 1e-7;

// f(y, p) = -(y ln p + (1-y) ln(1-p)) per entry; soft targets allowed.
FrameTensor bce_elementwise(const LabelTensor& labels,
                            const ScoreTensor& scores);

// Mean of mask(n,k) * class_weights[k] * elementwise(n,k) over all N*K
// entries, accumulated in row-major order so results are reproducible.
// Either weighting may be null; with both absent this is the plain mean.
double aggregate_loss(const FrameTensor& elementwise, const WeightMask* mask,
                      const std::vector<double>* class_weights);

// Boundary-weighted BCE: plain BCE averaged under the sin-window weight mask
// built from the labels. Collapses to unweighted BCE when alpha or sigma is 0.
double owbce_loss(const LabelTensor& labels, const ScoreTensor& scores,
                  const WindowParams& params);

// d owbce_loss / d score(n,k) = mask(n,k) * (p - y) / (p(1-p)) / (N*K),
// with p the clamped score.
FrameTensor owbce_gradient(const LabelTensor& labels,
                           const ScoreTensor& scores,
                           const WindowParams& params);

// Clip-level BCE for weakly labeled data: per class the clip score is the
// temporal max of frame scores; loss is the mean BCE over classes.
double weak_loss(std::span<const double> clip_labels,
                 const ScoreTensor& scores);

// Mean squared difference between two score tensors.
double consistency_loss(const ScoreTensor& student, const ScoreTensor& teacher);

struct CombinerWeights {
  double w_weak = 0.0;
  double w_cons = 0.0;
};

struct LossBreakdown {
  double strong = 0.0;
  double weak = 0.0;
  double consistency = 0.0;
  double total = 0.0;
};

// total = strong + w_weak * weak + w_cons * consistency. Boundary weighting
// applies only to the strong term; callers pass weak/consistency unweighted.
LossBreakdown combine_losses(double strong, double weak, double consistency,
                             const CombinerWeights& weights);

}  // namespace sedkit

#endif  // SEDKIT_LOSS_H_
