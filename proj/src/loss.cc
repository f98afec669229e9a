// sedkit/loss.cc

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

#include "sedkit/loss.h"

#include <algorithm>
#include <cmath>

#include "sedkit/kernels.h"

namespace sedkit {

FrameTensor bce_elementwise(const LabelTensor& labels,
                            const ScoreTensor& scores) {
  check_same_shape(labels, scores, "bce_elementwise");
  check_unit_range(labels, "bce_elementwise: labels");
  check_unit_range(scores, "bce_elementwise: scores");
  FrameTensor out(labels.grid(), labels.vocab(), 0.0);
  kernels::active().bce(labels.values().data(), scores.values().data(),
                        out.values().data(), out.values().size(), kScoreEps);
  return out;
}

double aggregate_loss(const FrameTensor& elementwise, const WeightMask* mask,
                      const std::vector<double>* class_weights) {
  if (mask) check_same_shape(elementwise, *mask, "aggregate_loss");
  const int num_frames = elementwise.num_frames();
  const int num_classes = elementwise.num_classes();
  if (class_weights &&
      static_cast<int>(class_weights->size()) != num_classes)
    throw ValidationError("aggregate_loss: class weight vector has " +
                          std::to_string(class_weights->size()) +
                          " entries for " + std::to_string(num_classes) +
                          " classes");

  // row-major accumulation, fixed order
  double sum = 0.0;
  for (int n = 0; n < num_frames; ++n) {
    for (int k = 0; k < num_classes; ++k) {
      double term = elementwise(n, k);
      if (mask) term *= (*mask)(n, k);
      if (class_weights) term *= (*class_weights)[k];
      sum += term;
    }
  }
  return sum / (static_cast<double>(num_frames) * num_classes);
}

double owbce_loss(const LabelTensor& labels, const ScoreTensor& scores,
                  const WindowParams& params) {
  const FrameTensor elementwise = bce_elementwise(labels, scores);
  if (params.alpha == 0.0 || params.sigma == 0)
    return aggregate_loss(elementwise, nullptr, nullptr);
  const WeightMask mask = build_weight_mask(labels, params);
  return aggregate_loss(elementwise, &mask, nullptr);
}

FrameTensor owbce_gradient(const LabelTensor& labels,
                           const ScoreTensor& scores,
                           const WindowParams& params) {
  check_same_shape(labels, scores, "owbce_gradient");
  check_unit_range(labels, "owbce_gradient: labels");
  check_unit_range(scores, "owbce_gradient: scores");
  FrameTensor grad(labels.grid(), labels.vocab(), 0.0);
  const double scale =
      1.0 / (static_cast<double>(labels.num_frames()) * labels.num_classes());
  const double* mask_values = nullptr;
  WeightMask mask;
  if (params.alpha != 0.0 && params.sigma != 0) {
    mask = build_weight_mask(labels, params);
    mask_values = mask.values().data();
  }
  kernels::active().bce_grad(labels.values().data(), scores.values().data(),
                             mask_values, scale, grad.values().data(),
                             grad.values().size(), kScoreEps);
  return grad;
}

double weak_loss(std::span<const double> clip_labels,
                 const ScoreTensor& scores) {
  const int num_classes = scores.num_classes();
  if (static_cast<int>(clip_labels.size()) != num_classes)
    throw ValidationError("weak_loss: clip label vector has " +
                          std::to_string(clip_labels.size()) +
                          " entries for " + std::to_string(num_classes) +
                          " classes");
  check_unit_range(scores, "weak_loss: scores");

  double sum = 0.0;
  for (int k = 0; k < num_classes; ++k) {
    const double y = clip_labels[k];
    if (!(y >= 0.0 && y <= 1.0))
      throw ValidationError("weak_loss: clip label outside [0, 1]");
    double pooled = 0.0;
    for (double v : scores.column(k)) pooled = std::max(pooled, v);
    const double p = std::min(std::max(pooled, kScoreEps), 1.0 - kScoreEps);
    sum += -(y * std::log(p) + (1.0 - y) * std::log(1.0 - p));
  }
  return sum / num_classes;
}

double consistency_loss(const ScoreTensor& student,
                        const ScoreTensor& teacher) {
  check_same_shape(student, teacher, "consistency_loss");
  double sum = 0.0;
  for (int n = 0; n < student.num_frames(); ++n) {
    for (int k = 0; k < student.num_classes(); ++k) {
      const double d = student(n, k) - teacher(n, k);
      sum += d * d;
    }
  }
  return sum /
         (static_cast<double>(student.num_frames()) * student.num_classes());
}

LossBreakdown combine_losses(double strong, double weak, double consistency,
                             const CombinerWeights& weights) {
  if (!std::isfinite(strong) || !std::isfinite(weak) ||
      !std::isfinite(consistency))
    throw ValidationError("combine_losses: loss terms must be finite");
  if (!(weights.w_weak >= 0.0) || !(weights.w_cons >= 0.0) ||
      !std::isfinite(weights.w_weak) || !std::isfinite(weights.w_cons))
    throw ValidationError(
        "combine_losses: combiner weights must be finite and >= 0");
  LossBreakdown out;
  out.strong = strong;
  out.weak = weak;
  out.consistency = consistency;
  out.total = strong + weights.w_weak * weak + weights.w_cons * consistency;
  return out;
}

}  // namespace sedkit
