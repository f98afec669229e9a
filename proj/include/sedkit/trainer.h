// sedkit/trainer.h

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

#ifndef SEDKIT_TRAINER_H_
#define SEDKIT_TRAINER_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sedkit/loss.h"
#include "sedkit/metrics.h"
#include "sedkit/synth.h"
#include "sedkit/types.h"
#include "sedkit/weighting.h"

namespace sedkit {

// Per-class logistic regression over a temporal context window: the score of
// frame n is sigmoid(w_k . x[n-c..n+c] + b_k) with zero-padded context at the
// clip edges.
struct LinearFrameModel {
  int context = 2;
  int feature_dim = 0;
  int num_classes = 0;
  // class-major: for each class, (2*context+1)*feature_dim coefficients
  // followed by the bias
  std::vector<double> weights;

  int coeffs_per_class() const {
    return (2 * context + 1) * feature_dim + 1;
  }
  static LinearFrameModel zeros(int context, int feature_dim, int num_classes);
};

// Flat text model file: header `context feature_dim num_classes`, then one
// weight per line with 9 significant digits.
void write_model_file(const LinearFrameModel& model, const std::string& path);
LinearFrameModel read_model_file(const std::string& path);

ScoreTensor predict(const LinearFrameModel& model,
                    const FeatureMatrix& features, const FrameGrid& grid,
                    const ClassVocabulary& vocab);

struct TrainConfig {
  int epochs = 150;
  double learning_rate = 0.5;
  int batch_clips = 8;
  WindowParams window;       // alpha = 0 trains plain BCE
  CombinerWeights combiner;  // weak term joins training when w_weak > 0
  std::uint64_t seed = 1;
};

void validate_train(const TrainConfig& config);

struct TrainResult {
  LinearFrameModel model;
  std::vector<LossBreakdown> trace;  // full-corpus loss after each epoch
};

// Mini-batch SGD on the boundary-weighted BCE, gradients pushed through the
// sigmoid and the affine map analytically. The consistency term has no
// teacher in this trainer and stays zero. Throws InternalError (naming the
// epoch) if the loss stops being finite.
TrainResult train(const LinearFrameModel& init,
                  std::span<const FeatureMatrix> features,
                  std::span<const LabelTensor> labels,
                  const TrainConfig& config);

// One trained arm of the paired experiment evaluated against the true
// references. Boundary errors are measured over greedily matched
// reference/detection pairs (nearest onset, same class, one-to-one).
struct RunMetrics {
  double event_f1 = 0.0;
  double psds1 = 0.0;
  double psds2 = 0.0;
  double onset_mae = 0.0;
  double offset_mae = 0.0;
  double boundary_mae = 0.0;  // onset_mae + offset_mae
  double matched_fraction = 0.0;
  double final_loss = 0.0;
};

struct ExperimentConfig {
  SynthConfig synth;
  TrainConfig train;  // window of the weighted arm
  PostprocessConfig post;
  F1Config f1;
  PSDSConfig psds1;
  PSDSConfig psds2;
  int num_seeds = 5;
  int model_context = 2;
};

struct ComparisonReport {
  std::vector<std::uint64_t> seeds;
  std::vector<RunMetrics> baseline;  // plain BCE arm, per seed
  std::vector<RunMetrics> weighted;  // OWBCE arm, per seed
  RunMetrics baseline_mean;
  RunMetrics weighted_mean;
};

// Generates a corpus for `seed`, trains one model under `window` and
// evaluates it against the true references. When
// synth.annotation_jitter_std > 0 the training labels are rasterized from
// jittered annotations while evaluation still uses the clean references.
RunMetrics run_toy_arm(const ExperimentConfig& config,
                       const WindowParams& window, std::uint64_t seed);

// Trains paired models (plain BCE vs boundary-weighted BCE) with shared seeds
// so the two arms differ only in the loss, then evaluates both against the
// unjittered references.
ComparisonReport compare_losses(const ExperimentConfig& config);

// Boundary localization error between references and detections; exposed for
// the sweep and experiment commands.
struct BoundaryError {
  double onset_mae = 0.0;
  double offset_mae = 0.0;
  std::int64_t matched = 0;
  std::int64_t total_refs = 0;
};
BoundaryError boundary_error(std::span<const EventList> references,
                             std::span<const EventList> detections,
                             const ClassVocabulary& vocab);

}  // namespace sedkit

#endif  // SEDKIT_TRAINER_H_
