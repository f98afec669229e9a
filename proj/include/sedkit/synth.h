// sedkit/synth.h

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

#ifndef SEDKIT_SYNTH_H_
#define SEDKIT_SYNTH_H_

#include <cstdint>
#include <span>
#include <vector>

#include "sedkit/types.h"

namespace sedkit {

// Synthetic corpus settings. Events are placed uniformly at random without
// same-class overlap; per-frame features are a sum of per-class embedding
// vectors plus Gaussian noise. Frames within boundary_blur_frames of an event
// edge have their embedding contribution faded linearly toward the background,
// which makes the exact onset/offset frames genuinely ambiguous.
struct SynthConfig {
  int num_clips = 48;
  int clip_frames = 240;
  int num_classes = 4;
  double event_rate = 2.5;       // Poisson mean events per clip
  int duration_min_frames = 8;
  int duration_max_frames = 40;
  double noise_std = 0.2;        // feature noise
  int boundary_blur_frames = 2;
  double annotation_jitter_std = 0.0;  // seconds; applied to training labels
  std::uint64_t seed = 1;
  int feature_dim = 16;
  double frame_hop = 0.064;
};

void validate_synth(const SynthConfig& config);

struct SynthCorpus {
  ClassVocabulary vocab;
  FrameGrid grid;
  std::vector<EventList> references;   // ground truth events
  std::vector<LabelTensor> labels;     // rasterized references
  std::vector<FeatureMatrix> features;
};

// Deterministic for a fixed config (including seed). Throws InternalError if
// events cannot be placed after bounded retries.
SynthCorpus generate_corpus(const SynthConfig& config);
// Same, with caller-supplied class names (must match num_classes).
SynthCorpus generate_corpus(const SynthConfig& config,
                            const ClassVocabulary& vocab);

// Perturbs every onset and offset independently with truncated Gaussian
// noise: samples are redrawn until 0 <= onset < offset <= clip_duration, so
// no degenerate events arise. std 0 returns the input unchanged. Event count
// and class labels are preserved exactly.
std::vector<EventList> jitter_annotations(std::span<const EventList> clips,
                                          double std_seconds,
                                          std::uint64_t seed,
                                          double clip_duration_seconds);

}  // namespace sedkit

#endif  // SEDKIT_SYNTH_H_
