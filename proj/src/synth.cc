// sedkit/synth.cc

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

#include "sedkit/synth.h"

#include <algorithm>
#include <cmath>

#include "sedkit/convert.h"
#include "sedkit/rng.h"

namespace sedkit {
namespace {

constexpr int kPlacementRetries = 100;

struct PlacedEvent {
  int class_index;
  int first_frame;
  int last_frame;  // inclusive
};

std::string make_clip_id(int i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "synth_%04d.wav", i);
  return buf;
}

}  // namespace

void validate_synth(const SynthConfig& config) {
  if (config.num_clips < 1)
    throw ValidationError("synth.num_clips must be >= 1");
  if (config.clip_frames < 1)
    throw ValidationError("synth.clip_frames must be >= 1");
  if (config.num_classes < 1)
    throw ValidationError("synth.num_classes must be >= 1");
  if (!(config.event_rate >= 0.0))
    throw ValidationError("synth.event_rate must be >= 0");
  if (config.duration_min_frames < 1)
    throw ValidationError("synth.duration_min_frames must be >= 1");
  if (config.duration_max_frames < config.duration_min_frames)
    throw ValidationError(
        "synth.duration_max_frames must be >= synth.duration_min_frames");
  if (config.duration_max_frames > config.clip_frames)
    throw ValidationError(
        "synth.duration_max_frames must not exceed synth.clip_frames");
  if (!(config.noise_std >= 0.0))
    throw ValidationError("synth.noise_std must be >= 0");
  if (config.boundary_blur_frames < 0)
    throw ValidationError("synth.boundary_blur_frames must be >= 0");
  if (!(config.annotation_jitter_std >= 0.0))
    throw ValidationError("synth.jitter_std must be >= 0");
  if (config.feature_dim < 1)
    throw ValidationError("synth.feature_dim must be >= 1");
  if (!(config.frame_hop > 0.0))
    throw ValidationError("frame_hop must be > 0");
}

SynthCorpus generate_corpus(const SynthConfig& config) {
  std::vector<std::string> names;
  names.reserve(config.num_classes);
  for (int k = 0; k < config.num_classes; ++k)
    names.push_back("event" + std::to_string(k));
  return generate_corpus(config, ClassVocabulary(std::move(names)));
}

SynthCorpus generate_corpus(const SynthConfig& config,
                            const ClassVocabulary& vocab) {
  validate_synth(config);
  if (vocab.size() != config.num_classes)
    throw ValidationError("synth.num_classes does not match the vocabulary (" +
                          std::to_string(config.num_classes) + " vs " +
                          std::to_string(vocab.size()) + ")");

  rng::Engine engine(config.seed);
  const int dim = config.feature_dim;
  const double embed_scale = 1.0 / std::sqrt(static_cast<double>(dim));

  // one embedding direction per class, background is the origin
  std::vector<std::vector<double>> embeddings(config.num_classes);
  for (auto& e : embeddings) {
    e.resize(dim);
    for (double& v : e) v = rng::normal(engine) * embed_scale;
  }

  SynthCorpus corpus;
  corpus.vocab = vocab;
  corpus.grid = FrameGrid{config.clip_frames, config.frame_hop};

  for (int i = 0; i < config.num_clips; ++i) {
    const int target = rng::poisson(engine, config.event_rate);
    std::vector<PlacedEvent> placed;

    for (int e = 0; e < target; ++e) {
      bool ok = false;
      for (int attempt = 0; attempt < kPlacementRetries && !ok; ++attempt) {
        const int k =
            static_cast<int>(rng::uniform_int(engine, 0, config.num_classes - 1));
        const int dur = static_cast<int>(rng::uniform_int(
            engine, config.duration_min_frames, config.duration_max_frames));
        const int first = static_cast<int>(
            rng::uniform_int(engine, 0, config.clip_frames - dur));
        const int last = first + dur - 1;
        ok = true;
        for (const PlacedEvent& p : placed) {
          // same-class events must stay separated by at least one frame
          if (p.class_index == k && first <= p.last_frame + 1 &&
              last >= p.first_frame - 1) {
            ok = false;
            break;
          }
        }
        if (ok) placed.push_back(PlacedEvent{k, first, last});
      }
      if (!ok)
        throw InternalError(
            "generate_corpus: could not place event " + std::to_string(e) +
            " of clip " + std::to_string(i) + " after " +
            std::to_string(kPlacementRetries) + " retries; the clip is too "
            "crowded for the configured durations");
    }

    EventList clip;
    clip.clip_id = make_clip_id(i);
    for (const PlacedEvent& p : placed)
      clip.events.push_back(Event{vocab.name(p.class_index),
                                  p.first_frame * config.frame_hop,
                                  (p.last_frame + 1) * config.frame_hop});
    sort_events(clip);

    // per-class acoustic activity with linear fade near event edges
    FeatureMatrix activity(config.clip_frames, config.num_classes);
    const int blur = config.boundary_blur_frames;
    for (const PlacedEvent& p : placed) {
      for (int n = p.first_frame; n <= p.last_frame; ++n) {
        double a = 1.0;
        if (blur > 0) {
          const int d = std::min(n - p.first_frame, p.last_frame - n);
          if (d < blur) a = static_cast<double>(d + 1) / (blur + 1);
        }
        activity(n, p.class_index) =
            std::max(activity(n, p.class_index), a);
      }
    }

    FeatureMatrix features(config.clip_frames, dim);
    for (int n = 0; n < config.clip_frames; ++n) {
      double* row = features.row(n);
      for (int k = 0; k < config.num_classes; ++k) {
        const double a = activity(n, k);
        if (a == 0.0) continue;
        const auto& emb = embeddings[k];
        for (int d = 0; d < dim; ++d) row[d] += a * emb[d];
      }
      if (config.noise_std > 0.0)
        for (int d = 0; d < dim; ++d)
          row[d] += config.noise_std * rng::normal(engine);
    }

    corpus.labels.push_back(events_to_labels(clip, corpus.grid, vocab));
    corpus.references.push_back(std::move(clip));
    corpus.features.push_back(std::move(features));
  }
  return corpus;
}

std::vector<EventList> jitter_annotations(std::span<const EventList> clips,
                                          double std_seconds,
                                          std::uint64_t seed,
                                          double clip_duration_seconds) {
  if (!(std_seconds >= 0.0))
    throw ValidationError("jitter std must be >= 0");
  std::vector<EventList> out(clips.begin(), clips.end());
  if (std_seconds == 0.0) return out;

  rng::Engine engine(seed);
  for (EventList& clip : out) {
    for (Event& e : clip.events) {
      for (int attempt = 0; attempt < 100; ++attempt) {
        const double onset = e.onset + std_seconds * rng::normal(engine);
        const double offset = e.offset + std_seconds * rng::normal(engine);
        if (onset >= 0.0 && onset < offset &&
            offset <= clip_duration_seconds) {
          e.onset = onset;
          e.offset = offset;
          break;
        }
        // keep the original timestamps if truncation never accepts
      }
    }
    sort_events(clip);
  }
  return out;
}

}  // namespace sedkit
