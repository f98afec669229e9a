// sedkit/trainer.cc

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

#include "sedkit/trainer.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>

#include "sedkit/convert.h"
#include "sedkit/io.h"
#include "sedkit/kernels.h"
#include "sedkit/parallel.h"
#include "sedkit/rng.h"

namespace sedkit {
namespace {

// context rows of a clip, zero padded on both sides, so the window of frame n
// is the contiguous block rows [n, n + 2c]
FeatureMatrix pad_context(const FeatureMatrix& features, int context) {
  FeatureMatrix padded(features.rows + 2 * context, features.cols);
  std::copy(features.values.begin(), features.values.end(),
            padded.row(context));
  return padded;
}

struct ClipCache {
  FeatureMatrix padded;
  int num_frames;
};

ScoreTensor forward(const LinearFrameModel& model, const ClipCache& clip,
                    const FrameGrid& grid, const ClassVocabulary& vocab) {
  const auto& kt = kernels::active();
  const int window = (2 * model.context + 1) * model.feature_dim;
  ScoreTensor scores(grid, vocab, 0.0);
  for (int k = 0; k < model.num_classes; ++k) {
    const double* wk = model.weights.data() +
                       static_cast<size_t>(k) * model.coeffs_per_class();
    const double bias = wk[window];
    auto col = scores.column(k);
    for (int n = 0; n < clip.num_frames; ++n)
      col[n] = kt.dot(wk, clip.padded.row(n), window) + bias;
  }
  kt.sigmoid(scores.values().data(), scores.values().data(),
             scores.values().size());
  return scores;
}

}  // namespace

LinearFrameModel LinearFrameModel::zeros(int context, int feature_dim,
                                         int num_classes) {
  if (context < 0) throw ValidationError("model context must be >= 0");
  if (feature_dim < 1 || num_classes < 1)
    throw ValidationError("model dimensions must be >= 1");
  LinearFrameModel m;
  m.context = context;
  m.feature_dim = feature_dim;
  m.num_classes = num_classes;
  m.weights.assign(
      static_cast<size_t>(m.coeffs_per_class()) * num_classes, 0.0);
  return m;
}

void write_model_file(const LinearFrameModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << model.context << ' ' << model.feature_dim << ' '
      << model.num_classes << "\n";
  for (double w : model.weights) out << format_general(w, 9) << "\n";
  if (!out) throw IoError("write failed for '" + path + "'");
}

LinearFrameModel read_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  LinearFrameModel m;
  if (!(in >> m.context >> m.feature_dim >> m.num_classes))
    throw ParseError(path, 1, "expected header 'context feature_dim num_classes'");
  if (m.context < 0 || m.feature_dim < 1 || m.num_classes < 1)
    throw ValidationError("'" + path + "': invalid model dimensions");
  const size_t expected =
      static_cast<size_t>(m.coeffs_per_class()) * m.num_classes;
  m.weights.resize(expected);
  for (size_t i = 0; i < expected; ++i) {
    if (!(in >> m.weights[i]) || !std::isfinite(m.weights[i]))
      throw ParseError(path, static_cast<int>(i) + 2, "bad weight value");
  }
  return m;
}

ScoreTensor predict(const LinearFrameModel& model,
                    const FeatureMatrix& features, const FrameGrid& grid,
                    const ClassVocabulary& vocab) {
  if (features.cols != model.feature_dim)
    throw ValidationError("predict: feature dimension " +
                          std::to_string(features.cols) +
                          " does not match the model (" +
                          std::to_string(model.feature_dim) + ")");
  if (vocab.size() != model.num_classes)
    throw ValidationError("predict: vocabulary size does not match the model");
  if (grid.num_frames != features.rows)
    throw ValidationError("predict: grid frame count does not match features");
  ClipCache clip{pad_context(features, model.context), features.rows};
  return forward(model, clip, grid, vocab);
}

void validate_train(const TrainConfig& config) {
  if (config.epochs < 0) throw ValidationError("train.epochs must be >= 0");
  if (!(config.learning_rate > 0.0))
    throw ValidationError("train.learning_rate must be > 0");
  if (config.batch_clips < 1)
    throw ValidationError("train.batch_clips must be >= 1");
  validate_window(config.window);
  if (!(config.combiner.w_weak >= 0.0) || !(config.combiner.w_cons >= 0.0))
    throw ValidationError("train combiner weights must be >= 0");
}

TrainResult train(const LinearFrameModel& init,
                  std::span<const FeatureMatrix> features,
                  std::span<const LabelTensor> labels,
                  const TrainConfig& config) {
  validate_train(config);
  if (features.size() != labels.size() || features.empty())
    throw ValidationError("train: need matching non-empty feature and label "
                          "lists");
  const ClassVocabulary& vocab = labels.front().vocab();
  for (const auto& l : labels)
    if (!(l.vocab() == vocab))
      throw ValidationError("train: vocabulary differs across clips");

  const int num_clips = static_cast<int>(features.size());
  const auto& kt = kernels::active();
  const int window = (2 * init.context + 1) * init.feature_dim;
  const int per_class = init.coeffs_per_class();

  std::vector<ClipCache> cache;
  cache.reserve(num_clips);
  for (int i = 0; i < num_clips; ++i) {
    if (features[i].cols != init.feature_dim)
      throw ValidationError("train: clip " + std::to_string(i) +
                            " feature dimension mismatch");
    if (features[i].rows != labels[i].num_frames())
      throw ValidationError("train: clip " + std::to_string(i) +
                            " frame count mismatch");
    cache.push_back(
        ClipCache{pad_context(features[i], init.context), features[i].rows});
  }

  // weak clip-level targets: per-class max of the frame labels
  std::vector<std::vector<double>> weak_targets(num_clips);
  for (int i = 0; i < num_clips; ++i) {
    weak_targets[i].resize(vocab.size(), 0.0);
    for (int k = 0; k < vocab.size(); ++k)
      for (double v : labels[i].column(k))
        weak_targets[i][k] = std::max(weak_targets[i][k], v);
  }

  TrainResult result;
  result.model = init;
  LinearFrameModel& model = result.model;

  auto corpus_loss = [&]() {
    double strong = 0.0, weak = 0.0;
    for (int i = 0; i < num_clips; ++i) {
      const ScoreTensor scores =
          forward(model, cache[i], labels[i].grid(), vocab);
      strong += owbce_loss(labels[i], scores, config.window);
      if (config.combiner.w_weak > 0.0)
        weak += weak_loss(weak_targets[i], scores);
    }
    strong /= num_clips;
    weak /= num_clips;
    return combine_losses(strong, weak, 0.0, config.combiner);
  };

  rng::Engine engine(config.seed);
  std::vector<int> order(num_clips);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> grad(model.weights.size());
  FrameTensor grad_z;

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    rng::shuffle(order, engine);
    for (int start = 0; start < num_clips; start += config.batch_clips) {
      const int end = std::min(num_clips, start + config.batch_clips);
      const double inv_batch = 1.0 / (end - start);
      std::fill(grad.begin(), grad.end(), 0.0);

      for (int b = start; b < end; ++b) {
        const int i = order[b];
        const ScoreTensor scores =
            forward(model, cache[i], labels[i].grid(), vocab);
        // d loss / d score, then through the sigmoid: ds/dz = s(1-s)
        grad_z = owbce_gradient(labels[i], scores, config.window);
        for (int k = 0; k < model.num_classes; ++k) {
          auto gz = grad_z.column(k);
          const auto s = scores.column(k);
          for (int n = 0; n < cache[i].num_frames; ++n)
            gz[n] *= s[n] * (1.0 - s[n]) * inv_batch;
        }
        if (config.combiner.w_weak > 0.0) {
          // max pooling routes the weak gradient to the arg-max frame
          for (int k = 0; k < model.num_classes; ++k) {
            const auto s = scores.column(k);
            int best = 0;
            for (int n = 1; n < cache[i].num_frames; ++n)
              if (s[n] > s[best]) best = n;
            const double p = std::min(std::max(s[best], kScoreEps),
                                      1.0 - kScoreEps);
            const double y = weak_targets[i][k];
            const double g = (p - y) / (p * (1.0 - p)) / vocab.size();
            grad_z.column(k)[best] += config.combiner.w_weak * g *
                                      s[best] * (1.0 - s[best]) * inv_batch;
          }
        }
        for (int k = 0; k < model.num_classes; ++k) {
          double* gk = grad.data() + static_cast<size_t>(k) * per_class;
          const auto gz = grad_z.column(k);
          for (int n = 0; n < cache[i].num_frames; ++n) {
            if (gz[n] == 0.0) continue;
            kt.axpy(gz[n], cache[i].padded.row(n), gk, window);
            gk[window] += gz[n];
          }
        }
      }
      kt.axpy(-config.learning_rate, grad.data(), model.weights.data(),
              model.weights.size());
    }

    const LossBreakdown breakdown = corpus_loss();
    if (!std::isfinite(breakdown.total))
      throw InternalError("training diverged at epoch " +
                          std::to_string(epoch) + " (loss is not finite)");
    result.trace.push_back(breakdown);
  }
  return result;
}

BoundaryError boundary_error(std::span<const EventList> references,
                             std::span<const EventList> detections,
                             const ClassVocabulary& vocab) {
  std::map<std::string, const EventList*> det_index;
  for (const EventList& d : detections) det_index[d.clip_id] = &d;

  BoundaryError err;
  double onset_sum = 0.0, offset_sum = 0.0;
  for (const EventList& ref_clip : references) {
    err.total_refs += static_cast<std::int64_t>(ref_clip.events.size());
    const auto it = det_index.find(ref_clip.clip_id);
    if (it == det_index.end()) continue;

    // per class greedy nearest-onset matching, one-to-one
    for (int k = 0; k < vocab.size(); ++k) {
      std::vector<const Event*> refs, dets;
      for (const Event& e : ref_clip.events)
        if (vocab.index(e.class_name) == k) refs.push_back(&e);
      for (const Event& e : it->second->events)
        if (vocab.index(e.class_name) == k) dets.push_back(&e);
      std::vector<bool> used(dets.size(), false);
      for (const Event* r : refs) {
        int best = -1;
        double best_dist = 0.0;
        for (size_t d = 0; d < dets.size(); ++d) {
          if (used[d]) continue;
          const double dist = std::abs(dets[d]->onset - r->onset);
          if (best < 0 || dist < best_dist) {
            best = static_cast<int>(d);
            best_dist = dist;
          }
        }
        if (best >= 0) {
          used[best] = true;
          onset_sum += std::abs(dets[best]->onset - r->onset);
          offset_sum += std::abs(dets[best]->offset - r->offset);
          err.matched += 1;
        }
      }
    }
  }
  if (err.matched > 0) {
    err.onset_mae = onset_sum / err.matched;
    err.offset_mae = offset_sum / err.matched;
  }
  return err;
}

RunMetrics run_toy_arm(const ExperimentConfig& config,
                       const WindowParams& window, std::uint64_t seed) {
  SynthConfig synth = config.synth;
  synth.seed = seed;
  const SynthCorpus corpus = generate_corpus(synth);

  std::span<const LabelTensor> train_labels(corpus.labels);
  std::vector<LabelTensor> jittered_labels;
  if (synth.annotation_jitter_std > 0.0) {
    const auto jittered = jitter_annotations(
        corpus.references, synth.annotation_jitter_std,
        synth.seed ^ 0x9e3779b97f4a7c15ULL, corpus.grid.clip_duration());
    for (const EventList& clip : jittered)
      jittered_labels.push_back(
          events_to_labels(clip, corpus.grid, corpus.vocab));
    train_labels = jittered_labels;
  }

  TrainConfig tc = config.train;
  tc.seed = seed;
  tc.window = window;

  const LinearFrameModel init = LinearFrameModel::zeros(
      config.model_context, synth.feature_dim, synth.num_classes);
  const TrainResult trained = train(init, corpus.features, train_labels, tc);

  std::vector<std::pair<std::string, ScoreTensor>> scores;
  scores.reserve(corpus.features.size());
  for (size_t i = 0; i < corpus.features.size(); ++i)
    scores.emplace_back(corpus.references[i].clip_id,
                        predict(trained.model, corpus.features[i],
                                corpus.grid, corpus.vocab));

  const MetricReport metrics =
      evaluate(corpus.references, scores, config.post, config.f1,
               config.psds1, config.psds2);

  std::vector<EventList> dets;
  dets.reserve(scores.size());
  for (const auto& [id, tensor] : scores)
    dets.push_back(postprocess_pipeline(tensor, config.post, id));
  const BoundaryError be =
      boundary_error(corpus.references, dets, corpus.vocab);

  RunMetrics run;
  run.event_f1 = metrics.event_f1;
  run.psds1 = metrics.psds1;
  run.psds2 = metrics.psds2;
  run.onset_mae = be.onset_mae;
  run.offset_mae = be.offset_mae;
  run.boundary_mae = be.onset_mae + be.offset_mae;
  run.matched_fraction =
      be.total_refs ? static_cast<double>(be.matched) / be.total_refs : 0.0;
  run.final_loss = trained.trace.empty() ? 0.0 : trained.trace.back().total;
  return run;
}

ComparisonReport compare_losses(const ExperimentConfig& config) {
  validate_synth(config.synth);
  validate_train(config.train);
  if (config.num_seeds < 1)
    throw ValidationError("experiment.seeds must be >= 1");

  ComparisonReport report;
  for (int s = 0; s < config.num_seeds; ++s)
    report.seeds.push_back(config.synth.seed + static_cast<std::uint64_t>(s));
  report.baseline.resize(config.num_seeds);
  report.weighted.resize(config.num_seeds);

  // 2 arms x num_seeds independent runs; indexed writes keep the report
  // independent of the thread budget
  parallel_for(2 * config.num_seeds, [&](int job) {
    const int s = job / 2;
    const bool weighted_arm = (job % 2) == 1;
    const WindowParams window =
        weighted_arm ? config.train.window
                     : WindowParams{0.0, config.train.window.sigma};
    (weighted_arm ? report.weighted : report.baseline)[s] =
        run_toy_arm(config, window, report.seeds[s]);
  });

  auto mean_of = [](const std::vector<RunMetrics>& runs) {
    RunMetrics m;
    for (const RunMetrics& r : runs) {
      m.event_f1 += r.event_f1;
      m.psds1 += r.psds1;
      m.psds2 += r.psds2;
      m.onset_mae += r.onset_mae;
      m.offset_mae += r.offset_mae;
      m.boundary_mae += r.boundary_mae;
      m.matched_fraction += r.matched_fraction;
      m.final_loss += r.final_loss;
    }
    const double n = static_cast<double>(runs.size());
    m.event_f1 /= n;
    m.psds1 /= n;
    m.psds2 /= n;
    m.onset_mae /= n;
    m.offset_mae /= n;
    m.boundary_mae /= n;
    m.matched_fraction /= n;
    m.final_loss /= n;
    return m;
  };
  report.baseline_mean = mean_of(report.baseline);
  report.weighted_mean = mean_of(report.weighted);
  return report;
}

}  // namespace sedkit
