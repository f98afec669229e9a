// sedkit/weighting.cc

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

#include "sedkit/weighting.h"

#include <cmath>

#include "sedkit/convert.h"
#include "sedkit/kernels.h"

namespace sedkit {
namespace {

constexpr double kPi = 3.14159265358979323846;

// exact integer exponent, binary exponentiation
double ipow(double base, std::int64_t e) {
  double result = 1.0;
  double b = base;
  while (e > 0) {
    if (e & 1) result *= b;
    b *= b;
    e >>= 1;
  }
  return result;
}

void check_stats(const ClassStats& stats, bool need_frames,
                 const char* origin) {
  const int k = stats.vocab.size();
  if (static_cast<int>(stats.event_counts.size()) != k ||
      static_cast<int>(stats.frame_counts.size()) != k)
    throw ValidationError(std::string(origin) +
                          ": stats size does not match vocabulary");
  for (int i = 0; i < k; ++i) {
    if (stats.event_counts[i] < 1)
      throw ValidationError(std::string(origin) + ": class '" +
                            stats.vocab.name(i) +
                            "' has no events; weight undefined");
    if (need_frames && stats.frame_counts[i] < 1)
      throw ValidationError(std::string(origin) + ": class '" +
                            stats.vocab.name(i) +
                            "' has no active frames; weight undefined");
  }
}

}  // namespace

void validate_window(const WindowParams& params) {
  if (!(params.alpha >= 0.0) || !std::isfinite(params.alpha))
    throw ValidationError("window alpha must be finite and >= 0, got " +
                          std::to_string(params.alpha));
  if (params.sigma < 0)
    throw ValidationError("window sigma must be >= 0, got " +
                          std::to_string(params.sigma));
  if (params.sigma > 0 && params.sigma % 2 == 0)
    throw ValidationError("window sigma must be odd so the window has a "
                          "center tap, got " +
                          std::to_string(params.sigma));
}

BoundaryImpulse detect_boundaries(const LabelTensor& labels) {
  check_unit_range(labels, "detect_boundaries: labels");
  BoundaryImpulse impulses(labels.grid(), labels.vocab(), 0.0);
  for (int k = 0; k < labels.num_classes(); ++k) {
    const auto y = labels.column(k);
    auto o = impulses.column(k);
    double prev = 0.0;  // y(-1) = 0
    for (int n = 0; n < labels.num_frames(); ++n) {
      o[n] = std::abs(y[n] - prev);
      prev = y[n];
    }
  }
  return impulses;
}

std::vector<double> sin_window(const WindowParams& params) {
  validate_window(params);
  std::vector<double> window(params.sigma);
  for (int i = 0; i < params.sigma; ++i)
    window[i] = params.alpha * std::sin(kPi * (i + 1) / (params.sigma + 1));
  return window;
}

WeightMask build_weight_mask(const LabelTensor& labels,
                             const WindowParams& params) {
  validate_window(params);
  WeightMask mask(labels.grid(), labels.vocab(), 1.0);
  if (params.alpha == 0.0 || params.sigma == 0) return mask;

  const BoundaryImpulse impulses = detect_boundaries(labels);
  const std::vector<double> window = sin_window(params);
  const auto& k = kernels::active();
  const size_t n = static_cast<size_t>(labels.num_frames());
  for (int c = 0; c < labels.num_classes(); ++c)
    k.conv_add(impulses.column(c).data(), n, window.data(), window.size(),
               mask.column(c).data());
  return mask;
}

ClassStats collect_class_stats(std::span<const EventList> clips,
                               const FrameGrid& grid,
                               const ClassVocabulary& vocab) {
  ClassStats stats{vocab,
                   std::vector<std::int64_t>(vocab.size(), 0),
                   std::vector<std::int64_t>(vocab.size(), 0)};
  for (const EventList& clip : clips) {
    for (const Event& e : clip.events)
      stats.event_counts[vocab.index(e.class_name)] += 1;
    const LabelTensor labels = events_to_labels(clip, grid, vocab);
    for (int k = 0; k < vocab.size(); ++k)
      for (double v : labels.column(k))
        if (v > 0.5) stats.frame_counts[k] += 1;
  }
  return stats;
}

ClassStats collect_class_stats(std::span<const LabelTensor> labels) {
  if (labels.empty())
    throw ValidationError("collect_class_stats: empty label list");
  const ClassVocabulary& vocab = labels.front().vocab();
  ClassStats stats{vocab,
                   std::vector<std::int64_t>(vocab.size(), 0),
                   std::vector<std::int64_t>(vocab.size(), 0)};
  for (const LabelTensor& tensor : labels) {
    if (!(tensor.vocab() == vocab))
      throw ValidationError(
          "collect_class_stats: vocabulary differs across clips");
    for (int k = 0; k < vocab.size(); ++k) {
      bool in_run = false;
      for (double v : tensor.column(k)) {
        const bool active = v > 0.5;
        if (active) {
          stats.frame_counts[k] += 1;
          if (!in_run) stats.event_counts[k] += 1;
        }
        in_run = active;
      }
    }
  }
  return stats;
}

std::vector<double> count_class_weights(const ClassStats& stats) {
  check_stats(stats, /*need_frames=*/false, "count_class_weights");
  const int k = stats.vocab.size();
  std::vector<double> weights(k);
  double sum = 0.0;
  for (int i = 0; i < k; ++i) {
    weights[i] = std::exp(1.0 / static_cast<double>(stats.event_counts[i]));
    sum += weights[i];
  }
  for (double& w : weights) w /= sum;
  return weights;
}

std::vector<double> effective_number_weights(const ClassStats& stats,
                                             double lambda) {
  check_stats(stats, /*need_frames=*/true, "effective_number_weights");
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw ValidationError("effective_number_weights: lambda must be > 0");
  const int k = stats.vocab.size();

  double total_frames = 0.0;
  for (auto n : stats.frame_counts) total_frames += static_cast<double>(n);

  std::vector<double> u(k);
  double sum = 0.0;
  for (int i = 0; i < k; ++i) {
    const double m = static_cast<double>(stats.event_counts[i]);
    const double beta = (m - 1.0) / m;
    const double r = static_cast<double>(stats.frame_counts[i]) / total_frames;
    const std::int64_t e =
        std::max<std::int64_t>(1, static_cast<std::int64_t>(
                                      std::floor(lambda * r)));
    u[i] = (1.0 - beta) / (1.0 - ipow(beta, e));
    sum += u[i];
  }
  std::vector<double> weights(k);
  for (int i = 0; i < k; ++i) weights[i] = k * u[i] / sum;
  return weights;
}

}  // namespace sedkit
