// sedkit/metrics.h

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

#ifndef SEDKIT_METRICS_H_
#define SEDKIT_METRICS_H_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sedkit/postprocess.h"
#include "sedkit/types.h"

namespace sedkit {

// Collar-based event matching. A detection matches a reference of the same
// class iff
//   |onset_det - onset_ref|  <= onset_collar  and
//   |offset_det - offset_ref| <= max(offset_collar,
//                                    offset_duration_ratio * ref_duration).
struct F1Config {
  double onset_collar = 0.2;
  double offset_collar = 0.2;
  double offset_duration_ratio = 0.2;
};

void validate_f1(const F1Config& config);
bool event_match(const Event& det, const Event& ref, const F1Config& config);

struct ClassCounts {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;

  double precision() const { return tp + fp ? double(tp) / (tp + fp) : 0.0; }
  double recall() const { return tp + fn ? double(tp) / (tp + fn) : 0.0; }
  double f1() const {
    const std::int64_t d = 2 * tp + fp + fn;
    return d ? 2.0 * tp / d : 0.0;
  }
};

struct F1Result {
  double micro_f1 = 0.0;  // 2TP/(2TP+FP+FN) over pooled counts; 1 when both
                          // sides are empty
  ClassCounts totals;
  std::vector<std::pair<std::string, ClassCounts>> per_class;  // vocab order
};

// Greedy one-to-one matching in onset order, per clip and class. Clips
// missing from either side contribute empty event sets.
F1Result event_f1(std::span<const EventList> references,
                  std::span<const EventList> detections,
                  const F1Config& config, const ClassVocabulary& vocab);

// Intersection-criteria PSDS over a set of operating points.
//   dtc:  a detection is valid when its overlap with same-class references
//         covers >= dtc of the detection; invalid detections count as FP.
//   gtc:  a reference is a TP when valid detections cover >= gtc of it.
//   cttc: an invalid detection cross-triggers class c' when it covers >= cttc
//         of its own span with class-c' references.
// Per class, TPR is plotted against the effective FPR (FP per hour of data
// plus alpha_ct times the mean cross-trigger rate). The score is the
// normalized area under max(0, mean - alpha_st * std) of the per-class
// running-max step curves over [0, e_max].
struct PSDSConfig {
  double dtc = 0.7;
  double gtc = 0.7;
  double cttc = 0.3;
  double alpha_ct = 0.0;
  double alpha_st = 1.0;
  double e_max = 100.0;             // effective FP per hour
  std::vector<double> thresholds;   // strictly increasing, in (0,1)
};

void validate_psds(const PSDSConfig& config);
std::vector<double> default_psds_thresholds();  // 50 points, 0.01..0.99

double psds(std::span<const EventList> references,
            std::span<const std::pair<double, std::vector<EventList>>>
                detections_per_threshold,
            const PSDSConfig& config, double dataset_duration_seconds,
            const ClassVocabulary& vocab);

struct MetricReport {
  double event_f1 = 0.0;
  double psds1 = 0.0;
  double psds2 = 0.0;
  F1Result f1_detail;
};

// Full evaluation pipeline: per-class-threshold postprocessing for event-F1
// plus a threshold sweep for each PSDS scenario. Deterministic for fixed
// inputs regardless of the thread budget.
MetricReport evaluate(std::span<const EventList> references,
                      std::span<const std::pair<std::string, ScoreTensor>>
                          scores,
                      const PostprocessConfig& post_config,
                      const F1Config& f1_config,
                      const PSDSConfig& psds1_config,
                      const PSDSConfig& psds2_config);

}  // namespace sedkit

#endif  // SEDKIT_METRICS_H_
