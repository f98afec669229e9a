// sedkit/postprocess.cc

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

#include "sedkit/postprocess.h"

#include "sedkit/convert.h"
#include "sedkit/kernels.h"

namespace sedkit {

PostprocessConfig uniform_postprocess(int num_classes, double threshold,
                                      int filter_length) {
  PostprocessConfig config;
  config.thresholds.assign(num_classes, threshold);
  config.filter_lengths.assign(num_classes, filter_length);
  return config;
}

void validate_postprocess(const PostprocessConfig& config,
                          const ClassVocabulary& vocab) {
  const int k = vocab.size();
  if (static_cast<int>(config.thresholds.size()) != k ||
      static_cast<int>(config.filter_lengths.size()) != k)
    throw ValidationError(
        "postprocess config does not cover every class in the vocabulary");
  for (int i = 0; i < k; ++i) {
    const double t = config.thresholds[i];
    if (!(t > 0.0 && t < 1.0))
      throw ValidationError("threshold for class '" + vocab.name(i) +
                            "' must lie in (0, 1), got " + std::to_string(t));
    const int len = config.filter_lengths[i];
    if (len < 1 || len % 2 == 0)
      throw ValidationError("medfilt_frames for class '" + vocab.name(i) +
                            "' must be an odd positive integer, got " +
                            std::to_string(len));
  }
}

LabelTensor binarize(const ScoreTensor& scores,
                     const PostprocessConfig& config) {
  validate_postprocess(config, scores.vocab());
  check_unit_range(scores, "binarize: scores");
  LabelTensor out(scores.grid(), scores.vocab(), 0.0);
  const auto& kt = kernels::active();
  for (int k = 0; k < scores.num_classes(); ++k)
    kt.binarize(scores.column(k).data(), config.thresholds[k],
                out.column(k).data(), scores.column(k).size());
  return out;
}

LabelTensor binarize_uniform(const ScoreTensor& scores, double threshold) {
  check_unit_range(scores, "binarize: scores");
  LabelTensor out(scores.grid(), scores.vocab(), 0.0);
  kernels::active().binarize(scores.values().data(), threshold,
                             out.values().data(), scores.values().size());
  return out;
}

LabelTensor median_filter(const LabelTensor& binary,
                          const PostprocessConfig& config) {
  validate_postprocess(config, binary.vocab());
  for (double v : binary.values())
    if (v != 0.0 && v != 1.0)
      throw ValidationError("median_filter: input tensor is not binary");

  LabelTensor out(binary.grid(), binary.vocab(), 0.0);
  const auto& kt = kernels::active();
  for (int k = 0; k < binary.num_classes(); ++k)
    kt.binary_median(binary.column(k).data(), binary.column(k).size(),
                     config.filter_lengths[k], out.column(k).data());
  return out;
}

EventList postprocess_pipeline(const ScoreTensor& scores,
                               const PostprocessConfig& config,
                               const std::string& clip_id) {
  const LabelTensor hard = binarize(scores, config);
  const LabelTensor filtered = median_filter(hard, config);
  return labels_to_events(filtered, /*binarize_first=*/false, clip_id);
}

EventList postprocess_pipeline_at(const ScoreTensor& scores, double threshold,
                                  const PostprocessConfig& config,
                                  const std::string& clip_id) {
  validate_postprocess(config, scores.vocab());
  const LabelTensor hard = binarize_uniform(scores, threshold);
  const LabelTensor filtered = median_filter(hard, config);
  return labels_to_events(filtered, /*binarize_first=*/false, clip_id);
}

}  // namespace sedkit
