// sedkit/postprocess.h

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

#ifndef SEDKIT_POSTPROCESS_H_
#define SEDKIT_POSTPROCESS_H_

#include <string>
#include <vector>

#include "sedkit/types.h"

namespace sedkit {

// Per-class decision thresholds in (0,1) and odd median filter lengths in
// frames. Vectors are indexed by vocabulary position.
struct PostprocessConfig {
  std::vector<double> thresholds;
  std::vector<int> filter_lengths;
};

PostprocessConfig uniform_postprocess(int num_classes, double threshold,
                                      int filter_length);
void validate_postprocess(const PostprocessConfig& config,
                          const ClassVocabulary& vocab);

// entry = 1 iff score > threshold[k] (strict, so a tie stays inactive)
LabelTensor binarize(const ScoreTensor& scores,
                     const PostprocessConfig& config);
LabelTensor binarize_uniform(const ScoreTensor& scores, double threshold);

// Per-class sliding median with zero padding at both ends; length 1 is the
// identity. Input must be binary.
LabelTensor median_filter(const LabelTensor& binary,
                          const PostprocessConfig& config);

// binarize -> median_filter -> run decoding
EventList postprocess_pipeline(const ScoreTensor& scores,
                               const PostprocessConfig& config,
                               const std::string& clip_id);
// Same pipeline at one uniform threshold (operating-point sweeps), keeping
// the configured per-class filter lengths.
EventList postprocess_pipeline_at(const ScoreTensor& scores, double threshold,
                                  const PostprocessConfig& config,
                                  const std::string& clip_id);

}  // namespace sedkit

#endif  // SEDKIT_POSTPROCESS_H_
