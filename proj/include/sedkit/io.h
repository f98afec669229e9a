// sedkit/io.h

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

#ifndef SEDKIT_IO_H_
#define SEDKIT_IO_H_

#include <span>
#include <string>
#include <vector>

#include "sedkit/types.h"

namespace sedkit {

// Locale-independent float formatting (std::to_chars based).
std::string format_fixed(double v, int decimals);
std::string format_general(double v, int significant);

// Event TSV: header `filename<TAB>onset<TAB>offset<TAB>event_label`, one row
// per event. Reading groups rows by filename (clips sorted by id, events in
// canonical order); writing emits timestamps with 3 decimals.
std::vector<EventList> read_event_file(const std::string& path);
void write_event_file(std::span<const EventList> clips,
                      const std::string& path);

// Score CSV: header `frame_index,<class names...>`, one row per frame with
// frame_index counting 0..N-1. Values must lie in [0, 1] unless the file
// starts with a `# mask` line, which relaxes the range to finite >= 0.
// frame_hop is pipeline configuration and never stored in the file.
ScoreTensor read_score_file(const std::string& path, double frame_hop);
void write_score_file(const FrameTensor& tensor, const std::string& path,
                      bool mask_mode = false);

// Feature CSV: header `frame_index,f0,f1,...`; values unrestricted floats.
FeatureMatrix read_feature_file(const std::string& path);
void write_feature_file(const FeatureMatrix& features,
                        const std::string& path);

}  // namespace sedkit

#endif  // SEDKIT_IO_H_
