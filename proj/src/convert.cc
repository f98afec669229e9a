// sedkit/convert.cc

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

#include "sedkit/convert.h"

#include <algorithm>
#include <cmath>

namespace sedkit {

LabelTensor events_to_labels(const EventList& events, const FrameGrid& grid,
                             const ClassVocabulary& vocab) {
  grid.validate();
  validate_events(events);
  LabelTensor labels(grid, vocab, 0.0);
  const double hop = grid.frame_hop;
  const double clip_end = grid.clip_duration();

  for (const Event& e : events.events) {
    const int k = vocab.index(e.class_name);
    const double onset = e.onset;
    const double offset = std::min(e.offset, clip_end);
    if (offset <= onset) continue;  // event entirely past the clip end

    int n0 = static_cast<int>(std::floor(onset / hop)) - 1;
    int n1 = static_cast<int>(std::ceil(offset / hop)) + 1;
    n0 = std::max(n0, 0);
    n1 = std::min(n1, grid.num_frames - 1);
    for (int n = n0; n <= n1; ++n) {
      const double overlap = std::min(offset, grid.frame_end(n)) -
                             std::max(onset, grid.frame_start(n));
      // tiny slack so an exact half-frame tie is not lost to rounding
      if (overlap >= (0.5 - 1e-9) * hop) labels(n, k) = 1.0;
    }
  }
  return labels;
}

EventList labels_to_events(const LabelTensor& labels, bool binarize_first,
                           const std::string& clip_id) {
  EventList out;
  out.clip_id = clip_id;
  const double hop = labels.grid().frame_hop;

  for (int k = 0; k < labels.num_classes(); ++k) {
    const auto col = labels.column(k);
    int run_start = -1;
    for (int n = 0; n <= labels.num_frames(); ++n) {
      bool active = false;
      if (n < labels.num_frames()) {
        const double v = col[n];
        if (binarize_first) {
          active = v > 0.5;
        } else {
          if (v != 0.0 && v != 1.0)
            throw ValidationError(
                "labels_to_events: tensor not binary at frame " +
                std::to_string(n) + ", class '" + labels.vocab().name(k) +
                "' (value " + std::to_string(v) + ")");
          active = v == 1.0;
        }
      }
      if (active && run_start < 0) run_start = n;
      if (!active && run_start >= 0) {
        out.events.push_back(Event{labels.vocab().name(k), run_start * hop,
                                   n * hop});
        run_start = -1;
      }
    }
  }
  sort_events(out);
  return out;
}

}  // namespace sedkit
