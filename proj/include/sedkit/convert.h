// sedkit/convert.h

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

#ifndef SEDKIT_CONVERT_H_
#define SEDKIT_CONVERT_H_

#include <string>

#include "sedkit/types.h"

namespace sedkit {

// Rasterizes events onto the frame grid. Frame n of class k becomes 1 iff
// [n*hop, (n+1)*hop) intersects some event of that class by at least half a
// frame. Event offsets past the clip end are clipped; unknown class names
// throw ValidationError.
LabelTensor events_to_labels(const EventList& events, const FrameGrid& grid,
                             const ClassVocabulary& vocab);

// Decodes maximal runs of active frames into events: onset = first_frame*hop,
// offset = (last_frame+1)*hop. With binarize_first the tensor is thresholded
// at 0.5 (strict >) first; otherwise entries must already be 0 or 1.
EventList labels_to_events(const LabelTensor& labels, bool binarize_first,
                           const std::string& clip_id);

}  // namespace sedkit

#endif  // SEDKIT_CONVERT_H_
