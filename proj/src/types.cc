// sedkit/types.cc

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

#include "sedkit/types.h"

#include <algorithm>
#include <cmath>

namespace sedkit {

ClassVocabulary::ClassVocabulary(std::vector<std::string> names)
    : names_(std::move(names)) {
  if (names_.empty())
    throw ValidationError("ClassVocabulary: class list must not be empty");
  for (int k = 0; k < static_cast<int>(names_.size()); ++k) {
    if (names_[k].empty())
      throw ValidationError("ClassVocabulary: empty class name at position " +
                            std::to_string(k));
    auto [it, inserted] = index_.emplace(names_[k], k);
    (void)it;
    if (!inserted)
      throw ValidationError("ClassVocabulary: duplicate class name '" +
                            names_[k] + "'");
  }
}

int ClassVocabulary::index(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end())
    throw ValidationError("unknown class name '" + name + "'");
  return it->second;
}

FrameTensor::FrameTensor(FrameGrid grid, ClassVocabulary vocab, double fill)
    : grid_(grid), vocab_(std::move(vocab)) {
  grid_.validate();
  if (vocab_.size() == 0)
    throw ValidationError("FrameTensor: vocabulary must not be empty");
  values_.assign(static_cast<size_t>(grid_.num_frames) * vocab_.size(), fill);
}

void check_unit_range(const FrameTensor& t, const std::string& what) {
  for (double v : t.values()) {
    if (!(v >= 0.0 && v <= 1.0))
      throw ValidationError(what + ": value " + std::to_string(v) +
                            " outside [0, 1]");
  }
}

void check_non_negative(const FrameTensor& t, const std::string& what) {
  for (double v : t.values()) {
    if (!(v >= 0.0) || !std::isfinite(v))
      throw ValidationError(what + ": value " + std::to_string(v) +
                            " must be finite and >= 0");
  }
}

void check_same_shape(const FrameTensor& a, const FrameTensor& b,
                      const std::string& op) {
  if (!a.same_shape(b))
    throw ValidationError(op + ": tensor shapes differ (" +
                          std::to_string(a.num_frames()) + "x" +
                          std::to_string(a.num_classes()) + " vs " +
                          std::to_string(b.num_frames()) + "x" +
                          std::to_string(b.num_classes()) + ")");
}

void sort_events(EventList& list) {
  std::sort(list.events.begin(), list.events.end(),
            [](const Event& a, const Event& b) {
              if (a.class_name != b.class_name)
                return a.class_name < b.class_name;
              if (a.onset != b.onset) return a.onset < b.onset;
              return a.offset < b.offset;
            });
}

void validate_events(const EventList& list) {
  for (const Event& e : list.events) {
    if (!(e.onset >= 0.0))
      throw ValidationError("clip '" + list.clip_id + "': event '" +
                            e.class_name + "' has negative onset");
    if (!(e.onset < e.offset))
      throw ValidationError("clip '" + list.clip_id + "': event '" +
                            e.class_name + "' has onset >= offset (" +
                            std::to_string(e.onset) + " >= " +
                            std::to_string(e.offset) + ")");
  }
}

}  // namespace sedkit
