// sedkit/types.h

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

#ifndef SEDKIT_TYPES_H_
#define SEDKIT_TYPES_H_

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "sedkit/error.h"

namespace sedkit {

// Uniform frame grid: frame n covers [n*hop, (n+1)*hop) seconds.
struct FrameGrid {
  int num_frames = 0;
  double frame_hop = 0.0;  // seconds per frame

  double frame_start(int n) const { return n * frame_hop; }
  double frame_end(int n) const { return (n + 1) * frame_hop; }
  double clip_duration() const { return num_frames * frame_hop; }

  void validate() const {
    if (num_frames < 1)
      throw ValidationError("FrameGrid: num_frames must be >= 1, got " +
                            std::to_string(num_frames));
    if (!(frame_hop > 0.0))
      throw ValidationError("FrameGrid: frame_hop must be > 0, got " +
                            std::to_string(frame_hop));
  }
  bool operator==(const FrameGrid&) const = default;
};

// Ordered set of distinct class labels. Order fixes the column order of every
// tensor and the column order of score files.
class ClassVocabulary {
 public:
  ClassVocabulary() = default;
  explicit ClassVocabulary(std::vector<std::string> names);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int k) const { return names_.at(k); }
  const std::vector<std::string>& names() const { return names_; }

  // Throws ValidationError for labels outside the vocabulary.
  int index(const std::string& name) const;
  bool contains(const std::string& name) const {
    return index_.count(name) > 0;
  }

  bool operator==(const ClassVocabulary& other) const {
    return names_ == other.names_;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
};

// Dense N x K frame/class matrix tied to a grid and vocabulary. Storage is
// class-major: column k occupies values()[k*N .. (k+1)*N), so per-class frame
// sequences are contiguous for the kernels.
//
// Label tensors, score tensors, boundary impulses and weight masks all share
// this representation; range invariants are enforced by the producing or
// consuming operation (see check_unit_range / check_non_negative).
class FrameTensor {
 public:
  FrameTensor() = default;
  FrameTensor(FrameGrid grid, ClassVocabulary vocab, double fill = 0.0);

  int num_frames() const { return grid_.num_frames; }
  int num_classes() const { return vocab_.size(); }
  const FrameGrid& grid() const { return grid_; }
  const ClassVocabulary& vocab() const { return vocab_; }

  double operator()(int n, int k) const {
    return values_[static_cast<size_t>(k) * grid_.num_frames + n];
  }
  double& operator()(int n, int k) {
    return values_[static_cast<size_t>(k) * grid_.num_frames + n];
  }

  std::span<const double> column(int k) const {
    return {values_.data() + static_cast<size_t>(k) * grid_.num_frames,
            static_cast<size_t>(grid_.num_frames)};
  }
  std::span<double> column(int k) {
    return {values_.data() + static_cast<size_t>(k) * grid_.num_frames,
            static_cast<size_t>(grid_.num_frames)};
  }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  bool same_shape(const FrameTensor& other) const {
    return grid_ == other.grid_ && vocab_ == other.vocab_;
  }

 private:
  FrameGrid grid_;
  ClassVocabulary vocab_;
  std::vector<double> values_;
};

using LabelTensor = FrameTensor;     // entries in [0, 1]
using ScoreTensor = FrameTensor;     // entries in [0, 1]
using WeightMask = FrameTensor;      // entries >= 1 away from boundaries
using BoundaryImpulse = FrameTensor; // entries >= 0, sparse

// Throws ValidationError when any entry falls outside [0, 1].
void check_unit_range(const FrameTensor& t, const std::string& what);
void check_non_negative(const FrameTensor& t, const std::string& what);
// Throws ValidationError unless shapes (grid and vocabulary) agree.
void check_same_shape(const FrameTensor& a, const FrameTensor& b,
                      const std::string& op);

// One annotated or detected sound event, timestamps in seconds.
struct Event {
  std::string class_name;
  double onset = 0.0;
  double offset = 0.0;

  double duration() const { return offset - onset; }
};

// Events of one clip, kept sorted by (class_name, onset).
struct EventList {
  std::string clip_id;
  std::vector<Event> events;
};

// Canonical event order; every producer of EventList calls this.
void sort_events(EventList& list);
// Throws ValidationError on onset >= offset or negative onset.
void validate_events(const EventList& list);

// Row-major N x D matrix of per-frame feature vectors.
struct FeatureMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> values;  // values[n*cols + d]

  FeatureMatrix() = default;
  FeatureMatrix(int r, int c)
      : rows(r), cols(c),
        values(static_cast<size_t>(r) * static_cast<size_t>(c), 0.0) {}

  double operator()(int n, int d) const {
    return values[static_cast<size_t>(n) * cols + d];
  }
  double& operator()(int n, int d) {
    return values[static_cast<size_t>(n) * cols + d];
  }
  const double* row(int n) const {
    return values.data() + static_cast<size_t>(n) * cols;
  }
  double* row(int n) { return values.data() + static_cast<size_t>(n) * cols; }
};

}  // namespace sedkit

#endif  // SEDKIT_TYPES_H_
