// sedkit/io.cc

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

#include "sedkit/io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace sedkit {
namespace {

constexpr const char* kEventHeader = "filename\tonset\toffset\tevent_label";

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  size_t start = 0;
  for (;;) {
    const size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_double(const std::string& s, const std::string& file, int line,
                    const std::string& what) {
  double v = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  const auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc() || res.ptr != end || !std::isfinite(v))
    throw ParseError(file, line, "cannot parse " + what + " '" + s + "'");
  return v;
}

long parse_long(const std::string& s, const std::string& file, int line,
                const std::string& what) {
  long v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ParseError(file, line, "cannot parse " + what + " '" + s + "'");
  return v;
}

// reads all lines, tolerating a trailing \r (files are written with \n)
std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

}  // namespace

std::string format_fixed(double v, int decimals) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::fixed, decimals);
  return std::string(buf, res.ptr);
}

std::string format_general(double v, int significant) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, significant);
  return std::string(buf, res.ptr);
}

std::vector<EventList> read_event_file(const std::string& path) {
  const auto lines = read_lines(path);
  if (lines.empty() || lines[0] != kEventHeader)
    throw ParseError(path, 1,
                     "expected header '" + std::string(kEventHeader) + "'");

  std::map<std::string, EventList> clips;
  for (size_t i = 1; i < lines.size(); ++i) {
    const int line_no = static_cast<int>(i) + 1;
    if (lines[i].empty()) {
      if (i + 1 == lines.size()) break;  // trailing blank line
      throw ParseError(path, line_no, "empty row");
    }
    const auto fields = split(lines[i], '\t');
    if (fields.size() != 4)
      throw ParseError(path, line_no,
                       "expected 4 tab-separated fields, got " +
                           std::to_string(fields.size()));
    if (fields[0].empty())
      throw ParseError(path, line_no, "empty filename");
    if (fields[3].empty())
      throw ParseError(path, line_no, "empty event_label");
    Event e;
    e.class_name = fields[3];
    e.onset = parse_double(fields[1], path, line_no, "onset");
    e.offset = parse_double(fields[2], path, line_no, "offset");
    auto& clip = clips[fields[0]];
    clip.clip_id = fields[0];
    clip.events.push_back(std::move(e));
  }

  std::vector<EventList> out;
  out.reserve(clips.size());
  for (auto& [id, clip] : clips) {
    (void)id;
    validate_events(clip);
    sort_events(clip);
    out.push_back(std::move(clip));
  }
  return out;
}

void write_event_file(std::span<const EventList> clips,
                      const std::string& path) {
  std::vector<const EventList*> ordered;
  ordered.reserve(clips.size());
  for (const auto& c : clips) {
    validate_events(c);
    ordered.push_back(&c);
  }
  std::sort(ordered.begin(), ordered.end(),
            [](const EventList* a, const EventList* b) {
              return a->clip_id < b->clip_id;
            });

  auto out = open_for_write(path);
  out << kEventHeader << "\n";
  for (const EventList* clip : ordered) {
    EventList sorted = *clip;
    sort_events(sorted);
    for (const Event& e : sorted.events)
      out << sorted.clip_id << '\t' << format_fixed(e.onset, 3) << '\t'
          << format_fixed(e.offset, 3) << '\t' << e.class_name << "\n";
  }
  if (!out) throw IoError("write failed for '" + path + "'");
}

ScoreTensor read_score_file(const std::string& path, double frame_hop) {
  const auto lines = read_lines(path);
  size_t first = 0;
  bool mask_mode = false;
  if (!lines.empty() && lines[0] == "# mask") {
    mask_mode = true;
    first = 1;
  }
  if (lines.size() <= first)
    throw ParseError(path, 1, "missing header row");

  const auto header = split(lines[first], ',');
  if (header.size() < 2 || header[0] != "frame_index")
    throw ParseError(path, static_cast<int>(first) + 1,
                     "expected header 'frame_index,<class names...>'");
  std::vector<std::string> names(header.begin() + 1, header.end());
  const ClassVocabulary vocab(std::move(names));
  const int num_classes = vocab.size();

  size_t num_rows = lines.size() - first - 1;
  while (num_rows > 0 && lines[first + num_rows].empty()) --num_rows;
  if (num_rows == 0)
    throw ValidationError("'" + path + "': score file has no frame rows");

  FrameGrid grid{static_cast<int>(num_rows), frame_hop};
  ScoreTensor tensor(grid, vocab, 0.0);

  for (size_t r = 0; r < num_rows; ++r) {
    const int line_no = static_cast<int>(first + r) + 2;
    const auto fields = split(lines[first + 1 + r], ',');
    if (static_cast<int>(fields.size()) != num_classes + 1)
      throw ParseError(path, line_no,
                       "expected " + std::to_string(num_classes + 1) +
                           " comma-separated fields, got " +
                           std::to_string(fields.size()));
    const long idx = parse_long(fields[0], path, line_no, "frame_index");
    if (idx != static_cast<long>(r))
      throw ValidationError("'" + path + "' line " + std::to_string(line_no) +
                            ": frame_index must ascend 0..N-1, expected " +
                            std::to_string(r) + " got " + std::to_string(idx));
    for (int k = 0; k < num_classes; ++k) {
      const double v =
          parse_double(fields[k + 1], path, line_no, "value");
      if (mask_mode) {
        if (!(v >= 0.0))
          throw ValidationError("'" + path + "' line " +
                                std::to_string(line_no) + ": mask value " +
                                std::to_string(v) + " must be >= 0");
      } else if (!(v >= 0.0 && v <= 1.0)) {
        throw ValidationError("'" + path + "' line " +
                              std::to_string(line_no) + ": value " +
                              std::to_string(v) + " outside [0, 1]");
      }
      tensor(static_cast<int>(r), k) = v;
    }
  }
  return tensor;
}

void write_score_file(const FrameTensor& tensor, const std::string& path,
                      bool mask_mode) {
  auto out = open_for_write(path);
  if (mask_mode) out << "# mask\n";
  out << "frame_index";
  for (int k = 0; k < tensor.num_classes(); ++k)
    out << ',' << tensor.vocab().name(k);
  out << "\n";
  for (int n = 0; n < tensor.num_frames(); ++n) {
    out << n;
    for (int k = 0; k < tensor.num_classes(); ++k)
      out << ',' << format_fixed(tensor(n, k), 6);
    out << "\n";
  }
  if (!out) throw IoError("write failed for '" + path + "'");
}

FeatureMatrix read_feature_file(const std::string& path) {
  const auto lines = read_lines(path);
  if (lines.empty()) throw ParseError(path, 1, "missing header row");
  const auto header = split(lines[0], ',');
  if (header.size() < 2 || header[0] != "frame_index")
    throw ParseError(path, 1, "expected header 'frame_index,f0,f1,...'");
  const int dim = static_cast<int>(header.size()) - 1;

  size_t num_rows = lines.size() - 1;
  while (num_rows > 0 && lines[num_rows].empty()) --num_rows;
  if (num_rows == 0)
    throw ValidationError("'" + path + "': feature file has no frame rows");

  FeatureMatrix features(static_cast<int>(num_rows), dim);
  for (size_t r = 0; r < num_rows; ++r) {
    const int line_no = static_cast<int>(r) + 2;
    const auto fields = split(lines[1 + r], ',');
    if (static_cast<int>(fields.size()) != dim + 1)
      throw ParseError(path, line_no,
                       "expected " + std::to_string(dim + 1) +
                           " comma-separated fields, got " +
                           std::to_string(fields.size()));
    const long idx = parse_long(fields[0], path, line_no, "frame_index");
    if (idx != static_cast<long>(r))
      throw ValidationError("'" + path + "' line " + std::to_string(line_no) +
                            ": frame_index must ascend 0..N-1");
    for (int d = 0; d < dim; ++d)
      features(static_cast<int>(r), d) =
          parse_double(fields[d + 1], path, line_no, "feature");
  }
  return features;
}

void write_feature_file(const FeatureMatrix& features,
                        const std::string& path) {
  auto out = open_for_write(path);
  out << "frame_index";
  for (int d = 0; d < features.cols; ++d) out << ",f" << d;
  out << "\n";
  for (int n = 0; n < features.rows; ++n) {
    out << n;
    for (int d = 0; d < features.cols; ++d)
      out << ',' << format_fixed(features(n, d), 6);
    out << "\n";
  }
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace sedkit
