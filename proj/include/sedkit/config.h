// sedkit/config.h

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

#ifndef SEDKIT_CONFIG_H_
#define SEDKIT_CONFIG_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sedkit/metrics.h"
#include "sedkit/postprocess.h"
#include "sedkit/synth.h"
#include "sedkit/trainer.h"
#include "sedkit/types.h"
#include "sedkit/weighting.h"

namespace sedkit {

// Flat `key=value` configuration. Blank lines and lines starting with `#`
// are ignored; later assignments win. Every getter names the offending key
// in its error message.
class Config {
 public:
  Config() = default;
  static Config from_file(const std::string& path);
  static Config from_string(const std::string& text, const std::string& name);

  void set(const std::string& key, const std::string& value);
  // parses a `key=value` override (CLI --set flags)
  void set_line(const std::string& line);

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  std::string get_string(const std::string& key,
                         const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::uint64_t get_uint64(const std::string& key,
                           std::uint64_t fallback) const;
  std::vector<std::string> keys_with_prefix(const std::string& prefix) const;

 private:
  std::map<std::string, std::string> values_;
};

// Everything a pipeline stage needs, assembled from one Config. Sub-configs
// are validated on load; messages name the config key.
struct PipelineConfig {
  double frame_hop = 0.064;
  int clip_frames = 0;  // 0 = derive from the data at hand
  std::optional<ClassVocabulary> vocab;
  WindowParams window;       // window.alpha / window.sigma
  double threshold_default = 0.5;
  int medfilt_default = 7;
  std::map<std::string, double> threshold_overrides;
  std::map<std::string, int> medfilt_overrides;
  F1Config f1;
  PSDSConfig psds1;
  PSDSConfig psds2;
  TrainConfig train;
  int model_context = 2;
  SynthConfig synth;
  int experiment_seeds = 5;

  // threshold/filter vectors for a concrete vocabulary; unknown override
  // class names throw
  PostprocessConfig make_postprocess(const ClassVocabulary& vocab) const;
};

PipelineConfig load_pipeline_config(const Config& config);

}  // namespace sedkit

#endif  // SEDKIT_CONFIG_H_
