// sedkit/config.cc

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

#include "sedkit/config.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace sedkit {
namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(s);
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

double parse_double_value(const std::string& key, const std::string& value) {
  double v = 0.0;
  const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
  if (res.ec != std::errc() || res.ptr != value.data() + value.size() ||
      !std::isfinite(v))
    throw ValidationError("config key '" + key + "': expected a number, got '" +
                          value + "'");
  return v;
}

long parse_long_value(const std::string& key, const std::string& value) {
  long v = 0;
  const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
  if (res.ec != std::errc() || res.ptr != value.data() + value.size())
    throw ValidationError("config key '" + key +
                          "': expected an integer, got '" + value + "'");
  return v;
}

// thresholds accept either an explicit comma list or `start:stop:count`
std::vector<double> parse_thresholds(const std::string& key,
                                     const std::string& value) {
  std::vector<double> out;
  if (value.find(':') != std::string::npos) {
    const auto parts = split_list(value, ':');
    if (parts.size() != 3)
      throw ValidationError("config key '" + key +
                            "': expected start:stop:count");
    const double start = parse_double_value(key, parts[0]);
    const double stop = parse_double_value(key, parts[1]);
    const long count = parse_long_value(key, parts[2]);
    if (count < 1 || (count == 1 && stop != start) || stop < start)
      throw ValidationError("config key '" + key +
                            "': invalid start:stop:count range");
    for (long i = 0; i < count; ++i)
      out.push_back(count == 1 ? start
                               : start + i * (stop - start) / (count - 1));
    return out;
  }
  for (const auto& item : split_list(value, ','))
    out.push_back(parse_double_value(key, item));
  return out;
}

}  // namespace

Config Config::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_string(buffer.str(), path);
}

Config Config::from_string(const std::string& text, const std::string& name) {
  Config config;
  std::stringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const size_t eq = t.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ParseError(name, line_no, "expected key=value, got '" + t + "'");
    config.set(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return config;
}

void Config::set(const std::string& key, const std::string& value) {
  if (key.empty()) throw ValidationError("config: empty key");
  values_[key] = value;
}

void Config::set_line(const std::string& line) {
  const size_t eq = line.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ValidationError("override '" + line + "': expected key=value");
  set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
}

std::string Config::get_string(const std::string& key,
                               const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  return parse_double_value(key, it->second);
}

int Config::get_int(const std::string& key, int fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const long v = parse_long_value(key, it->second);
  return static_cast<int>(v);
}

std::uint64_t Config::get_uint64(const std::string& key,
                                 std::uint64_t fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::uint64_t v = 0;
  const std::string& s = it->second;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ValidationError("config key '" + key +
                          "': expected a non-negative integer, got '" + s +
                          "'");
  return v;
}

std::vector<std::string> Config::keys_with_prefix(
    const std::string& prefix) const {
  std::vector<std::string> out;
  for (const auto& [k, v] : values_) {
    (void)v;
    if (k.rfind(prefix, 0) == 0) out.push_back(k);
  }
  return out;
}

PostprocessConfig PipelineConfig::make_postprocess(
    const ClassVocabulary& v) const {
  PostprocessConfig post =
      uniform_postprocess(v.size(), threshold_default, medfilt_default);
  for (const auto& [name, thr] : threshold_overrides)
    post.thresholds[v.index(name)] = thr;
  for (const auto& [name, len] : medfilt_overrides)
    post.filter_lengths[v.index(name)] = len;
  validate_postprocess(post, v);
  return post;
}

PipelineConfig load_pipeline_config(const Config& config) {
  PipelineConfig p;

  p.frame_hop = config.get_double("frame_hop", 0.064);
  if (!(p.frame_hop > 0.0))
    throw ValidationError("config key 'frame_hop': must be > 0");
  p.clip_frames = config.get_int("clip_frames", 0);
  if (p.clip_frames < 0)
    throw ValidationError("config key 'clip_frames': must be >= 0");

  if (config.has("classes")) {
    std::vector<std::string> names;
    for (auto& n : split_list(config.get_string("classes", ""), ','))
      if (!n.empty()) names.push_back(n);
    if (names.empty())
      throw ValidationError("config key 'classes': empty class list");
    p.vocab = ClassVocabulary(names);
  }

  p.window.alpha = config.get_double("window.alpha", 12.0);
  p.window.sigma = config.get_int("window.sigma", 7);
  try {
    validate_window(p.window);
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("config key 'window.sigma'/'window") +
                          ".alpha': " + e.what());
  }

  p.threshold_default = config.get_double("threshold.default", 0.5);
  p.medfilt_default = config.get_int("medfilt_frames.default", 7);
  for (const auto& key : config.keys_with_prefix("threshold.")) {
    const std::string name = key.substr(std::string("threshold.").size());
    if (name == "default") continue;
    p.threshold_overrides[name] = config.get_double(key, 0.5);
  }
  for (const auto& key : config.keys_with_prefix("medfilt_frames.")) {
    const std::string name = key.substr(std::string("medfilt_frames.").size());
    if (name == "default") continue;
    p.medfilt_overrides[name] = config.get_int(key, 7);
  }
  if (!(p.threshold_default > 0.0 && p.threshold_default < 1.0))
    throw ValidationError("config key 'threshold.default': must be in (0,1)");
  if (p.medfilt_default < 1 || p.medfilt_default % 2 == 0)
    throw ValidationError(
        "config key 'medfilt_frames.default': must be odd and >= 1");

  p.f1.onset_collar = config.get_double("f1.onset_collar", 0.2);
  p.f1.offset_collar = config.get_double("f1.offset_collar", 0.2);
  p.f1.offset_duration_ratio =
      config.get_double("f1.offset_duration_ratio", 0.2);
  try {
    validate_f1(p.f1);
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("config key 'f1.*': ") + e.what());
  }

  const std::vector<double> shared_thresholds = parse_thresholds(
      "psds.thresholds", config.get_string("psds.thresholds", "0.01:0.99:50"));

  auto load_psds = [&](const std::string& prefix, const PSDSConfig& defaults) {
    PSDSConfig c = defaults;
    c.dtc = config.get_double(prefix + ".dtc", defaults.dtc);
    c.gtc = config.get_double(prefix + ".gtc", defaults.gtc);
    c.cttc = config.get_double(prefix + ".cttc", defaults.cttc);
    c.alpha_ct = config.get_double(prefix + ".alpha_ct", defaults.alpha_ct);
    c.alpha_st = config.get_double(prefix + ".alpha_st", defaults.alpha_st);
    c.e_max = config.get_double(prefix + ".e_max", defaults.e_max);
    c.thresholds = shared_thresholds;
    if (config.has(prefix + ".thresholds"))
      c.thresholds = parse_thresholds(
          prefix + ".thresholds", config.get_string(prefix + ".thresholds", ""));
    try {
      validate_psds(c);
    } catch (const ValidationError& e) {
      throw ValidationError("config key '" + prefix + ".*': " + e.what());
    }
    return c;
  };
  // scenario defaults follow the DCASE task-4 published settings
  PSDSConfig s1;
  s1.dtc = 0.7; s1.gtc = 0.7; s1.cttc = 0.3;
  s1.alpha_ct = 0.0; s1.alpha_st = 1.0; s1.e_max = 100.0;
  PSDSConfig s2;
  s2.dtc = 0.1; s2.gtc = 0.1; s2.cttc = 0.3;
  s2.alpha_ct = 0.5; s2.alpha_st = 1.0; s2.e_max = 100.0;
  p.psds1 = load_psds("psds1", s1);
  p.psds2 = load_psds("psds2", s2);

  p.train.epochs = config.get_int("train.epochs", 150);
  p.train.learning_rate = config.get_double("train.learning_rate", 0.5);
  p.train.batch_clips = config.get_int("train.batch_clips", 8);
  p.train.seed = config.get_uint64("train.seed", 1);
  p.train.window = p.window;
  p.train.combiner.w_weak = config.get_double("train.w_weak", 0.0);
  p.train.combiner.w_cons = config.get_double("train.w_cons", 0.0);
  p.model_context = config.get_int("train.context", 2);
  if (p.model_context < 0)
    throw ValidationError("config key 'train.context': must be >= 0");
  try {
    validate_train(p.train);
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("config key 'train.*': ") + e.what());
  }

  p.synth.num_clips = config.get_int("synth.num_clips", 48);
  p.synth.clip_frames = config.get_int("synth.clip_frames", 240);
  p.synth.num_classes = config.get_int("synth.num_classes", 4);
  p.synth.event_rate = config.get_double("synth.event_rate", 2.5);
  p.synth.duration_min_frames = config.get_int("synth.duration_min_frames", 8);
  p.synth.duration_max_frames =
      config.get_int("synth.duration_max_frames", 40);
  p.synth.noise_std = config.get_double("synth.noise_std", 0.2);
  p.synth.boundary_blur_frames =
      config.get_int("synth.boundary_blur_frames", 2);
  p.synth.annotation_jitter_std = config.get_double("synth.jitter_std", 0.0);
  p.synth.seed = config.get_uint64("synth.seed", 1);
  p.synth.feature_dim = config.get_int("synth.feature_dim", 16);
  p.synth.frame_hop = p.frame_hop;
  if (p.vocab) p.synth.num_classes = p.vocab->size();
  try {
    validate_synth(p.synth);
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("config key 'synth.*': ") + e.what());
  }

  p.experiment_seeds = config.get_int("experiment.seeds", 5);
  if (p.experiment_seeds < 1)
    throw ValidationError("config key 'experiment.seeds': must be >= 1");

  return p;
}

}  // namespace sedkit
