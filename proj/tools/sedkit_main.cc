// tools/sedkit_main.cc

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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sedkit/config.h"
#include "sedkit/convert.h"
#include "sedkit/io.h"
#include "sedkit/loss.h"
#include "sedkit/metrics.h"
#include "sedkit/parallel.h"
#include "sedkit/postprocess.h"
#include "sedkit/synth.h"
#include "sedkit/trainer.h"
#include "sedkit/types.h"
#include "sedkit/weighting.h"

namespace fs = std::filesystem;
using namespace sedkit;

namespace {

struct CommonOpts {
  std::string config_path;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonOpts* opts) {
  cmd->add_option("--config", opts->config_path,
                  "key=value config file (see README for the key reference)");
  cmd->add_option("--set", opts->overrides,
                  "config override key=value; flags win over the file")
      ->take_all();
}

PipelineConfig load_config(const CommonOpts& opts) {
  Config config;
  if (!opts.config_path.empty()) config = Config::from_file(opts.config_path);
  for (const auto& line : opts.overrides) config.set_line(line);
  return load_pipeline_config(config);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

// score files in a directory, clip id = file name minus .csv, sorted
std::vector<std::pair<std::string, std::string>> list_score_files(
    const std::string& dir) {
  if (!fs::is_directory(dir))
    throw IoError("'" + dir + "' is not a directory");
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (name.size() > 4 && name.substr(name.size() - 4) == ".csv")
      out.emplace_back(name.substr(0, name.size() - 4), entry.path().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

ClassVocabulary vocab_from_clips(std::span<const EventList> clips) {
  std::set<std::string> names;
  for (const auto& clip : clips)
    for (const auto& e : clip.events) names.insert(e.class_name);
  if (names.empty())
    throw ValidationError(
        "cannot derive a vocabulary from an empty event list; set the "
        "'classes' config key");
  return ClassVocabulary(
      std::vector<std::string>(names.begin(), names.end()));
}

int grid_frames_for(const PipelineConfig& config,
                    std::span<const EventList> clips) {
  if (config.clip_frames > 0) return config.clip_frames;
  double max_offset = 0.0;
  for (const auto& clip : clips)
    for (const auto& e : clip.events) max_offset = std::max(max_offset, e.offset);
  const int frames =
      static_cast<int>(std::ceil(max_offset / config.frame_hop));
  return std::max(frames, 1);
}

// ---- weights ----------------------------------------------------------------

struct WeightsOpts {
  CommonOpts common;
  std::string labels_path;
  std::string out_path;
  std::string clip_id;
};

void cmd_weights(const WeightsOpts& opts) {
  const PipelineConfig config = load_config(opts.common);
  LabelTensor labels;

  if (opts.labels_path.size() > 4 &&
      opts.labels_path.substr(opts.labels_path.size() - 4) == ".tsv") {
    const auto clips = read_event_file(opts.labels_path);
    const EventList* chosen = nullptr;
    if (!opts.clip_id.empty()) {
      for (const auto& c : clips)
        if (c.clip_id == opts.clip_id) chosen = &c;
      if (!chosen)
        throw ValidationError("clip id '" + opts.clip_id +
                              "' not present in '" + opts.labels_path + "'");
    } else if (clips.size() == 1) {
      chosen = &clips.front();
    } else {
      throw ValidationError(
          "'" + opts.labels_path + "' holds " +
          std::to_string(clips.size()) +
          " clips; pick one with --clip-id");
    }
    const ClassVocabulary vocab =
        config.vocab ? *config.vocab : vocab_from_clips(clips);
    const FrameGrid grid{grid_frames_for(config, clips), config.frame_hop};
    labels = events_to_labels(*chosen, grid, vocab);
  } else {
    labels = read_score_file(opts.labels_path, config.frame_hop);
  }

  const WeightMask mask = build_weight_mask(labels, config.window);
  write_score_file(mask, opts.out_path, /*mask_mode=*/true);
}

// ---- medfilt / decode --------------------------------------------------------

struct MedfiltOpts {
  CommonOpts common;
  std::string scores_path;
  std::string out_path;
};

void cmd_medfilt(const MedfiltOpts& opts) {
  const PipelineConfig config = load_config(opts.common);
  const ScoreTensor scores =
      read_score_file(opts.scores_path, config.frame_hop);
  const PostprocessConfig post = config.make_postprocess(scores.vocab());
  const LabelTensor filtered = median_filter(binarize(scores, post), post);
  write_score_file(filtered, opts.out_path);
}

struct DecodeOpts {
  CommonOpts common;
  std::string scores_path;
  std::string out_path;
  std::string clip_id;
};

void cmd_decode(const DecodeOpts& opts) {
  const PipelineConfig config = load_config(opts.common);
  std::vector<EventList> decoded;

  if (fs::is_directory(opts.scores_path)) {
    for (const auto& [clip_id, path] : list_score_files(opts.scores_path)) {
      const ScoreTensor scores = read_score_file(path, config.frame_hop);
      const PostprocessConfig post = config.make_postprocess(scores.vocab());
      decoded.push_back(postprocess_pipeline(scores, post, clip_id));
    }
    if (decoded.empty())
      throw ValidationError("no .csv score files in '" + opts.scores_path +
                            "'");
  } else {
    const ScoreTensor scores =
        read_score_file(opts.scores_path, config.frame_hop);
    const PostprocessConfig post = config.make_postprocess(scores.vocab());
    std::string clip_id = opts.clip_id;
    if (clip_id.empty()) {
      clip_id = fs::path(opts.scores_path).filename().string();
      const size_t dot = clip_id.rfind(".csv");
      if (dot != std::string::npos) clip_id = clip_id.substr(0, dot);
    }
    decoded.push_back(postprocess_pipeline(scores, post, clip_id));
  }
  write_event_file(decoded, opts.out_path);
}

// ---- eval ---------------------------------------------------------------------

struct EvalOpts {
  CommonOpts common;
  std::string refs_path;
  std::string scores_dir;
  std::string out_path;
  std::string per_class_path;
  std::string system_name = "system";
};

void cmd_eval(const EvalOpts& opts) {
  const PipelineConfig config = load_config(opts.common);
  const auto refs = read_event_file(opts.refs_path);
  const auto files = list_score_files(opts.scores_dir);
  if (files.empty())
    throw ValidationError("no .csv score files in '" + opts.scores_dir + "'");

  // Every annotated clip needs model output. Score files without reference
  // rows are fine: a clip with no events cannot appear in the TSV.
  std::set<std::string> score_ids;
  for (const auto& [id, path] : files) {
    (void)path;
    score_ids.insert(id);
  }
  std::string missing;
  for (const auto& r : refs)
    if (!score_ids.count(r.clip_id)) missing += " " + r.clip_id;
  if (!missing.empty())
    throw ValidationError("reference clips without score files:" + missing);

  std::vector<std::pair<std::string, ScoreTensor>> scores;
  scores.reserve(files.size());
  for (const auto& [id, path] : files)
    scores.emplace_back(id, read_score_file(path, config.frame_hop));

  const PostprocessConfig post =
      config.make_postprocess(scores.front().second.vocab());
  const MetricReport report = evaluate(refs, scores, post, config.f1,
                                       config.psds1, config.psds2);

  auto out = open_out(opts.out_path);
  out << "system,event_f1,psds1,psds2\n";
  out << opts.system_name << ',' << format_fixed(report.event_f1, 6) << ','
      << format_fixed(report.psds1, 6) << ','
      << format_fixed(report.psds2, 6) << "\n";

  if (!opts.per_class_path.empty()) {
    auto pc = open_out(opts.per_class_path);
    pc << "class,tp,fp,fn,precision,recall,f1\n";
    for (const auto& [name, counts] : report.f1_detail.per_class)
      pc << name << ',' << counts.tp << ',' << counts.fp << ',' << counts.fn
         << ',' << format_fixed(counts.precision(), 6) << ','
         << format_fixed(counts.recall(), 6) << ','
         << format_fixed(counts.f1(), 6) << "\n";
  }
}

// ---- synth / jitter ------------------------------------------------------------

struct SynthOpts {
  CommonOpts common;
  std::string out_dir;
};

void cmd_synth(const SynthOpts& opts) {
  const PipelineConfig config = load_config(opts.common);
  const SynthCorpus corpus =
      config.vocab ? generate_corpus(config.synth, *config.vocab)
                   : generate_corpus(config.synth);

  fs::create_directories(fs::path(opts.out_dir) / "features");
  fs::create_directories(fs::path(opts.out_dir) / "labels");
  write_event_file(corpus.references,
                   (fs::path(opts.out_dir) / "refs.tsv").string());
  for (size_t i = 0; i < corpus.references.size(); ++i) {
    const std::string& id = corpus.references[i].clip_id;
    write_feature_file(corpus.features[i],
                       (fs::path(opts.out_dir) / "features" / (id + ".csv"))
                           .string());
    write_score_file(corpus.labels[i],
                     (fs::path(opts.out_dir) / "labels" / (id + ".csv"))
                         .string());
  }
}

struct JitterOpts {
  CommonOpts common;
  std::string refs_path;
  std::string out_path;
  double std_seconds = 0.0;
  std::uint64_t seed = 1;
  double clip_duration = 0.0;  // 0 = from config, else unbounded
};

void cmd_jitter(const JitterOpts& opts) {
  const PipelineConfig config = load_config(opts.common);
  const auto refs = read_event_file(opts.refs_path);
  double duration = opts.clip_duration;
  if (duration <= 0.0)
    duration = config.clip_frames > 0
                   ? config.clip_frames * config.frame_hop
                   : std::numeric_limits<double>::infinity();
  const auto jittered =
      jitter_annotations(refs, opts.std_seconds, opts.seed, duration);
  write_event_file(jittered, opts.out_path);
}

// ---- train-toy -------------------------------------------------------------------

struct TrainOpts {
  CommonOpts common;
  std::string data_dir;
  std::string model_path;
  std::string trace_path;
  std::string loss = "owbce";
};

void cmd_train_toy(const TrainOpts& opts) {
  const PipelineConfig config = load_config(opts.common);
  if (opts.loss != "bce" && opts.loss != "owbce")
    throw ValidationError("--loss must be bce or owbce");

  const auto refs =
      read_event_file((fs::path(opts.data_dir) / "refs.tsv").string());
  const fs::path feature_dir = fs::path(opts.data_dir) / "features";
  const fs::path label_dir = fs::path(opts.data_dir) / "labels";

  std::vector<FeatureMatrix> features;
  std::vector<LabelTensor> labels;
  const bool have_labels = fs::is_directory(label_dir);
  ClassVocabulary vocab;
  if (config.vocab)
    vocab = *config.vocab;
  else if (!have_labels)
    vocab = vocab_from_clips(refs);

  for (const auto& clip : refs) {
    const fs::path fpath = feature_dir / (clip.clip_id + ".csv");
    if (!fs::exists(fpath))
      throw IoError("missing feature file '" + fpath.string() + "'");
    features.push_back(read_feature_file(fpath.string()));
    const FrameGrid grid{features.back().rows, config.frame_hop};
    if (have_labels) {
      labels.push_back(read_score_file(
          (label_dir / (clip.clip_id + ".csv")).string(), config.frame_hop));
    } else {
      labels.push_back(events_to_labels(clip, grid, vocab));
    }
  }
  if (features.empty())
    throw ValidationError("no clips found under '" + opts.data_dir + "'");

  TrainConfig tc = config.train;
  if (opts.loss == "bce") tc.window.alpha = 0.0;
  const LinearFrameModel init = LinearFrameModel::zeros(
      config.model_context, features.front().cols,
      labels.front().num_classes());
  const TrainResult result = train(init, features, labels, tc);
  write_model_file(result.model, opts.model_path);

  if (!opts.trace_path.empty()) {
    auto out = open_out(opts.trace_path);
    out << "epoch,strong,weak,consistency,total\n";
    for (size_t e = 0; e < result.trace.size(); ++e) {
      const LossBreakdown& b = result.trace[e];
      out << e << ',' << format_fixed(b.strong, 6) << ','
          << format_fixed(b.weak, 6) << ','
          << format_fixed(b.consistency, 6) << ','
          << format_fixed(b.total, 6) << "\n";
    }
  }
}

// ---- experiment / sweep ------------------------------------------------------------

ExperimentConfig experiment_config(const PipelineConfig& config) {
  ExperimentConfig e;
  e.synth = config.synth;
  e.train = config.train;
  ClassVocabulary vocab;
  if (config.vocab) {
    vocab = *config.vocab;
  } else {
    std::vector<std::string> names;
    for (int k = 0; k < config.synth.num_classes; ++k)
      names.push_back("event" + std::to_string(k));
    vocab = ClassVocabulary(names);
  }
  e.post = config.make_postprocess(vocab);
  e.f1 = config.f1;
  e.psds1 = config.psds1;
  e.psds2 = config.psds2;
  e.num_seeds = config.experiment_seeds;
  e.model_context = config.model_context;
  return e;
}

void write_run_row(std::ostream& out, const std::string& arm,
                   const std::string& seed, const RunMetrics& m) {
  out << arm << ',' << seed << ',' << format_fixed(m.event_f1, 6) << ','
      << format_fixed(m.psds1, 6) << ',' << format_fixed(m.psds2, 6) << ','
      << format_fixed(m.onset_mae, 6) << ',' << format_fixed(m.offset_mae, 6)
      << ',' << format_fixed(m.boundary_mae, 6) << ','
      << format_fixed(m.matched_fraction, 6) << ','
      << format_fixed(m.final_loss, 6) << "\n";
}

struct ExperimentOpts {
  CommonOpts common;
  std::string out_path;
};

void cmd_experiment(const ExperimentOpts& opts) {
  const PipelineConfig config = load_config(opts.common);
  const ExperimentConfig e = experiment_config(config);
  const ComparisonReport report = compare_losses(e);

  auto out = open_out(opts.out_path);
  out << "arm,seed,event_f1,psds1,psds2,onset_mae,offset_mae,boundary_mae,"
         "matched_fraction,final_loss\n";
  for (size_t s = 0; s < report.seeds.size(); ++s) {
    write_run_row(out, "bce", std::to_string(report.seeds[s]),
                  report.baseline[s]);
    write_run_row(out, "owbce", std::to_string(report.seeds[s]),
                  report.weighted[s]);
  }
  write_run_row(out, "bce", "mean", report.baseline_mean);
  write_run_row(out, "owbce", "mean", report.weighted_mean);
}

struct SweepOpts {
  CommonOpts common;
  std::vector<double> alphas;
  std::vector<int> sigmas;
  std::string out_path;
};

void cmd_sweep(const SweepOpts& opts) {
  const PipelineConfig config = load_config(opts.common);
  if (opts.alphas.empty() || opts.sigmas.empty())
    throw ValidationError("--alphas and --sigmas must not be empty");
  const ExperimentConfig e = experiment_config(config);

  struct Row {
    double alpha;
    int sigma;
    std::uint64_t seed;
    RunMetrics metrics;
  };
  const int num_seeds = e.num_seeds;
  const int combos = static_cast<int>(opts.alphas.size() * opts.sigmas.size());
  std::vector<Row> rows(static_cast<size_t>(combos) * num_seeds);

  parallel_for(static_cast<int>(rows.size()), [&](int job) {
    const int combo = job / num_seeds;
    const int s = job % num_seeds;
    const double alpha = opts.alphas[combo / opts.sigmas.size()];
    const int sigma = opts.sigmas[combo % opts.sigmas.size()];
    const WindowParams window{alpha, sigma};
    validate_window(window);
    const std::uint64_t seed = e.synth.seed + static_cast<std::uint64_t>(s);
    rows[job] = Row{alpha, sigma, seed, run_toy_arm(e, window, seed)};
  });

  auto out = open_out(opts.out_path);
  out << "alpha,sigma,seed,event_f1,psds1,psds2,onset_mae,offset_mae,"
         "boundary_mae,matched_fraction,final_loss\n";
  for (const Row& r : rows) {
    out << format_general(r.alpha, 9) << ',' << r.sigma << ',' << r.seed
        << ',' << format_fixed(r.metrics.event_f1, 6) << ','
        << format_fixed(r.metrics.psds1, 6) << ','
        << format_fixed(r.metrics.psds2, 6) << ','
        << format_fixed(r.metrics.onset_mae, 6) << ','
        << format_fixed(r.metrics.offset_mae, 6) << ','
        << format_fixed(r.metrics.boundary_mae, 6) << ','
        << format_fixed(r.metrics.matched_fraction, 6) << ','
        << format_fixed(r.metrics.final_loss, 6) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sedkit: frame-level sound event detection toolkit "
               "(boundary-weighted losses, median-filter post-processing, "
               "event-F1/PSDS evaluation, synthetic corpora, toy trainer)"};
  app.require_subcommand(1);

  WeightsOpts weights;
  auto* weights_cmd = app.add_subcommand(
      "weights", "build the boundary weight mask for a label file");
  add_common(weights_cmd, &weights.common);
  weights_cmd->add_option("--labels", weights.labels_path,
                          "label file (.tsv events or .csv tensor)")
      ->required();
  weights_cmd->add_option("--out", weights.out_path, "output mask .csv")
      ->required();
  weights_cmd->add_option("--clip-id", weights.clip_id,
                          "clip to rasterize when the TSV holds several");

  MedfiltOpts medfilt;
  auto* medfilt_cmd = app.add_subcommand(
      "medfilt", "binarize scores and median-filter the decisions");
  add_common(medfilt_cmd, &medfilt.common);
  medfilt_cmd->add_option("--scores", medfilt.scores_path, "score .csv")
      ->required();
  medfilt_cmd->add_option("--out", medfilt.out_path, "output binary .csv")
      ->required();

  DecodeOpts decode;
  auto* decode_cmd = app.add_subcommand(
      "decode", "scores -> binarize -> median filter -> event TSV");
  add_common(decode_cmd, &decode.common);
  decode_cmd->add_option("--scores", decode.scores_path,
                         "score .csv or directory of score files")
      ->required();
  decode_cmd->add_option("--out", decode.out_path, "output events .tsv")
      ->required();
  decode_cmd->add_option("--clip-id", decode.clip_id,
                         "clip id for a single score file");

  EvalOpts eval_opts;
  auto* eval_cmd = app.add_subcommand(
      "eval", "event-F1 and PSDS against reference annotations");
  add_common(eval_cmd, &eval_opts.common);
  eval_cmd->add_option("--refs", eval_opts.refs_path, "reference events .tsv")
      ->required();
  eval_cmd->add_option("--scores", eval_opts.scores_dir,
                       "directory with <clip_id>.csv score files")
      ->required();
  eval_cmd->add_option("--out", eval_opts.out_path, "metrics .csv")
      ->required();
  eval_cmd->add_option("--per-class", eval_opts.per_class_path,
                       "optional per-class counts .csv");
  eval_cmd->add_option("--system", eval_opts.system_name,
                       "system name for the metrics row");

  SynthOpts synth;
  auto* synth_cmd = app.add_subcommand(
      "synth", "generate a synthetic corpus (refs.tsv, features/, labels/)");
  add_common(synth_cmd, &synth.common);
  synth_cmd->add_option("--out-dir", synth.out_dir, "output directory")
      ->required();

  JitterOpts jitter;
  auto* jitter_cmd = app.add_subcommand(
      "jitter", "perturb annotation timestamps with truncated Gaussian noise");
  add_common(jitter_cmd, &jitter.common);
  jitter_cmd->add_option("--refs", jitter.refs_path, "input events .tsv")
      ->required();
  jitter_cmd->add_option("--out", jitter.out_path, "output events .tsv")
      ->required();
  jitter_cmd->add_option("--std", jitter.std_seconds,
                         "jitter standard deviation in seconds")
      ->required();
  jitter_cmd->add_option("--seed", jitter.seed, "random seed");
  jitter_cmd->add_option("--clip-duration", jitter.clip_duration,
                         "clip duration bound in seconds (default: from "
                         "clip_frames, else unbounded)");

  TrainOpts train_opts;
  auto* train_cmd = app.add_subcommand(
      "train-toy", "train the linear frame classifier on a synth directory");
  add_common(train_cmd, &train_opts.common);
  train_cmd->add_option("--data", train_opts.data_dir,
                        "corpus directory (refs.tsv + features/ [+ labels/])")
      ->required();
  train_cmd->add_option("--out-model", train_opts.model_path,
                        "output model file")
      ->required();
  train_cmd->add_option("--loss-trace", train_opts.trace_path,
                        "optional per-epoch loss CSV");
  train_cmd->add_option("--loss", train_opts.loss,
                        "bce or owbce (default owbce)");

  ExperimentOpts experiment;
  auto* experiment_cmd = app.add_subcommand(
      "experiment",
      "paired BCE vs OWBCE training over several seeds, report CSV");
  add_common(experiment_cmd, &experiment.common);
  experiment_cmd->add_option("--out", experiment.out_path, "report .csv")
      ->required();

  SweepOpts sweep;
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "train and evaluate over alpha/sigma lists (paired seeds)");
  add_common(sweep_cmd, &sweep.common);
  sweep_cmd->add_option("--alphas", sweep.alphas, "window heights to sweep")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--sigmas", sweep.sigmas,
                        "window widths to sweep (odd or 0)")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--out", sweep.out_path, "sweep .csv")->required();

  try {
    app.parse(argc, argv);
    if (weights_cmd->parsed()) cmd_weights(weights);
    if (medfilt_cmd->parsed()) cmd_medfilt(medfilt);
    if (decode_cmd->parsed()) cmd_decode(decode);
    if (eval_cmd->parsed()) cmd_eval(eval_opts);
    if (synth_cmd->parsed()) cmd_synth(synth);
    if (jitter_cmd->parsed()) cmd_jitter(jitter);
    if (train_cmd->parsed()) cmd_train_toy(train_opts);
    if (experiment_cmd->parsed()) cmd_experiment(experiment);
    if (sweep_cmd->parsed()) cmd_sweep(sweep);
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
