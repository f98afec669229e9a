// sedkit/metrics.cc

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

#include "sedkit/metrics.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "sedkit/parallel.h"

namespace sedkit {
namespace {

double overlap(const Event& a, const Event& b) {
  return std::max(0.0, std::min(a.offset, b.offset) -
                           std::max(a.onset, b.onset));
}

// events of one clip split by class index, onset order preserved
std::vector<std::vector<Event>> by_class(const EventList& clip,
                                         const ClassVocabulary& vocab) {
  std::vector<std::vector<Event>> out(vocab.size());
  for (const Event& e : clip.events) out[vocab.index(e.class_name)].push_back(e);
  for (auto& v : out)
    std::sort(v.begin(), v.end(), [](const Event& a, const Event& b) {
      if (a.onset != b.onset) return a.onset < b.onset;
      return a.offset < b.offset;
    });
  return out;
}

// clip_id -> index pairing of references and detections; either side may be
// missing for a given clip
struct ClipPairing {
  std::vector<std::pair<const EventList*, const EventList*>> pairs;
};

ClipPairing pair_clips(std::span<const EventList> refs,
                       std::span<const EventList> dets) {
  std::map<std::string, std::pair<const EventList*, const EventList*>> merged;
  for (const EventList& r : refs) {
    auto [it, fresh] = merged.emplace(r.clip_id, std::make_pair(&r, nullptr));
    if (!fresh)
      throw ValidationError("duplicate reference clip id '" + r.clip_id + "'");
    (void)it;
  }
  for (const EventList& d : dets) {
    auto it = merged.find(d.clip_id);
    if (it == merged.end()) {
      merged.emplace(d.clip_id, std::make_pair(nullptr, &d));
    } else {
      if (it->second.second)
        throw ValidationError("duplicate detection clip id '" + d.clip_id +
                              "'");
      it->second.second = &d;
    }
  }
  ClipPairing out;
  for (auto& [id, pr] : merged) {
    (void)id;
    out.pairs.push_back(pr);
  }
  return out;
}

}  // namespace

void validate_f1(const F1Config& config) {
  if (!(config.onset_collar >= 0.0) || !(config.offset_collar >= 0.0) ||
      !(config.offset_duration_ratio >= 0.0))
    throw ValidationError("f1 collars must be >= 0");
}

bool event_match(const Event& det, const Event& ref, const F1Config& config) {
  if (det.class_name != ref.class_name) return false;
  if (std::abs(det.onset - ref.onset) > config.onset_collar) return false;
  const double offset_tolerance =
      std::max(config.offset_collar,
               config.offset_duration_ratio * ref.duration());
  return std::abs(det.offset - ref.offset) <= offset_tolerance;
}

F1Result event_f1(std::span<const EventList> references,
                  std::span<const EventList> detections,
                  const F1Config& config, const ClassVocabulary& vocab) {
  validate_f1(config);
  const int num_classes = vocab.size();
  std::vector<ClassCounts> counts(num_classes);

  const ClipPairing pairing = pair_clips(references, detections);
  static const EventList kEmpty;
  for (const auto& [ref_clip, det_clip] : pairing.pairs) {
    const auto refs = by_class(ref_clip ? *ref_clip : kEmpty, vocab);
    const auto dets = by_class(det_clip ? *det_clip : kEmpty, vocab);
    for (int k = 0; k < num_classes; ++k) {
      std::vector<bool> ref_used(refs[k].size(), false);
      std::int64_t tp = 0;
      for (const Event& det : dets[k]) {
        for (size_t r = 0; r < refs[k].size(); ++r) {
          if (ref_used[r]) continue;
          if (event_match(det, refs[k][r], config)) {
            ref_used[r] = true;
            ++tp;
            break;
          }
        }
      }
      counts[k].tp += tp;
      counts[k].fp += static_cast<std::int64_t>(dets[k].size()) - tp;
      counts[k].fn += static_cast<std::int64_t>(refs[k].size()) - tp;
    }
  }

  F1Result result;
  for (int k = 0; k < num_classes; ++k) {
    result.totals.tp += counts[k].tp;
    result.totals.fp += counts[k].fp;
    result.totals.fn += counts[k].fn;
    result.per_class.emplace_back(vocab.name(k), counts[k]);
  }
  const std::int64_t denom =
      2 * result.totals.tp + result.totals.fp + result.totals.fn;
  result.micro_f1 = denom ? 2.0 * result.totals.tp / denom : 1.0;
  return result;
}

void validate_psds(const PSDSConfig& config) {
  auto frac = [](double v, const char* name) {
    if (!(v > 0.0 && v <= 1.0))
      throw ValidationError(std::string("psds ") + name +
                            " must lie in (0, 1], got " + std::to_string(v));
  };
  frac(config.dtc, "dtc");
  frac(config.gtc, "gtc");
  frac(config.cttc, "cttc");
  if (!(config.alpha_ct >= 0.0) || !(config.alpha_st >= 0.0))
    throw ValidationError("psds alpha_ct/alpha_st must be >= 0");
  if (!(config.e_max > 0.0))
    throw ValidationError("psds e_max must be > 0");
  if (config.thresholds.empty())
    throw ValidationError("psds thresholds must not be empty");
  for (size_t i = 0; i < config.thresholds.size(); ++i) {
    const double t = config.thresholds[i];
    if (!(t > 0.0 && t < 1.0))
      throw ValidationError("psds threshold " + std::to_string(t) +
                            " outside (0, 1)");
    if (i > 0 && !(t > config.thresholds[i - 1]))
      throw ValidationError("psds thresholds must be strictly increasing");
  }
}

std::vector<double> default_psds_thresholds() {
  std::vector<double> t(50);
  for (int i = 0; i < 50; ++i) t[i] = 0.01 + i * (0.99 - 0.01) / 49.0;
  return t;
}

double psds(std::span<const EventList> references,
            std::span<const std::pair<double, std::vector<EventList>>>
                detections_per_threshold,
            const PSDSConfig& config, double dataset_duration_seconds,
            const ClassVocabulary& vocab) {
  validate_psds(config);
  if (!(dataset_duration_seconds > 0.0))
    throw ValidationError("psds: dataset duration must be > 0");
  {
    std::set<double> provided;
    for (const auto& [thr, dets] : detections_per_threshold) {
      (void)dets;
      provided.insert(thr);
    }
    for (double t : config.thresholds)
      if (!provided.count(t))
        throw ValidationError("psds: no detections supplied for threshold " +
                              std::to_string(t));
  }

  const int num_classes = vocab.size();
  std::vector<std::int64_t> ref_counts(num_classes, 0);
  std::vector<double> ref_durations(num_classes, 0.0);
  for (const EventList& clip : references) {
    for (const Event& e : clip.events) {
      const int k = vocab.index(e.class_name);
      ref_counts[k] += 1;
      ref_durations[k] += e.duration();
    }
  }
  std::vector<int> scored;  // classes that appear in the references
  for (int k = 0; k < num_classes; ++k)
    if (ref_counts[k] > 0) scored.push_back(k);
  if (scored.empty()) return 0.0;

  const double per_hour = 3600.0 / dataset_duration_seconds;

  // per scored class: operating points (effective FPR, TPR)
  std::vector<std::vector<std::pair<double, double>>> points(scored.size());

  for (double threshold : config.thresholds) {
    const std::vector<EventList>* dets = nullptr;
    for (const auto& [thr, d] : detections_per_threshold)
      if (thr == threshold) dets = &d;

    std::vector<std::int64_t> tp(num_classes, 0), fp(num_classes, 0);
    std::vector<std::vector<std::int64_t>> ct(
        num_classes, std::vector<std::int64_t>(num_classes, 0));

    const ClipPairing pairing = pair_clips(references, *dets);
    static const EventList kEmpty;
    for (const auto& [ref_clip, det_clip] : pairing.pairs) {
      const auto refs = by_class(ref_clip ? *ref_clip : kEmpty, vocab);
      const auto ds = by_class(det_clip ? *det_clip : kEmpty, vocab);

      std::vector<std::vector<Event>> valid(num_classes);
      for (int c = 0; c < num_classes; ++c) {
        for (const Event& d : ds[c]) {
          double inter = 0.0;
          for (const Event& g : refs[c]) inter += overlap(d, g);
          if (d.duration() > 0.0 && inter / d.duration() >= config.dtc) {
            valid[c].push_back(d);
          } else {
            fp[c] += 1;
            for (int o = 0; o < num_classes; ++o) {
              if (o == c) continue;
              double cross = 0.0;
              for (const Event& g : refs[o]) cross += overlap(d, g);
              if (d.duration() > 0.0 && cross / d.duration() >= config.cttc)
                ct[c][o] += 1;
            }
          }
        }
      }
      for (int c = 0; c < num_classes; ++c) {
        for (const Event& g : refs[c]) {
          double cover = 0.0;
          for (const Event& d : valid[c]) cover += overlap(g, d);
          if (g.duration() > 0.0 && cover / g.duration() >= config.gtc)
            tp[c] += 1;
        }
      }
    }

    for (size_t si = 0; si < scored.size(); ++si) {
      const int c = scored[si];
      const double tpr =
          static_cast<double>(tp[c]) / static_cast<double>(ref_counts[c]);
      double efpr = static_cast<double>(fp[c]) * per_hour;
      if (config.alpha_ct > 0.0 && scored.size() > 1) {
        double ctr_sum = 0.0;
        int ctr_n = 0;
        for (int o : scored) {
          if (o == c) continue;
          ctr_sum += static_cast<double>(ct[c][o]) * 3600.0 /
                     ref_durations[o];
          ++ctr_n;
        }
        efpr += config.alpha_ct * (ctr_sum / ctr_n);
      }
      points[si].emplace_back(efpr, tpr);
    }
  }

  // running-max step curve per class
  for (auto& p : points) {
    std::sort(p.begin(), p.end());
    double best = 0.0;
    for (auto& [e, t] : p) {
      (void)e;
      best = std::max(best, t);
      t = best;
    }
  }
  auto curve_at = [](const std::vector<std::pair<double, double>>& p,
                     double e) {
    double v = 0.0;
    for (const auto& [x, t] : p) {
      if (x <= e)
        v = t;
      else
        break;
    }
    return v;
  };

  std::set<double> breakset{0.0, config.e_max};
  for (const auto& p : points)
    for (const auto& [e, t] : p) {
      (void)t;
      if (e > 0.0 && e < config.e_max) breakset.insert(e);
    }
  const std::vector<double> breaks(breakset.begin(), breakset.end());

  double area = 0.0;
  for (size_t b = 0; b + 1 < breaks.size(); ++b) {
    double mean = 0.0;
    for (const auto& p : points) mean += curve_at(p, breaks[b]);
    mean /= static_cast<double>(points.size());
    double var = 0.0;
    for (const auto& p : points) {
      const double d = curve_at(p, breaks[b]) - mean;
      var += d * d;
    }
    var /= static_cast<double>(points.size());
    const double effective_tpr = std::max(0.0, mean - config.alpha_st *
                                                         std::sqrt(var));
    area += effective_tpr * (breaks[b + 1] - breaks[b]);
  }
  return area / config.e_max;
}

MetricReport evaluate(std::span<const EventList> references,
                      std::span<const std::pair<std::string, ScoreTensor>>
                          scores,
                      const PostprocessConfig& post_config,
                      const F1Config& f1_config,
                      const PSDSConfig& psds1_config,
                      const PSDSConfig& psds2_config) {
  if (scores.empty())
    throw ValidationError("evaluate: no score tensors supplied");
  const ClassVocabulary& vocab = scores.front().second.vocab();
  for (const auto& [id, tensor] : scores)
    if (!(tensor.vocab() == vocab))
      throw ValidationError("evaluate: score vocabulary differs for clip '" +
                            id + "'");
  validate_postprocess(post_config, vocab);
  validate_f1(f1_config);
  validate_psds(psds1_config);
  validate_psds(psds2_config);
  for (const EventList& clip : references)
    for (const Event& e : clip.events) vocab.index(e.class_name);  // check

  double dataset_duration = 0.0;
  for (const auto& [id, tensor] : scores) {
    (void)id;
    dataset_duration += tensor.grid().clip_duration();
  }

  const int num_clips = static_cast<int>(scores.size());
  std::vector<EventList> fixed_dets(num_clips);
  parallel_for(num_clips, [&](int i) {
    fixed_dets[i] = postprocess_pipeline(scores[i].second, post_config,
                                         scores[i].first);
  });

  MetricReport report;
  report.f1_detail = event_f1(references, fixed_dets, f1_config, vocab);
  report.event_f1 = report.f1_detail.micro_f1;

  auto sweep = [&](const PSDSConfig& cfg) {
    std::vector<std::pair<double, std::vector<EventList>>> per_threshold(
        cfg.thresholds.size());
    parallel_for(static_cast<int>(cfg.thresholds.size()), [&](int t) {
      const double threshold = cfg.thresholds[t];
      std::vector<EventList> dets(num_clips);
      for (int i = 0; i < num_clips; ++i)
        dets[i] = postprocess_pipeline_at(scores[i].second, threshold,
                                          post_config, scores[i].first);
      per_threshold[t] = {threshold, std::move(dets)};
    });
    return per_threshold;
  };

  const auto sweep1 = sweep(psds1_config);
  report.psds1 =
      psds(references, sweep1, psds1_config, dataset_duration, vocab);
  if (psds2_config.thresholds == psds1_config.thresholds) {
    report.psds2 =
        psds(references, sweep1, psds2_config, dataset_duration, vocab);
  } else {
    const auto sweep2 = sweep(psds2_config);
    report.psds2 =
        psds(references, sweep2, psds2_config, dataset_duration, vocab);
  }
  return report;
}

}  // namespace sedkit
