// src/synth.cc

// Copyright 2026  modspoof authors

// See ../../COPYING for clarification regarding multiple authors
//
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

#include "modspoof/synth.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "modspoof/error.h"
#include "modspoof/rng.h"

namespace modspoof {

void SynthConfig::validate() const {
  if (clips_per_class < 2) {
    throw Error(ErrorCode::kInvalidArgument, "synthbench needs at least 2 clips per class");
  }
  if (!(duration > 0.0) || sample_rate <= 0 || hop_length == 0) {
    throw Error(ErrorCode::kInvalidArgument, "synthbench duration, rate and hop must be positive");
  }
  if (!(min_period_frames >= 2.0 && max_period_frames >= min_period_frames)) {
    throw Error(ErrorCode::kInvalidArgument, "synthbench artifact period range is invalid");
  }
  if (!(min_depth >= 0.0 && max_depth >= min_depth && max_depth < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "synthbench artifact depth must lie in [0, 1)");
  }
  if (!(artifact_min_hz > 0.0 && artifact_min_hz < 0.5 * sample_rate)) {
    throw Error(ErrorCode::kInvalidArgument, "synthbench artifact band is outside (0, Nyquist)");
  }
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "synthbench test_fraction must lie in (0, 1)");
  }
  const std::size_t n_test = static_cast<std::size_t>(
      std::llround(test_fraction * static_cast<double>(clips_per_class)));
  if (n_test == 0 || n_test >= clips_per_class) {
    throw Error(ErrorCode::kInvalidArgument, "synthbench split leaves an empty side");
  }
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t clip_seed(std::uint64_t seed, std::size_t index, bool spoof) {
  std::uint64_t s = seed ^ (0xA0761D6478BD642FULL * (2 * index + (spoof ? 2 : 1)));
  return splitmix64(s);
}

std::size_t test_count(const SynthConfig& cfg) {
  return static_cast<std::size_t>(
      std::llround(cfg.test_fraction * static_cast<double>(cfg.clips_per_class)));
}

}  // namespace

AudioClip synth_clip(const SynthConfig& cfg, std::size_t index, bool spoof,
                     SynthClipInfo* info) {
  cfg.validate();
  Rng rng(clip_seed(cfg.seed, index, spoof));
  const double sr = cfg.sample_rate;
  const double nyquist = 0.5 * sr;
  const std::size_t n = static_cast<std::size_t>(std::llround(cfg.duration * sr));

  // Pitch contour.
  const double f0 = rng.uniform(100.0, 220.0);
  const double drift_rate = rng.uniform(0.2, 0.8), drift_phase = rng.uniform(0.0, kTwoPi);
  const double vib_rate = rng.uniform(3.0, 6.0), vib_phase = rng.uniform(0.0, kTwoPi);

  // Spectral envelope on a 1 Hz grid: spectral tilt times formant peaks.
  const double formant_lo[5] = {300, 900, 2300, 3500, 5000};
  const double formant_hi[5] = {900, 2500, 3500, 5000, 7000};
  double fc[5], bw[5], gain[5];
  for (int i = 0; i < 5; ++i) {
    fc[i] = rng.uniform(formant_lo[i], formant_hi[i]);
    bw[i] = rng.uniform(80.0, 250.0) * (1.0 + fc[i] / 2000.0);
    gain[i] = rng.uniform(0.5, 1.0);
  }
  const std::size_t env_len = static_cast<std::size_t>(nyquist) + 2;
  std::vector<double> envelope(env_len);
  for (std::size_t f = 0; f < env_len; ++f) {
    const double hz = static_cast<double>(f);
    double peaks = 0.05;
    for (int i = 0; i < 5; ++i) {
      const double z = (hz - fc[i]) / bw[i];
      peaks += gain[i] * std::exp(-0.5 * z * z);
    }
    // Fade out near Nyquist instead of aliasing.
    const double fade = std::clamp((0.975 * nyquist - hz) / (0.035 * nyquist), 0.0, 1.0);
    envelope[f] = fade * peaks / std::sqrt(1.0 + hz / 200.0);
  }

  // Slow amplitude contour shared by all partials.
  double am_amp[3], am_rate[3], am_phase[3];
  for (int i = 0; i < 3; ++i) {
    am_amp[i] = rng.uniform(0.2, 0.5);
    am_rate[i] = rng.uniform(1.0, 8.0);
    am_phase[i] = rng.uniform(0.0, kTwoPi);
  }

  double period = 0.0, depth = 0.0, art_phase = 0.0;
  if (spoof) {
    period = rng.uniform(cfg.min_period_frames, cfg.max_period_frames);
    depth = rng.uniform(cfg.min_depth, cfg.max_depth);
    art_phase = rng.uniform(0.0, kTwoPi);
  }
  const double noise_level = 1e-3;
  const double art_omega = kTwoPi / (period * static_cast<double>(cfg.hop_length));

  std::vector<double> x(n);
  double phase = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    const double sec = static_cast<double>(t) / sr;
    const double f = f0 * (1.0 + 0.05 * std::sin(kTwoPi * drift_rate * sec + drift_phase) +
                           0.02 * std::sin(kTwoPi * vib_rate * sec + vib_phase));
    phase += kTwoPi * f / sr;
    if (phase > kTwoPi) phase -= kTwoPi;

    double log_am = 0.0;
    for (int i = 0; i < 3; ++i) log_am += am_amp[i] * std::sin(kTwoPi * am_rate[i] * sec + am_phase[i]);
    const double artifact =
        spoof ? 1.0 + depth * std::cos(art_omega * static_cast<double>(t) + art_phase) : 1.0;

    // sin(k*phase) by the Chebyshev recurrence.
    const double c2 = 2.0 * std::cos(phase);
    double s_prev = 0.0, s_cur = std::sin(phase);
    double acc = 0.0;
    for (std::size_t k = 1;; ++k) {
      const double hz = static_cast<double>(k) * f;
      if (hz >= nyquist) break;
      const std::size_t lo = static_cast<std::size_t>(hz);
      const double frac = hz - static_cast<double>(lo);
      double amp = envelope[lo] + frac * (envelope[lo + 1] - envelope[lo]);
      if (hz >= cfg.artifact_min_hz) amp *= artifact;
      acc += amp * s_cur;
      const double s_next = c2 * s_cur - s_prev;
      s_prev = s_cur;
      s_cur = s_next;
    }
    x[t] = std::exp(log_am) * acc + noise_level * rng.gaussian();
  }

  double peak = 0.0;
  for (double v : x) peak = std::max(peak, std::abs(v));
  const double scale = peak > 0.0 ? 0.5 / peak : 1.0;
  for (double& v : x) {
    const double q = std::round(v * scale * 32768.0);
    v = std::clamp(q, -32768.0, 32767.0) / 32768.0;
  }
  if (info != nullptr) *info = {f0, period, depth};
  return {std::move(x), cfg.sample_rate};
}

std::vector<SynthUtterance> synth_corpus(const SynthConfig& cfg) {
  cfg.validate();
  const std::size_t n_test = test_count(cfg);
  const AttackId spoof_attack = AttackId::parse("SYN");
  std::vector<SynthUtterance> out;
  out.reserve(2 * cfg.clips_per_class);
  char buf[64];
  for (int spoof = 0; spoof < 2; ++spoof) {
    for (std::size_t i = 0; i < cfg.clips_per_class; ++i) {
      std::snprintf(buf, sizeof(buf), "SYN_%c_%05zu", spoof ? 'S' : 'B', i);
      SynthUtterance u;
      u.entry.speaker_id = "SYN";
      u.entry.utterance_id = buf;
      u.entry.attack = spoof ? spoof_attack : AttackId::bonafide();
      u.entry.key = spoof ? TrialKey::kSpoof : TrialKey::kBonafide;
      // Clips are i.i.d., so the last n_test of each class form the test set.
      u.test = i >= cfg.clips_per_class - n_test;
      out.push_back(std::move(u));
    }
  }
  return out;
}

namespace {

template <typename Fn>
void parallel_for(std::size_t n, std::size_t jobs, Fn&& fn) {
  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(1, n));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&]() {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
}

std::string file_safe(std::string token) {
  for (char& c : token) {
    if (c == ':') c = '_';
  }
  return token;
}

}  // namespace

SynthReport run_synthbench(const SynthConfig& cfg, const PipelineConfig& pipeline,
                           const std::vector<FeatureSpec>& features,
                           const AsvOperatingPoint& op, std::size_t jobs,
                           const std::optional<std::filesystem::path>& out_dir) {
  cfg.validate();
  op.validate();
  if (pipeline.sample_rate != cfg.sample_rate || pipeline.duration != cfg.duration ||
      pipeline.stft.hop_length != cfg.hop_length) {
    throw Error(ErrorCode::kInvalidArgument,
                "synthbench clip parameters disagree with the pipeline config");
  }
  const auto corpus = synth_corpus(cfg);
  const std::size_t n = corpus.size();

  if (out_dir) {
    std::filesystem::create_directories(*out_dir / "wav");
    std::vector<ProtocolEntry> protocol;
    std::string manifest;
    for (const auto& u : corpus) {
      protocol.push_back(u.entry);
      manifest += u.entry.utterance_id + " wav/" + u.entry.utterance_id + ".wav\n";
    }
    write_file_text(*out_dir / "protocol.txt", render_cm_protocol(protocol));
    write_file_text(*out_dir / "manifest.txt", manifest);
    parallel_for(n, jobs, [&](std::size_t i) {
      const bool spoof = corpus[i].entry.key == TrialKey::kSpoof;
      const std::size_t idx = spoof ? i - cfg.clips_per_class : i;
      write_wav(*out_dir / "wav" / (corpus[i].entry.utterance_id + ".wav"),
                synth_clip(cfg, idx, spoof), WavEncoding::kPcm16);
    });
  }

  SynthReport report;
  for (const FeatureSpec& spec : features) {
    PipelineConfig pc = pipeline;
    pc.feature = spec;
    pc.resolve();
    pc.validate();

    std::vector<FeatureMatrix> feats(n);
    parallel_for(n, jobs, [&](std::size_t i) {
      const bool spoof = corpus[i].entry.key == TrialKey::kSpoof;
      const std::size_t idx = spoof ? i - cfg.clips_per_class : i;
      feats[i] = compute_feature(synth_clip(cfg, idx, spoof), pc);
    });

    std::vector<FeatureMatrix> train_feats;
    for (std::size_t i = 0; i < n; ++i) {
      if (!corpus[i].test) train_feats.push_back(feats[i]);
    }
    const Normalizer norm = Normalizer::fit(train_feats, pc.norm);
    train_feats.clear();

    std::vector<LabeledFeature> train_set;
    std::vector<FeatureMatrix> test_feats;
    std::vector<ScoreRecord> test_scores;
    for (std::size_t i = 0; i < n; ++i) {
      FeatureMatrix f = norm.apply(feats[i]);
      feats[i] = FeatureMatrix();
      const auto& e = corpus[i].entry;
      if (corpus[i].test) {
        test_feats.push_back(std::move(f));
        test_scores.push_back({e.utterance_id, e.attack, e.key, 0.0});
      } else {
        train_set.push_back(
            {std::move(f), e.key == TrialKey::kBonafide ? Label::kGenuine : Label::kSpoof});
      }
    }

    const TrainResult trained = train(train_set, pc.train, make_augment_hook(pc));
    const auto p = predict_batch(trained.model, test_feats, jobs);
    for (std::size_t i = 0; i < p.size(); ++i) test_scores[i].score = p[i];

    std::vector<double> bonafide, spoof;
    split_by_key(test_scores, bonafide, spoof);
    SynthRow row;
    row.feature = spec.token();
    row.eer = eer(bonafide, spoof).eer;
    row.tdcf = min_tdcf(bonafide, spoof, op, pc.cost).tdcf_norm;
    row.n_train = train_set.size();
    row.n_test = test_feats.size();
    row.best_epoch = trained.best_epoch;
    report.rows.push_back(row);

    if (out_dir) {
      write_scores(test_scores, *out_dir / ("scores_" + file_safe(row.feature) + ".txt"));
      write_file_text(*out_dir / ("history_" + file_safe(row.feature) + ".csv"),
                      render_history_csv(trained.history));
    }
  }
  if (out_dir) {
    write_file_text(*out_dir / "report.txt", render_synth_report(report));
    PipelineConfig resolved = pipeline;
    resolved.resolve();
    resolved.save(*out_dir / "config.json");
  }
  return report;
}

std::string render_synth_report(const SynthReport& report) {
  std::size_t width = 7;
  for (const auto& r : report.rows) width = std::max(width, r.feature.size());
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-*s  %8s  %8s  %7s  %6s  %10s\n", static_cast<int>(width),
                "feature", "EER(%)", "t-DCF", "n_train", "n_test", "best_epoch");
  out += buf;
  for (const auto& r : report.rows) {
    std::snprintf(buf, sizeof(buf), "%-*s  %8.3f  %8.4f  %7zu  %6zu  %10zu\n",
                  static_cast<int>(width), r.feature.c_str(), 100.0 * r.eer, r.tdcf,
                  r.n_train, r.n_test, r.best_epoch);
    out += buf;
  }
  return out;
}

}  // namespace modspoof
