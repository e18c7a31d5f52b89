// include/modspoof/synth.h

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

#ifndef MODSPOOF_SYNTH_H_
#define MODSPOOF_SYNTH_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "modspoof/audio_io.h"
#include "modspoof/metrics.h"
#include "modspoof/pipeline.h"

namespace modspoof {

/// Synthetic two-class corpus. Bonafide clips are voiced harmonic tones with a
/// drifting pitch, a random formant envelope, a slow amplitude contour shared
/// by all partials, and a low noise floor. Spoof clips come from the same
/// generator but every partial above `artifact_min_hz` is additionally
/// amplitude modulated with a period of P analysis frames.
struct SynthConfig {
  std::size_t clips_per_class = 600;
  double duration = 4.0;
  int sample_rate = kDefaultSampleRate;
  std::size_t hop_length = 160;
  double artifact_min_hz = 4000.0;
  double min_period_frames = 30.0;
  double max_period_frames = 60.0;
  double min_depth = 0.4;
  double max_depth = 0.7;
  double test_fraction = 0.25;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Generator parameters of one clip, recorded for inspection.
struct SynthClipInfo {
  double f0_hz = 0.0;
  double period_frames = 0.0;  // 0 for bonafide
  double depth = 0.0;
};

/// Deterministic in (cfg.seed, index, spoof). Samples lie on the 16-bit PCM
/// grid so that a WAV round trip is lossless.
AudioClip synth_clip(const SynthConfig& cfg, std::size_t index, bool spoof,
                     SynthClipInfo* info = nullptr);

struct SynthUtterance {
  ProtocolEntry entry;
  bool test = false;
};

/// Utterance list: bonafide then spoof, with a stratified train/test split.
std::vector<SynthUtterance> synth_corpus(const SynthConfig& cfg);

struct SynthRow {
  std::string feature;  // FeatureSpec token
  double eer = 0.0;     // fraction, held-out set
  double tdcf = 0.0;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
  std::size_t best_epoch = 0;
};

struct SynthReport {
  std::vector<SynthRow> rows;
};

/// Generates the corpus, then for every feature in `features` extracts,
/// fits a normalizer (mode pipeline.norm) on the training part, trains,
/// scores the held-out part and evaluates it at `op`. When `out_dir` is
/// given, the clips, protocol, score files and report are written there.
SynthReport run_synthbench(const SynthConfig& cfg, const PipelineConfig& pipeline,
                           const std::vector<FeatureSpec>& features,
                           const AsvOperatingPoint& op, std::size_t jobs,
                           const std::optional<std::filesystem::path>& out_dir =
                               std::nullopt);

std::string render_synth_report(const SynthReport& report);

}  // namespace modspoof

#endif  // MODSPOOF_SYNTH_H_
