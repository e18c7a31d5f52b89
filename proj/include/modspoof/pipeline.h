// include/modspoof/pipeline.h

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

#ifndef MODSPOOF_PIPELINE_H_
#define MODSPOOF_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "modspoof/audio_io.h"
#include "modspoof/augment.h"
#include "modspoof/features.h"
#include "modspoof/metrics.h"
#include "modspoof/mlp.h"
#include "modspoof/normalizer.h"

namespace modspoof {

/// Which representation the pipeline extracts.
struct FeatureSpec {
  FeatureKind kind = FeatureKind::kGlobalMod;  // log_mel, mfcc or *_mod
  std::size_t n_mfcc = 20;
  BlockGrid grid{2, 2};  // blocked_mod
  Band band = Band::kHighHalf;  // band_mod

  /// logmel | mfcc | global-mod | blocked-mod:RxC | band-mod:{low,high}
  static FeatureSpec parse(std::string_view token);
  std::string token() const;
};

struct PipelineConfig {
  int sample_rate = kDefaultSampleRate;
  double duration = 4.0;
  double offset = 0.0;
  StftConfig stft;
  MelConfig mel;
  FeatureSpec feature;
  NormMode norm = NormMode::kNone;
  bool augment = false;
  MaskSpec mask;
  TrainConfig train;
  CostModel cost;
  std::uint64_t seed = 0;

  /// Checks every nested config and cross-field consistency.
  void validate() const;
  /// Propagates the master seed and sample rate into nested configs.
  void resolve();

  std::string to_json() const;
  /// Missing keys keep their defaults; unknown keys are rejected.
  static PipelineConfig from_json(std::string_view text);
  static PipelineConfig load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;
};

/// Unnormalized feature of an already duration-fixed clip.
FeatureMatrix compute_feature(const AudioClip& clip, const PipelineConfig& cfg);

/// read_wav -> fix_duration -> compute_feature -> normalization.
FeatureMatrix extract_file(const std::filesystem::path& wav,
                           const PipelineConfig& cfg, const Normalizer& norm);

/// Training-time augmentation matching the feature kind: SpecAugment on
/// log-Mel, zero masking on modulation features, none otherwise. Empty when
/// cfg.augment is false.
AugmentHook make_augment_hook(const PipelineConfig& cfg);

struct ManifestEntry {
  std::string utterance_id;
  std::filesystem::path path;
};

/// "utterance_id path" lines; relative paths resolve against `base_dir`.
std::vector<ManifestEntry> parse_audio_manifest(std::string_view text,
                                                const std::filesystem::path& base_dir);
std::vector<ManifestEntry> read_audio_manifest(const std::filesystem::path& path);

struct ExtractFailure {
  std::string utterance_id;
  std::string message;
};

struct ExtractReport {
  std::size_t written = 0;
  std::vector<ExtractFailure> failures;
};

/// Extracts every manifest entry into `out_dir` as <utterance>.gmf, writes
/// features.json (manifest order) and the resolved config.json. Work is
/// spread over `jobs` threads; the files do not depend on the thread count.
ExtractReport extract_to_dir(std::span<const ManifestEntry> entries,
                             const PipelineConfig& cfg, const Normalizer& norm,
                             const std::filesystem::path& out_dir,
                             std::size_t jobs);

struct NamedFeature {
  std::string utterance_id;
  FeatureMatrix feature;
};

/// Reads features.json from an extraction directory and every listed file.
std::vector<NamedFeature> load_feature_dir(const std::filesystem::path& dir);

/// Joins features with protocol labels; throws naming the first utterance
/// that has no protocol entry.
std::vector<LabeledFeature> label_features(std::span<const NamedFeature> features,
                                           std::span<const ProtocolEntry> protocol);

std::vector<ScoreRecord> score_features(const MlpModel& model,
                                        std::span<const NamedFeature> features,
                                        std::span<const ProtocolEntry> protocol,
                                        std::size_t jobs);

/// "epoch,train_loss,val_loss,val_accuracy" lines.
std::string render_history_csv(std::span<const EpochStats> history);

/// Reads MODSPOOF_SEED if set and numeric.
std::optional<std::uint64_t> seed_from_env();

}  // namespace modspoof

#endif  // MODSPOOF_PIPELINE_H_
