// include/modspoof/audio_io.h

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

#ifndef MODSPOOF_AUDIO_IO_H_
#define MODSPOOF_AUDIO_IO_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "modspoof/attack.h"
#include "modspoof/feature_matrix.h"

namespace modspoof {

inline constexpr int kDefaultSampleRate = 16000;

/// Mono PCM audio with samples nominally in [-1, 1].
struct AudioClip {
  std::vector<double> samples;
  int sample_rate = kDefaultSampleRate;

  double duration_seconds() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

// ---------------------------------------------------------------------------
// WAV

/// Decodes an in-memory RIFF/WAVE image. PCM16 and IEEE float32 are accepted
/// (plain or WAVE_FORMAT_EXTENSIBLE); channels are averaged to mono and
/// integer samples are divided by 2^15. No resampling: if expected_rate is
/// positive and differs from the header, kRateMismatch is thrown.
AudioClip decode_wav(std::span<const std::uint8_t> bytes, int expected_rate);

AudioClip read_wav(const std::filesystem::path& path,
                   int expected_rate = kDefaultSampleRate);

enum class WavEncoding { kPcm16, kFloat32 };

/// Interleaved multichannel writer; `interleaved.size()` must be a multiple
/// of `channels`. PCM16 output is rounded and clipped to [-32768, 32767].
std::vector<std::uint8_t> encode_wav(std::span<const double> interleaved,
                                     int channels, int sample_rate,
                                     WavEncoding encoding);

void write_wav(const std::filesystem::path& path, const AudioClip& clip,
               WavEncoding encoding = WavEncoding::kPcm16);

/// Cuts or zero-pads to round(seconds * sample_rate) samples, starting at
/// round(offset_seconds * sample_rate). With offset 0 a long clip keeps its
/// first N samples and a short clip is padded at the end.
AudioClip fix_duration(const AudioClip& clip, double seconds,
                       double offset_seconds = 0.0);

// ---------------------------------------------------------------------------
// Protocols and scores

enum class TrialKey { kBonafide, kSpoof };

std::string_view trial_key_name(TrialKey key);
TrialKey parse_trial_key(std::string_view token);

struct ProtocolEntry {
  std::string speaker_id;
  std::string utterance_id;
  AttackId attack;
  TrialKey key = TrialKey::kBonafide;

  friend bool operator==(const ProtocolEntry&, const ProtocolEntry&) = default;
};

/// ASVspoof 2019 CM protocol: "speaker utterance - attack key" per line.
std::vector<ProtocolEntry> parse_cm_protocol(std::string_view text);
std::string render_cm_protocol(std::span<const ProtocolEntry> entries);
std::vector<ProtocolEntry> read_cm_protocol(const std::filesystem::path& path);

/// One countermeasure score; higher means more likely bonafide.
struct ScoreRecord {
  std::string utterance_id;
  AttackId attack;
  TrialKey key = TrialKey::kBonafide;
  double score = 0.0;
};

/// "utterance attack key score" lines, score with six decimals.
std::string render_scores(std::span<const ScoreRecord> records);
std::vector<ScoreRecord> parse_scores(std::string_view text);
void write_scores(std::span<const ScoreRecord> records,
                  const std::filesystem::path& path);
std::vector<ScoreRecord> read_scores(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// GMF1 feature files
//
//   offset 0   "GMF1"
//          4   rows   u32 LE
//          8   cols   u32 LE
//         12   kind   u8 (FeatureKind)
//         13   rows*cols float32 LE, row-major
//
// Values are stored as float32, so a matrix read back equals the written one
// rounded to single precision (and is bit-identical when the input already
// was single precision).

std::vector<std::uint8_t> encode_feature(const FeatureMatrix& m);
FeatureMatrix decode_feature(std::span<const std::uint8_t> bytes);
void write_feature(const FeatureMatrix& m, const std::filesystem::path& path);
FeatureMatrix read_feature(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Small file helpers shared by the readers and writers above.

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
std::string read_file_text(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path,
                      std::span<const std::uint8_t> bytes);
void write_file_text(const std::filesystem::path& path, std::string_view text);

}  // namespace modspoof

#endif  // MODSPOOF_AUDIO_IO_H_
