// include/modspoof/features.h

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

#ifndef MODSPOOF_FEATURES_H_
#define MODSPOOF_FEATURES_H_

#include <cstddef>
#include <vector>

#include "modspoof/audio_io.h"
#include "modspoof/fft.h"
#include "modspoof/feature_matrix.h"

namespace modspoof {

enum class WindowType { kHann, kHamming };

/// Defaults: 25 ms Hann window, 10 ms hop, 1024-point FFT at 16 kHz.
struct StftConfig {
  std::size_t n_fft = 1024;
  std::size_t win_length = 400;
  std::size_t hop_length = 160;
  WindowType window = WindowType::kHann;
  bool center = false;

  void validate() const;
  std::size_t num_bins() const { return n_fft / 2 + 1; }
  /// Frame count for a signal of `num_samples` samples.
  std::size_t num_frames(std::size_t num_samples) const;
};

struct MelConfig {
  std::size_t n_mels = 80;
  double f_min = 0.0;
  double f_max = 8000.0;
  int sample_rate = kDefaultSampleRate;

  void validate() const;
};

/// Floor applied before the logarithm of mel energies.
inline constexpr double kLogFloor = 1e-10;

/// bins x frames, row-major.
struct ComplexSpectrogram {
  std::size_t bins = 0;
  std::size_t frames = 0;
  std::vector<Complex> values;

  Complex operator()(std::size_t b, std::size_t f) const {
    return values[b * frames + f];
  }
};

/// Periodic window of the given length.
std::vector<double> make_window(WindowType type, std::size_t length);

/// Frames are `win_length` samples, windowed, zero-padded to n_fft and
/// transformed; bins = n_fft/2 + 1. With center = true the signal is first
/// reflect-padded by win_length/2 on both sides.
ComplexSpectrogram stft(const AudioClip& clip, const StftConfig& cfg);

/// |X|^2 per bin and frame.
FeatureMatrix power_spectrogram(const ComplexSpectrogram& spec);

double hz_to_mel(double hz);
double mel_to_hz(double mel);

/// Triangular HTK-mel filters, n_mels x (n_fft/2 + 1), peak weight 1.
struct MelFilterbank {
  std::size_t n_mels = 0;
  std::size_t n_bins = 0;
  std::vector<double> weights;      // row-major n_mels x n_bins
  std::vector<double> center_hz;    // peak frequency of each filter
  std::vector<std::size_t> first;   // first bin with nonzero weight
  std::vector<std::size_t> last;    // last bin with nonzero weight (inclusive)

  double operator()(std::size_t m, std::size_t b) const {
    return weights[m * n_bins + b];
  }
};

MelFilterbank mel_filterbank(const MelConfig& cfg, std::size_t n_fft);

/// Mel energies without the log (kind kMelSpec).
FeatureMatrix mel_spectrogram(const FeatureMatrix& power,
                              const MelFilterbank& bank);

/// ln(max(bank * power, kLogFloor)), kind kLogMel.
FeatureMatrix log_mel(const FeatureMatrix& power, const MelFilterbank& bank);

/// Per-frame orthonormal DCT-II over the mel axis, first n_coeffs rows.
FeatureMatrix mfcc(const FeatureMatrix& logmel, std::size_t n_coeffs);

class Normalizer;

/// log-Mel of a clip: stft -> power -> mel filterbank -> log.
FeatureMatrix compute_log_mel(const AudioClip& clip, const StftConfig& stft_cfg,
                              const MelConfig& mel_cfg);

/// The global modulation feature: 2-D DCT over the whole log-Mel matrix,
/// followed by the given normalization.
FeatureMatrix global_modulation(const AudioClip& clip,
                                const StftConfig& stft_cfg,
                                const MelConfig& mel_cfg,
                                const Normalizer& norm);

struct BlockGrid {
  std::size_t rows = 1;
  std::size_t cols = 1;
};

/// Splits the log-Mel into a rows x cols grid (even split, remainder to the
/// last block) and takes an independent 2-D DCT of every block.
FeatureMatrix blocked_modulation(const FeatureMatrix& logmel, BlockGrid grid);

enum class Band { kLowHalf, kHighHalf };

/// 2-D DCT of the lower floor(n_mels/2) or upper ceil(n_mels/2) mel rows;
/// the two halves partition the rows and an odd middle row goes to the high
/// half.
FeatureMatrix band_restricted_modulation(const FeatureMatrix& logmel, Band band);

}  // namespace modspoof

#endif  // MODSPOOF_FEATURES_H_
