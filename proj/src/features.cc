// src/features.cc

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

#include "modspoof/features.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "modspoof/dct.h"
#include "modspoof/error.h"
#include "modspoof/normalizer.h"

namespace modspoof {

void StftConfig::validate() const {
  if (!is_power_of_two(n_fft)) {
    throw Error(ErrorCode::kInvalidArgument,
                "n_fft must be a power of two, got " + std::to_string(n_fft));
  }
  if (hop_length == 0 || hop_length > win_length || win_length > n_fft) {
    throw Error(ErrorCode::kInvalidArgument,
                "STFT requires 0 < hop_length <= win_length <= n_fft");
  }
}

std::size_t StftConfig::num_frames(std::size_t num_samples) const {
  const std::size_t padded = center ? num_samples + 2 * (win_length / 2)
                                    : num_samples;
  if (padded < win_length) return 0;
  return 1 + (padded - win_length) / hop_length;
}

void MelConfig::validate() const {
  if (n_mels < 2) throw Error(ErrorCode::kInvalidArgument, "n_mels must be >= 2");
  if (sample_rate <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "sample_rate must be positive");
  }
  if (!(f_min >= 0.0 && f_min < f_max && f_max <= sample_rate / 2.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "mel range requires 0 <= f_min < f_max <= sample_rate/2");
  }
}

std::vector<double> make_window(WindowType type, std::size_t length) {
  std::vector<double> w(length);
  const double a0 = type == WindowType::kHann ? 0.5 : 0.54;
  for (std::size_t n = 0; n < length; ++n) {
    w[n] = a0 - (1.0 - a0) * std::cos(2.0 * std::numbers::pi *
                                      static_cast<double>(n) /
                                      static_cast<double>(length));
  }
  return w;
}

ComplexSpectrogram stft(const AudioClip& clip, const StftConfig& cfg) {
  cfg.validate();
  const std::vector<double>* signal = &clip.samples;
  std::vector<double> padded;
  if (cfg.center) {
    const std::size_t pad = cfg.win_length / 2;
    const std::size_t n = clip.samples.size();
    if (n <= pad) {
      throw Error(ErrorCode::kTooShort,
                  "clip of " + std::to_string(n) +
                      " samples too short for reflect padding");
    }
    padded.resize(n + 2 * pad);
    for (std::size_t i = 0; i < pad; ++i) {
      padded[i] = clip.samples[pad - i];
      padded[pad + n + i] = clip.samples[n - 2 - i];
    }
    std::copy(clip.samples.begin(), clip.samples.end(), padded.begin() + pad);
    signal = &padded;
  }
  if (signal->size() < cfg.win_length) {
    throw Error(ErrorCode::kTooShort,
                "clip of " + std::to_string(clip.samples.size()) +
                    " samples shorter than one window (" +
                    std::to_string(cfg.win_length) + ")");
  }

  const std::size_t frames = 1 + (signal->size() - cfg.win_length) / cfg.hop_length;
  const std::size_t bins = cfg.num_bins();
  const auto window = make_window(cfg.window, cfg.win_length);
  const FftPlan& plan = fft_plan(cfg.n_fft);

  ComplexSpectrogram spec;
  spec.bins = bins;
  spec.frames = frames;
  spec.values.resize(bins * frames);
  std::vector<Complex> buf(cfg.n_fft);
  for (std::size_t f = 0; f < frames; ++f) {
    const double* x = signal->data() + f * cfg.hop_length;
    std::fill(buf.begin(), buf.end(), Complex(0.0, 0.0));
    for (std::size_t n = 0; n < cfg.win_length; ++n) buf[n] = x[n] * window[n];
    plan.forward(buf);
    for (std::size_t b = 0; b < bins; ++b) spec.values[b * frames + f] = buf[b];
  }
  return spec;
}

FeatureMatrix power_spectrogram(const ComplexSpectrogram& spec) {
  FeatureMatrix out(spec.bins, spec.frames, FeatureKind::kPowerSpec);
  auto dst = out.values();
  for (std::size_t i = 0; i < spec.values.size(); ++i) {
    const Complex z = spec.values[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(ErrorCode::kNonFinite, "non-finite spectrogram entry");
    }
    dst[i] = z.real() * z.real() + z.imag() * z.imag();
  }
  return out;
}

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double mel_to_hz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

MelFilterbank mel_filterbank(const MelConfig& cfg, std::size_t n_fft) {
  cfg.validate();
  if (!is_power_of_two(n_fft)) {
    throw Error(ErrorCode::kInvalidArgument, "n_fft must be a power of two");
  }
  MelFilterbank bank;
  bank.n_mels = cfg.n_mels;
  bank.n_bins = n_fft / 2 + 1;
  bank.weights.assign(bank.n_mels * bank.n_bins, 0.0);
  bank.center_hz.resize(cfg.n_mels);
  bank.first.resize(cfg.n_mels);
  bank.last.resize(cfg.n_mels);

  const double mel_lo = hz_to_mel(cfg.f_min);
  const double mel_hi = hz_to_mel(cfg.f_max);
  std::vector<double> edges(cfg.n_mels + 2);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    edges[i] = mel_to_hz(mel_lo + (mel_hi - mel_lo) * static_cast<double>(i) /
                                      static_cast<double>(cfg.n_mels + 1));
  }
  const double bin_hz = static_cast<double>(cfg.sample_rate) /
                        static_cast<double>(n_fft);

  for (std::size_t m = 0; m < cfg.n_mels; ++m) {
    const double left = edges[m], center = edges[m + 1], right = edges[m + 2];
    bank.center_hz[m] = center;
    bool any = false;
    for (std::size_t b = 0; b < bank.n_bins; ++b) {
      const double f = static_cast<double>(b) * bin_hz;
      const double up = (f - left) / (center - left);
      const double down = (right - f) / (right - center);
      const double w = std::max(0.0, std::min(up, down));
      if (w > 0.0) {
        if (!any) bank.first[m] = b;
        bank.last[m] = b;
        any = true;
      }
      bank.weights[m * bank.n_bins + b] = w;
    }
    if (!any) {
      throw Error(ErrorCode::kResolution,
                  "mel filter " + std::to_string(m) + " (" +
                      std::to_string(center) +
                      " Hz) covers no FFT bin; reduce n_mels or raise n_fft");
    }
  }
  return bank;
}

FeatureMatrix mel_spectrogram(const FeatureMatrix& power,
                              const MelFilterbank& bank) {
  if (power.rows() != bank.n_bins) {
    throw Error(ErrorCode::kShapeMismatch,
                "power spectrogram has " + std::to_string(power.rows()) +
                    " bins, filterbank expects " + std::to_string(bank.n_bins));
  }
  FeatureMatrix out(bank.n_mels, power.cols(), FeatureKind::kMelSpec);
  for (std::size_t m = 0; m < bank.n_mels; ++m) {
    auto dst = out.row(m);
    for (std::size_t b = bank.first[m]; b <= bank.last[m]; ++b) {
      const double w = bank(m, b);
      const auto src = power.row(b);
      for (std::size_t t = 0; t < power.cols(); ++t) dst[t] += w * src[t];
    }
  }
  return out;
}

FeatureMatrix log_mel(const FeatureMatrix& power, const MelFilterbank& bank) {
  FeatureMatrix out = mel_spectrogram(power, bank);
  for (double& v : out.values()) v = std::log(std::max(v, kLogFloor));
  out.set_kind(FeatureKind::kLogMel);
  return out;
}

FeatureMatrix mfcc(const FeatureMatrix& logmel, std::size_t n_coeffs) {
  if (logmel.kind() != FeatureKind::kLogMel) {
    throw Error(ErrorCode::kInvalidArgument, "mfcc expects a log-Mel matrix");
  }
  if (n_coeffs == 0 || n_coeffs > logmel.rows()) {
    throw Error(ErrorCode::kInvalidArgument,
                "mfcc: n_coeffs must be in [1, n_mels]");
  }
  const DctPlan& plan = dct_plan(logmel.rows());
  FeatureMatrix out(n_coeffs, logmel.cols(), FeatureKind::kMfcc);
  std::vector<double> col(logmel.rows()), coeffs(logmel.rows());
  for (std::size_t t = 0; t < logmel.cols(); ++t) {
    for (std::size_t m = 0; m < logmel.rows(); ++m) col[m] = logmel(m, t);
    plan.forward(col, coeffs);
    for (std::size_t k = 0; k < n_coeffs; ++k) out(k, t) = coeffs[k];
  }
  return out;
}

FeatureMatrix compute_log_mel(const AudioClip& clip, const StftConfig& stft_cfg,
                              const MelConfig& mel_cfg) {
  if (clip.sample_rate != mel_cfg.sample_rate) {
    throw Error(ErrorCode::kRateMismatch,
                "clip rate " + std::to_string(clip.sample_rate) +
                    " Hz != mel config rate " +
                    std::to_string(mel_cfg.sample_rate) + " Hz");
  }
  const MelFilterbank bank = mel_filterbank(mel_cfg, stft_cfg.n_fft);
  return log_mel(power_spectrogram(stft(clip, stft_cfg)), bank);
}

FeatureMatrix global_modulation(const AudioClip& clip,
                                const StftConfig& stft_cfg,
                                const MelConfig& mel_cfg,
                                const Normalizer& norm) {
  return norm.apply(dct2_forward(compute_log_mel(clip, stft_cfg, mel_cfg)));
}

namespace {

std::vector<std::size_t> split_sizes(std::size_t total, std::size_t parts) {
  std::vector<std::size_t> sizes(parts, total / parts);
  sizes.back() += total % parts;
  return sizes;
}

}  // namespace

FeatureMatrix blocked_modulation(const FeatureMatrix& logmel, BlockGrid grid) {
  if (grid.rows == 0 || grid.cols == 0) {
    throw Error(ErrorCode::kInvalidArgument, "block grid dimensions must be >= 1");
  }
  if (grid.rows > logmel.rows() || grid.cols > logmel.cols()) {
    throw Error(ErrorCode::kInvalidArgument,
                "block grid " + std::to_string(grid.rows) + "x" +
                    std::to_string(grid.cols) + " larger than matrix " +
                    std::to_string(logmel.rows()) + "x" +
                    std::to_string(logmel.cols()));
  }
  const auto row_sizes = split_sizes(logmel.rows(), grid.rows);
  const auto col_sizes = split_sizes(logmel.cols(), grid.cols);
  FeatureMatrix out(logmel.rows(), logmel.cols(), FeatureKind::kBlockedMod);
  std::size_t r0 = 0;
  for (std::size_t br = 0; br < grid.rows; ++br) {
    std::size_t c0 = 0;
    for (std::size_t bc = 0; bc < grid.cols; ++bc) {
      out.paste(dct2_forward(logmel.sub(r0, row_sizes[br], c0, col_sizes[bc])),
                r0, c0);
      c0 += col_sizes[bc];
    }
    r0 += row_sizes[br];
  }
  return out;
}

FeatureMatrix band_restricted_modulation(const FeatureMatrix& logmel, Band band) {
  const std::size_t n = logmel.rows();
  if (n < 2) {
    throw Error(ErrorCode::kInvalidArgument, "band split needs at least 2 mel rows");
  }
  const std::size_t low_rows = n / 2;
  FeatureMatrix part = band == Band::kLowHalf
                           ? logmel.sub(0, low_rows, 0, logmel.cols())
                           : logmel.sub(low_rows, n - low_rows, 0, logmel.cols());
  FeatureMatrix out = dct2_forward(part);
  out.set_kind(FeatureKind::kBandMod);
  return out;
}

}  // namespace modspoof
