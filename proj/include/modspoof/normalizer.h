// include/modspoof/normalizer.h

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

#ifndef MODSPOOF_NORMALIZER_H_
#define MODSPOOF_NORMALIZER_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>

#include "modspoof/feature_matrix.h"

namespace modspoof {

enum class NormMode : std::uint8_t { kNone = 0, kL1 = 1, kStandardize = 2 };

std::string_view norm_mode_name(NormMode mode);
NormMode parse_norm_mode(std::string_view token);  // none | l1 | std

/// Smallest per-coefficient standard deviation used when standardizing.
inline constexpr double kStdFloor = 1e-8;

/// Feature normalization.
///
///  - kNone: identity.
///  - kL1: per utterance, every entry divided by the sum of absolute values
///    of the whole matrix. Stateless.
///  - kStandardize: per coefficient position, (x - mean) / std with mean and
///    std estimated over a training set (population std, floored at
///    kStdFloor).
///
/// A fitted normalizer is immutable and may be shared between threads.
class Normalizer {
 public:
  Normalizer() = default;
  explicit Normalizer(NormMode mode) : mode_(mode) {}

  static Normalizer fit(std::span<const FeatureMatrix> features, NormMode mode);

  NormMode mode() const { return mode_; }
  const FeatureMatrix& mean() const { return mean_; }
  const FeatureMatrix& stddev() const { return std_; }

  struct Result {
    FeatureMatrix feature;
    bool zero_norm = false;  // l1 mode met an all-zero matrix
  };

  /// Applies the normalization; kind is preserved.
  Result apply_checked(const FeatureMatrix& feature) const;
  FeatureMatrix apply(const FeatureMatrix& feature) const {
    return apply_checked(feature).feature;
  }

  /// Binary "GMN1": magic, mode u8, rows u32, cols u32, then mean and std as
  /// float64 little-endian (standardize mode only).
  void save(const std::filesystem::path& path) const;
  static Normalizer load(const std::filesystem::path& path);

 private:
  NormMode mode_ = NormMode::kNone;
  FeatureMatrix mean_;
  FeatureMatrix std_;
};

}  // namespace modspoof

#endif  // MODSPOOF_NORMALIZER_H_
