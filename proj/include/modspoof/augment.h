// include/modspoof/augment.h

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

#ifndef MODSPOOF_AUGMENT_H_
#define MODSPOOF_AUGMENT_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "modspoof/feature_matrix.h"
#include "modspoof/rng.h"

namespace modspoof {

struct MaskSpec {
  std::size_t max_masks_per_axis = 2;
  double max_width_fraction = 0.1;
  /// Unset: per-matrix mean for log-Mel input. dct_zero_mask always uses 0.
  std::optional<double> fill_value;
  std::uint64_t seed = 0;

  void validate() const;
};

enum class MaskAxis { kRows, kCols };

struct MaskBand {
  MaskAxis axis;
  std::size_t start;
  std::size_t width;  // may be 0
};

/// Draw order per axis (rows first, then columns): mask count k in
/// [0, max_masks]; then per mask width w in [0, floor(frac * len)] and
/// start in [0, len - w]. All draws are inclusive uniform integers.
std::vector<MaskBand> draw_mask_bands(const MaskSpec& spec, std::size_t rows,
                                      std::size_t cols, Rng& rng);

FeatureMatrix apply_mask_bands(const FeatureMatrix& m,
                               std::span<const MaskBand> bands, double fill);

/// SpecAugment-style frequency and time masking on a log-Mel matrix.
FeatureMatrix spec_mask(const FeatureMatrix& logmel, const MaskSpec& spec,
                        Rng& rng);

/// Random zeroing of bands in a 2-D DCT feature.
FeatureMatrix dct_zero_mask(const FeatureMatrix& feature, const MaskSpec& spec,
                            Rng& rng);

/// Independent stream for a training worker: seed = base_seed ^ worker.
inline Rng worker_rng(std::uint64_t base_seed, std::uint64_t worker_index) {
  return Rng(base_seed ^ worker_index);
}

}  // namespace modspoof

#endif  // MODSPOOF_AUGMENT_H_
