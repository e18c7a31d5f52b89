// src/augment.cc

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

#include "modspoof/augment.h"

#include <cmath>
#include <numeric>

#include "modspoof/error.h"

namespace modspoof {

void MaskSpec::validate() const {
  if (!(max_width_fraction > 0.0 && max_width_fraction <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "mask width fraction must be in (0, 1]");
  }
}

std::vector<MaskBand> draw_mask_bands(const MaskSpec& spec, std::size_t rows,
                                      std::size_t cols, Rng& rng) {
  spec.validate();
  std::vector<MaskBand> bands;
  for (const MaskAxis axis : {MaskAxis::kRows, MaskAxis::kCols}) {
    const std::size_t len = axis == MaskAxis::kRows ? rows : cols;
    if (len == 0) continue;
    const auto max_width = static_cast<std::size_t>(
        std::floor(spec.max_width_fraction * static_cast<double>(len)));
    const std::size_t count = rng.uniform_int(spec.max_masks_per_axis);
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t width = rng.uniform_int(max_width);
      const std::size_t start = rng.uniform_int(len - width);
      bands.push_back({axis, start, width});
    }
  }
  return bands;
}

FeatureMatrix apply_mask_bands(const FeatureMatrix& m,
                               std::span<const MaskBand> bands, double fill) {
  FeatureMatrix out = m;
  for (const auto& band : bands) {
    if (band.axis == MaskAxis::kRows) {
      for (std::size_t r = band.start; r < band.start + band.width; ++r) {
        for (double& v : out.row(r)) v = fill;
      }
    } else {
      for (std::size_t r = 0; r < out.rows(); ++r) {
        for (std::size_t c = band.start; c < band.start + band.width; ++c) {
          out(r, c) = fill;
        }
      }
    }
  }
  return out;
}

FeatureMatrix spec_mask(const FeatureMatrix& logmel, const MaskSpec& spec,
                        Rng& rng) {
  if (logmel.kind() != FeatureKind::kLogMel) {
    throw Error(ErrorCode::kInvalidArgument, "spec_mask expects a log-Mel matrix");
  }
  const auto bands = draw_mask_bands(spec, logmel.rows(), logmel.cols(), rng);
  if (bands.empty()) return logmel;
  double fill = 0.0;
  if (spec.fill_value) {
    fill = *spec.fill_value;
  } else if (!logmel.empty()) {
    const auto v = logmel.values();
    fill = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  }
  return apply_mask_bands(logmel, bands, fill);
}

FeatureMatrix dct_zero_mask(const FeatureMatrix& feature, const MaskSpec& spec,
                            Rng& rng) {
  switch (feature.kind()) {
    case FeatureKind::kGlobalMod:
    case FeatureKind::kBlockedMod:
    case FeatureKind::kBandMod:
      break;
    default:
      throw Error(ErrorCode::kInvalidArgument,
                  "dct_zero_mask expects a modulation feature");
  }
  const auto bands = draw_mask_bands(spec, feature.rows(), feature.cols(), rng);
  return apply_mask_bands(feature, bands, 0.0);
}

}  // namespace modspoof
