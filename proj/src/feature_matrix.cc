// src/feature_matrix.cc

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

#include "modspoof/feature_matrix.h"

#include <algorithm>
#include <cmath>

#include "modspoof/error.h"

namespace modspoof {

std::string_view feature_kind_name(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::kPowerSpec: return "power_spec";
    case FeatureKind::kMelSpec: return "mel_spec";
    case FeatureKind::kLogMel: return "log_mel";
    case FeatureKind::kMfcc: return "mfcc";
    case FeatureKind::kGlobalMod: return "global_mod";
    case FeatureKind::kBlockedMod: return "blocked_mod";
    case FeatureKind::kBandMod: return "band_mod";
  }
  return "unknown";
}

std::optional<FeatureKind> feature_kind_from_tag(std::uint8_t tag) {
  if (tag > static_cast<std::uint8_t>(FeatureKind::kBandMod)) {
    return std::nullopt;
  }
  return static_cast<FeatureKind>(tag);
}

FeatureMatrix::FeatureMatrix(std::size_t rows, std::size_t cols,
                             FeatureKind kind, std::vector<double> values)
    : rows_(rows), cols_(cols), kind_(kind), values_(std::move(values)) {
  if (values_.size() != rows_ * cols_) {
    throw Error(ErrorCode::kShapeMismatch,
                "FeatureMatrix: value count " + std::to_string(values_.size()) +
                    " != " + std::to_string(rows_) + "x" +
                    std::to_string(cols_));
  }
}

bool FeatureMatrix::all_finite() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return std::isfinite(v); });
}

FeatureMatrix FeatureMatrix::sub(std::size_t r0, std::size_t nr,
                                 std::size_t c0, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) {
    throw Error(ErrorCode::kShapeMismatch, "FeatureMatrix::sub out of range");
  }
  FeatureMatrix out(nr, nc, kind_);
  for (std::size_t r = 0; r < nr; ++r) {
    const auto src = row(r0 + r).subspan(c0, nc);
    std::copy(src.begin(), src.end(), out.row(r).begin());
  }
  return out;
}

void FeatureMatrix::paste(const FeatureMatrix& block, std::size_t r0,
                          std::size_t c0) {
  if (r0 + block.rows() > rows_ || c0 + block.cols() > cols_) {
    throw Error(ErrorCode::kShapeMismatch, "FeatureMatrix::paste out of range");
  }
  for (std::size_t r = 0; r < block.rows(); ++r) {
    const auto src = block.row(r);
    std::copy(src.begin(), src.end(), row(r0 + r).begin() + c0);
  }
}

}  // namespace modspoof
