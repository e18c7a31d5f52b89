// include/modspoof/feature_matrix.h

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

#ifndef MODSPOOF_FEATURE_MATRIX_H_
#define MODSPOOF_FEATURE_MATRIX_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace modspoof {

// Numeric values are the on-disk tag in GMF1 feature files; do not reorder.
enum class FeatureKind : std::uint8_t {
  kPowerSpec = 0,
  kMelSpec = 1,
  kLogMel = 2,
  kMfcc = 3,
  kGlobalMod = 4,
  kBlockedMod = 5,
  kBandMod = 6,
};

std::string_view feature_kind_name(FeatureKind kind);
std::optional<FeatureKind> feature_kind_from_tag(std::uint8_t tag);

/// Dense row-major real grid. Rows index frequency / mel / spectral
/// modulation, columns index frames / temporal modulation.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t rows, std::size_t cols, FeatureKind kind,
                double fill = 0.0)
      : rows_(rows), cols_(cols), kind_(kind), values_(rows * cols, fill) {}
  FeatureMatrix(std::size_t rows, std::size_t cols, FeatureKind kind,
                std::vector<double> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  FeatureKind kind() const { return kind_; }
  void set_kind(FeatureKind kind) { kind_ = kind; }

  double& operator()(std::size_t r, std::size_t c) {
    return values_[r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    return values_[r * cols_ + c];
  }

  std::span<double> row(std::size_t r) {
    return {values_.data() + r * cols_, cols_};
  }
  std::span<const double> row(std::size_t r) const {
    return {values_.data() + r * cols_, cols_};
  }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  bool all_finite() const;

  /// Copy of rows [r0, r0+nr) x cols [c0, c0+nc).
  FeatureMatrix sub(std::size_t r0, std::size_t nr, std::size_t c0,
                    std::size_t nc) const;
  void paste(const FeatureMatrix& block, std::size_t r0, std::size_t c0);

  friend bool operator==(const FeatureMatrix&, const FeatureMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  FeatureKind kind_ = FeatureKind::kPowerSpec;
  std::vector<double> values_;
};

}  // namespace modspoof

#endif  // MODSPOOF_FEATURE_MATRIX_H_
