// include/modspoof/dct.h

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

#ifndef MODSPOOF_DCT_H_
#define MODSPOOF_DCT_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "modspoof/fft.h"
#include "modspoof/feature_matrix.h"

namespace modspoof {

/// Orthonormal DCT-II of length N and its inverse (orthonormal DCT-III):
///
///   X_k = s_k * sum_n x_n cos(pi (2n+1) k / 2N),  s_0 = sqrt(1/N),
///                                                 s_k = sqrt(2/N) for k > 0.
///
/// Both directions are evaluated through one complex FFT of length 2N over
/// the even-symmetric extension [x, reverse(x)], i.e. O(N log N).
class DctPlan {
 public:
  explicit DctPlan(std::size_t n);

  std::size_t size() const { return n_; }

  void forward(std::span<const double> in, std::span<double> out) const;
  void inverse(std::span<const double> in, std::span<double> out) const;

 private:
  std::size_t n_;
  FftPlan fft_;  // length 2N
  std::vector<Complex> shift_;  // exp(-i pi k / 2N)
  std::vector<double> scale_;   // s_k
};

/// Per-thread cache, same lifetime rules as fft_plan().
const DctPlan& dct_plan(std::size_t n);

/// 1-D orthonormal DCT-II, optionally truncated to the first n_out
/// coefficients.
std::vector<double> dct2_1d(std::span<const double> x,
                            std::optional<std::size_t> n_out = std::nullopt);

/// Inverse of dct2_1d (full length).
std::vector<double> idct2_1d(std::span<const double> coeffs);

/// Separable 2-D orthonormal DCT-II: every row, then every column. The
/// output keeps the input shape; row index is spectral modulation and
/// column index is temporal modulation. The result kind is kGlobalMod.
FeatureMatrix dct2_forward(const FeatureMatrix& m);

/// Same transform with the column pass first. Exposed for the separability
/// check; results agree with dct2_forward to rounding.
FeatureMatrix dct2_forward_cols_first(const FeatureMatrix& m);

/// Inverse 2-D transform (kind preserved from the input).
FeatureMatrix dct2_inverse(const FeatureMatrix& coeffs);

}  // namespace modspoof

#endif  // MODSPOOF_DCT_H_
