// include/modspoof/fft.h

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

#ifndef MODSPOOF_FFT_H_
#define MODSPOOF_FFT_H_

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace modspoof {

using Complex = std::complex<double>;

/// Complex DFT of a fixed length. Powers of two use an iterative radix-2
/// transform; other lengths go through Bluestein's chirp-z reduction onto a
/// power-of-two transform. A plan is immutable after construction, so one
/// instance may be shared across threads.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);

  std::size_t size() const { return n_; }

  /// In place, X_k = sum_n x_n exp(-2 pi i k n / N).
  void forward(std::span<Complex> data) const;
  /// In place, unnormalized: x_n = sum_k X_k exp(+2 pi i k n / N).
  void inverse(std::span<Complex> data) const;

 private:
  void radix2(std::span<Complex> data, bool inverse) const;
  void bluestein(std::span<Complex> data, bool inverse) const;

  std::size_t n_;
  bool pow2_;
  // radix-2 state
  std::vector<std::size_t> bitrev_;
  std::vector<Complex> twiddle_;  // exp(-2 pi i k / n), k < n/2
  // Bluestein state
  std::vector<Complex> chirp_;      // exp(-i pi k^2 / n)
  std::vector<Complex> chirp_fft_;  // FFT_m of the conjugate chirp kernel
  std::unique_ptr<FftPlan> inner_;
};

/// Per-thread cache of plans keyed by length.
const FftPlan& fft_plan(std::size_t n);

bool is_power_of_two(std::size_t n);

}  // namespace modspoof

#endif  // MODSPOOF_FFT_H_
