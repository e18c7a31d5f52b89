// src/dct.cc

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

#include "modspoof/dct.h"

#include <cmath>
#include <memory>
#include <numbers>
#include <string>
#include <unordered_map>

#include "modspoof/error.h"

namespace modspoof {

DctPlan::DctPlan(std::size_t n) : n_(n), fft_(n == 0 ? 1 : 2 * n) {
  if (n == 0) throw Error(ErrorCode::kEmptyInput, "DCT of empty input");
  shift_.resize(n);
  scale_.resize(n);
  const double two_n = 2.0 * static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double angle = -std::numbers::pi * static_cast<double>(k) / two_n;
    shift_[k] = {std::cos(angle), std::sin(angle)};
    scale_[k] = std::sqrt((k == 0 ? 1.0 : 2.0) / static_cast<double>(n));
  }
}

void DctPlan::forward(std::span<const double> in, std::span<double> out) const {
  if (in.size() != n_ || out.size() != n_) {
    throw Error(ErrorCode::kShapeMismatch, "DCT length mismatch");
  }
  std::vector<Complex> work(2 * n_);
  for (std::size_t i = 0; i < n_; ++i) {
    work[i] = in[i];
    work[2 * n_ - 1 - i] = in[i];
  }
  fft_.forward(work);
  // FFT of the symmetric extension is 2 exp(i pi k / 2N) * sum_n x_n cos(.).
  for (std::size_t k = 0; k < n_; ++k) {
    out[k] = 0.5 * scale_[k] * (shift_[k] * work[k]).real();
  }
}

void DctPlan::inverse(std::span<const double> in, std::span<double> out) const {
  if (in.size() != n_ || out.size() != n_) {
    throw Error(ErrorCode::kShapeMismatch, "DCT length mismatch");
  }
  std::vector<Complex> work(2 * n_, Complex(0.0, 0.0));
  for (std::size_t k = 0; k < n_; ++k) {
    work[k] = scale_[k] * in[k] * std::conj(shift_[k]);
  }
  fft_.inverse(work);
  for (std::size_t i = 0; i < n_; ++i) out[i] = work[i].real();
}

const DctPlan& dct_plan(std::size_t n) {
  thread_local std::unordered_map<std::size_t, std::unique_ptr<DctPlan>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<DctPlan>(n);
  return *slot;
}

std::vector<double> dct2_1d(std::span<const double> x,
                            std::optional<std::size_t> n_out) {
  if (x.empty()) throw Error(ErrorCode::kEmptyInput, "dct2_1d: empty input");
  const std::size_t keep = n_out.value_or(x.size());
  if (keep > x.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "dct2_1d: n_out " + std::to_string(keep) + " exceeds length " +
                    std::to_string(x.size()));
  }
  std::vector<double> out(x.size());
  dct_plan(x.size()).forward(x, out);
  out.resize(keep);
  return out;
}

std::vector<double> idct2_1d(std::span<const double> coeffs) {
  if (coeffs.empty()) throw Error(ErrorCode::kEmptyInput, "idct2_1d: empty");
  std::vector<double> out(coeffs.size());
  dct_plan(coeffs.size()).inverse(coeffs, out);
  return out;
}

namespace {

void check_finite(const FeatureMatrix& m) {
  if (m.empty()) throw Error(ErrorCode::kEmptyInput, "2-D DCT of empty matrix");
  if (!m.all_finite()) {
    throw Error(ErrorCode::kNonFinite, "2-D DCT input has non-finite entries");
  }
}

void transform_rows(FeatureMatrix& m, bool inverse) {
  const DctPlan& plan = dct_plan(m.cols());
  std::vector<double> tmp(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    if (inverse) {
      plan.inverse(row, tmp);
    } else {
      plan.forward(row, tmp);
    }
    std::copy(tmp.begin(), tmp.end(), row.begin());
  }
}

void transform_cols(FeatureMatrix& m, bool inverse) {
  const DctPlan& plan = dct_plan(m.rows());
  std::vector<double> col(m.rows()), tmp(m.rows());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    for (std::size_t r = 0; r < m.rows(); ++r) col[r] = m(r, c);
    if (inverse) {
      plan.inverse(col, tmp);
    } else {
      plan.forward(col, tmp);
    }
    for (std::size_t r = 0; r < m.rows(); ++r) m(r, c) = tmp[r];
  }
}

}  // namespace

FeatureMatrix dct2_forward(const FeatureMatrix& m) {
  check_finite(m);
  FeatureMatrix out = m;
  transform_rows(out, false);
  transform_cols(out, false);
  out.set_kind(FeatureKind::kGlobalMod);
  return out;
}

FeatureMatrix dct2_forward_cols_first(const FeatureMatrix& m) {
  check_finite(m);
  FeatureMatrix out = m;
  transform_cols(out, false);
  transform_rows(out, false);
  out.set_kind(FeatureKind::kGlobalMod);
  return out;
}

FeatureMatrix dct2_inverse(const FeatureMatrix& coeffs) {
  check_finite(coeffs);
  FeatureMatrix out = coeffs;
  transform_cols(out, true);
  transform_rows(out, true);
  return out;
}

}  // namespace modspoof
