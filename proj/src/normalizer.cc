// src/normalizer.cc

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

#include "modspoof/normalizer.h"

#include <bit>
#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "modspoof/audio_io.h"
#include "modspoof/error.h"

namespace modspoof {

std::string_view norm_mode_name(NormMode mode) {
  switch (mode) {
    case NormMode::kNone: return "none";
    case NormMode::kL1: return "l1";
    case NormMode::kStandardize: return "std";
  }
  return "none";
}

NormMode parse_norm_mode(std::string_view token) {
  if (token == "none") return NormMode::kNone;
  if (token == "l1") return NormMode::kL1;
  if (token == "std" || token == "standardize") return NormMode::kStandardize;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown normalization '" + std::string(token) + "'");
}

Normalizer Normalizer::fit(std::span<const FeatureMatrix> features,
                           NormMode mode) {
  Normalizer norm(mode);
  if (mode != NormMode::kStandardize) return norm;
  if (features.empty()) {
    throw Error(ErrorCode::kEmptyInput, "standardization needs a nonempty fitting set");
  }
  const std::size_t rows = features[0].rows(), cols = features[0].cols();
  for (const auto& f : features) {
    if (f.rows() != rows || f.cols() != cols) {
      throw Error(ErrorCode::kShapeMismatch, "fitting set has mixed shapes");
    }
  }
  const double count = static_cast<double>(features.size());
  norm.mean_ = FeatureMatrix(rows, cols, features[0].kind());
  norm.std_ = FeatureMatrix(rows, cols, features[0].kind());
  auto mean = norm.mean_.values();
  auto sd = norm.std_.values();
  for (const auto& f : features) {
    const auto v = f.values();
    for (std::size_t i = 0; i < v.size(); ++i) mean[i] += v[i];
  }
  for (double& m : mean) m /= count;
  // Two-pass variance for accuracy.
  for (const auto& f : features) {
    const auto v = f.values();
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double d = v[i] - mean[i];
      sd[i] += d * d;
    }
  }
  for (double& s : sd) s = std::max(std::sqrt(s / count), kStdFloor);
  return norm;
}

Normalizer::Result Normalizer::apply_checked(const FeatureMatrix& feature) const {
  Result result{feature, false};
  auto v = result.feature.values();
  switch (mode_) {
    case NormMode::kNone:
      break;
    case NormMode::kL1: {
      double total = 0.0;
      for (double x : v) total += std::abs(x);
      if (total == 0.0) {
        result.zero_norm = true;
        break;
      }
      for (double& x : v) x /= total;
      break;
    }
    case NormMode::kStandardize: {
      if (feature.rows() != mean_.rows() || feature.cols() != mean_.cols()) {
        throw Error(ErrorCode::kShapeMismatch,
                    "feature shape " + std::to_string(feature.rows()) + "x" +
                        std::to_string(feature.cols()) +
                        " differs from fitted normalizer " +
                        std::to_string(mean_.rows()) + "x" +
                        std::to_string(mean_.cols()));
      }
      const auto mean = mean_.values();
      const auto sd = std_.values();
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = (v[i] - mean[i]) / sd[i];
      break;
    }
  }
  return result;
}

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_f64(std::vector<std::uint8_t>& out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
  return v;
}

double get_f64(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return std::bit_cast<double>(v);
}

}  // namespace

void Normalizer::save(const std::filesystem::path& path) const {
  std::vector<std::uint8_t> out{'G', 'M', 'N', '1'};
  out.push_back(static_cast<std::uint8_t>(mode_));
  put_u32(out, static_cast<std::uint32_t>(mean_.rows()));
  put_u32(out, static_cast<std::uint32_t>(mean_.cols()));
  out.push_back(static_cast<std::uint8_t>(mean_.kind()));
  for (double v : mean_.values()) put_f64(out, v);
  for (double v : std_.values()) put_f64(out, v);
  write_file_bytes(path, out);
}

Normalizer Normalizer::load(const std::filesystem::path& path) {
  const auto bytes = read_file_bytes(path);
  if (bytes.size() < 14 || std::memcmp(bytes.data(), "GMN1", 4) != 0) {
    throw Error(ErrorCode::kFormat, path.string() + ": bad normalizer magic");
  }
  if (bytes[4] > static_cast<std::uint8_t>(NormMode::kStandardize)) {
    throw Error(ErrorCode::kFormat, path.string() + ": unknown normalizer mode");
  }
  Normalizer norm(static_cast<NormMode>(bytes[4]));
  const std::uint32_t rows = get_u32(bytes.data() + 5);
  const std::uint32_t cols = get_u32(bytes.data() + 9);
  const auto kind = feature_kind_from_tag(bytes[13]);
  const std::size_t count = std::size_t{rows} * cols;
  if (!kind || bytes.size() != 14 + 16 * count) {
    throw Error(ErrorCode::kFormat, path.string() + ": truncated normalizer");
  }
  std::vector<double> mean(count), sd(count);
  for (std::size_t i = 0; i < count; ++i) {
    mean[i] = get_f64(bytes.data() + 14 + 8 * i);
    sd[i] = get_f64(bytes.data() + 14 + 8 * (count + i));
  }
  norm.mean_ = FeatureMatrix(rows, cols, *kind, std::move(mean));
  norm.std_ = FeatureMatrix(rows, cols, *kind, std::move(sd));
  return norm;
}

}  // namespace modspoof
