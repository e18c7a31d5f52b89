// include/modspoof/metrics.h

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

#ifndef MODSPOOF_METRICS_H_
#define MODSPOOF_METRICS_H_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "modspoof/audio_io.h"

namespace modspoof {

/// One operating point of the countermeasure: trials scoring below
/// `threshold` are rejected.
struct DetPoint {
  double threshold;
  double p_miss;  // bonafide with score < threshold
  double p_fa;    // spoof with score >= threshold
};

/// Thresholds are the sorted distinct scores followed by +infinity (the
/// reject-all point). p_miss is nondecreasing and p_fa nonincreasing.
std::vector<DetPoint> det_points(std::span<const double> bonafide,
                                 std::span<const double> spoof);
std::vector<DetPoint> det_points(std::span<const ScoreRecord> scores);

struct EerResult {
  double eer;        // fraction, (p_miss + p_fa) / 2 at the chosen point
  double threshold;
};

/// Picks the DET point minimizing |p_miss - p_fa| (compared exactly in
/// integer counts); ties go to the smaller threshold.
EerResult eer(std::span<const double> bonafide, std::span<const double> spoof);
EerResult eer(std::span<const ScoreRecord> scores);

/// Splits records into (bonafide, spoof) score vectors.
void split_by_key(std::span<const ScoreRecord> scores,
                  std::vector<double>& bonafide, std::vector<double>& spoof);

// ---------------------------------------------------------------------------
// Tandem detection cost function (ASVspoof 2019 formulation).

struct CostModel {
  double p_spoof = 0.05;
  double p_target = 0.9405;     // (1 - p_spoof) * 0.99
  double p_nontarget = 0.0095;  // (1 - p_spoof) * 0.01
  double c_miss_asv = 1.0;
  double c_fa_asv = 10.0;
  double c_miss_cm = 1.0;
  double c_fa_cm = 10.0;

  void validate() const;
  std::string to_json() const;
  static CostModel from_json(std::string_view text);
  static CostModel load(const std::filesystem::path& path);
};

/// Error rates of the fixed ASV system at its EER threshold.
struct AsvOperatingPoint {
  double p_miss_asv = 0.0;
  double p_fa_asv = 0.0;
  double p_miss_spoof_asv = 0.0;

  void validate() const;
  /// "Pmiss,Pfa,Pmiss_spoof".
  static AsvOperatingPoint parse(std::string_view text);
};

enum class AsvKey { kTarget, kNontarget, kSpoof };

struct AsvTrial {
  AsvKey key;
  double score;
};

/// 2-column "key score" lines, key in {target, nontarget, spoof}.
std::vector<AsvTrial> parse_asv_scores(std::string_view text);
std::vector<AsvTrial> read_asv_scores(const std::filesystem::path& path);

struct AsvRates {
  AsvOperatingPoint point;
  double threshold;
};

/// Threshold at the target/nontarget EER point (same convention as eer());
/// the three rates are evaluated at that threshold, with a trial accepted
/// when score >= threshold.
AsvRates asv_operating_point(std::span<const AsvTrial> trials);

struct TdcfResult {
  double tdcf_norm;  // minimum normalized t-DCF
  double threshold;
};

/// Tandem cost coefficients:
///   C1 = p_target (c_miss_cm - c_miss_asv p_miss_asv) - p_nontarget c_fa_asv p_fa_asv
///   C2 = c_fa_cm p_spoof (1 - p_miss_spoof_asv)
struct TdcfCoefficients {
  double c1;
  double c2;
};
TdcfCoefficients tdcf_coefficients(const AsvOperatingPoint& op,
                                   const CostModel& cost);

/// min over the DET sweep of (C1 p_miss_cm + C2 p_fa_cm) / min(C1, C2).
/// Throws kCostModel when C1 <= 0 or C2 <= 0.
TdcfResult min_tdcf(std::span<const double> bonafide,
                    std::span<const double> spoof, const AsvOperatingPoint& op,
                    const CostModel& cost);
TdcfResult min_tdcf(std::span<const ScoreRecord> scores,
                    const AsvOperatingPoint& op, const CostModel& cost);

}  // namespace modspoof

#endif  // MODSPOOF_METRICS_H_
