// include/modspoof/fusion.h

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

#ifndef MODSPOOF_FUSION_H_
#define MODSPOOF_FUSION_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "modspoof/audio_io.h"
#include "modspoof/metrics.h"

namespace modspoof {

/// Score-level combination of two systems. `a` is the baseline system and
/// `b` the global-modulation system, so ratio 1.0 reproduces a and 0.0
/// reproduces b.
struct FusionMode {
  enum class Kind { kWeighted, kMin, kMax };
  Kind kind = Kind::kWeighted;
  double ratio = 0.5;
  /// Min/max select the system whose max(p, 1-p) is lower/higher instead of
  /// the elementwise extremum of p_genuine.
  bool confidence = false;

  static FusionMode weighted(double r) { return {Kind::kWeighted, r, false}; }
  static FusionMode min() { return {Kind::kMin, 0.0, false}; }
  static FusionMode max() { return {Kind::kMax, 0.0, false}; }

  /// "weighted:R", "min" or "max".
  static FusionMode parse(std::string_view text);
  std::string label() const;
};

/// Output follows the order of `a`. Throws kMismatch when the utterance
/// sets (or their keys) differ.
std::vector<ScoreRecord> fuse(std::span<const ScoreRecord> a,
                              std::span<const ScoreRecord> b,
                              const FusionMode& mode);

struct MetricRow {
  std::string id;
  double tdcf;
  double eer;  // fraction
  std::size_t n_bonafide = 0;
  std::size_t n_spoof = 0;
};

/// Rows: min, weighted 0.0 .. 1.0 in steps of 0.1 (or `ratios`), max.
std::vector<MetricRow> ratio_sweep(std::span<const ScoreRecord> a,
                                   std::span<const ScoreRecord> b,
                                   const AsvOperatingPoint& op,
                                   const CostModel& cost,
                                   std::span<const double> ratios = {},
                                   bool confidence = false);

struct Breakdown {
  std::vector<MetricRow> rows;  // per attack id (sorted), then "ALL"
  std::vector<std::string> warnings;
};

/// Metrics on bonafide plus the spoofs of each attack. When `attacks` is
/// given, exactly those ids are evaluated; ids without spoof trials are
/// skipped with a warning.
Breakdown per_attack_breakdown(std::span<const ScoreRecord> scores,
                               const AsvOperatingPoint& op,
                               const CostModel& cost,
                               std::optional<std::vector<std::string>> attacks =
                                   std::nullopt);

/// Aligned text table: id, t-DCF (4 decimals), EER % (3 decimals).
std::string render_metric_table(std::span<const MetricRow> rows,
                                std::string_view id_header);
/// CSV with header "id,tdcf,eer_percent".
std::string render_metric_csv(std::span<const MetricRow> rows);

}  // namespace modspoof

#endif  // MODSPOOF_FUSION_H_
