// src/fusion.cc

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

#include "modspoof/fusion.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <unordered_map>

#include "modspoof/error.h"

namespace modspoof {

FusionMode FusionMode::parse(std::string_view text) {
  if (text == "min") return min();
  if (text == "max") return max();
  constexpr std::string_view prefix = "weighted:";
  if (text.substr(0, prefix.size()) == prefix) {
    const std::string token(text.substr(prefix.size()));
    char* end = nullptr;
    const double r = std::strtod(token.c_str(), &end);
    if (token.empty() || end != token.c_str() + token.size() || !(r >= 0.0 && r <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "fusion ratio must be a number in [0, 1], got '" + token + "'");
    }
    return weighted(r);
  }
  throw Error(ErrorCode::kInvalidArgument,
              "fusion mode must be weighted:R, min or max, got '" + std::string(text) + "'");
}

std::string FusionMode::label() const {
  switch (kind) {
    case Kind::kMin: return "min";
    case Kind::kMax: return "max";
    case Kind::kWeighted: {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.1f", ratio);
      return buf;
    }
  }
  return "?";
}

namespace {

double confidence_of(double p) { return std::max(p, 1.0 - p); }

}  // namespace

std::vector<ScoreRecord> fuse(std::span<const ScoreRecord> a,
                              std::span<const ScoreRecord> b,
                              const FusionMode& mode) {
  if (mode.kind == FusionMode::Kind::kWeighted && !(mode.ratio >= 0.0 && mode.ratio <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "fusion ratio must be in [0, 1]");
  }
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kMismatch,
                "score files cover different utterance sets (" +
                    std::to_string(a.size()) + " vs " + std::to_string(b.size()) +
                    " trials)");
  }
  std::unordered_map<std::string, const ScoreRecord*> by_id;
  by_id.reserve(b.size());
  for (const auto& r : b) {
    if (!by_id.emplace(r.utterance_id, &r).second) {
      throw Error(ErrorCode::kDuplicate, "duplicate utterance " + r.utterance_id);
    }
  }
  std::vector<ScoreRecord> out;
  out.reserve(a.size());
  for (const auto& ra : a) {
    const auto it = by_id.find(ra.utterance_id);
    if (it == by_id.end()) {
      throw Error(ErrorCode::kMismatch,
                  "utterance " + ra.utterance_id + " missing from second score file");
    }
    const ScoreRecord& rb = *it->second;
    if (ra.key != rb.key) {
      throw Error(ErrorCode::kMismatch,
                  "utterance " + ra.utterance_id + " has different keys in the two files");
    }
    ScoreRecord fused = ra;
    const double sa = ra.score, sb = rb.score;
    switch (mode.kind) {
      case FusionMode::Kind::kWeighted:
        fused.score = mode.ratio * sa + (1.0 - mode.ratio) * sb;
        break;
      case FusionMode::Kind::kMax:
        fused.score = mode.confidence
                          ? (confidence_of(sb) > confidence_of(sa) ? sb : sa)
                          : std::max(sa, sb);
        break;
      case FusionMode::Kind::kMin:
        fused.score = mode.confidence
                          ? (confidence_of(sb) < confidence_of(sa) ? sb : sa)
                          : std::min(sa, sb);
        break;
    }
    out.push_back(std::move(fused));
  }
  return out;
}

namespace {

MetricRow evaluate_row(std::string id, std::span<const ScoreRecord> scores,
                       const AsvOperatingPoint& op, const CostModel& cost) {
  std::vector<double> bonafide, spoof;
  split_by_key(scores, bonafide, spoof);
  MetricRow row;
  row.id = std::move(id);
  row.tdcf = min_tdcf(bonafide, spoof, op, cost).tdcf_norm;
  row.eer = eer(bonafide, spoof).eer;
  row.n_bonafide = bonafide.size();
  row.n_spoof = spoof.size();
  return row;
}

}  // namespace

std::vector<MetricRow> ratio_sweep(std::span<const ScoreRecord> a,
                                   std::span<const ScoreRecord> b,
                                   const AsvOperatingPoint& op,
                                   const CostModel& cost,
                                   std::span<const double> ratios,
                                   bool confidence) {
  std::vector<double> grid(ratios.begin(), ratios.end());
  if (grid.empty()) {
    for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);
  }
  std::vector<FusionMode> modes;
  modes.push_back({FusionMode::Kind::kMin, 0.0, confidence});
  for (double r : grid) modes.push_back(FusionMode::weighted(r));
  modes.push_back({FusionMode::Kind::kMax, 0.0, confidence});

  std::vector<MetricRow> rows;
  rows.reserve(modes.size());
  for (const auto& mode : modes) {
    rows.push_back(evaluate_row(mode.label(), fuse(a, b, mode), op, cost));
  }
  return rows;
}

Breakdown per_attack_breakdown(std::span<const ScoreRecord> scores,
                               const AsvOperatingPoint& op,
                               const CostModel& cost,
                               std::optional<std::vector<std::string>> attacks) {
  std::vector<ScoreRecord> bonafide;
  std::map<std::string, std::vector<ScoreRecord>> spoof_by_attack;
  for (const auto& r : scores) {
    if (r.key == TrialKey::kBonafide) {
      bonafide.push_back(r);
    } else {
      spoof_by_attack[r.attack.id()].push_back(r);
    }
  }
  if (bonafide.empty()) {
    throw Error(ErrorCode::kDegenerateInput, "breakdown needs bonafide trials");
  }

  std::vector<std::string> ids;
  if (attacks) {
    ids = *attacks;
  } else {
    for (const auto& [id, _] : spoof_by_attack) ids.push_back(id);
  }

  Breakdown out;
  for (const auto& id : ids) {
    const auto it = spoof_by_attack.find(id);
    if (it == spoof_by_attack.end() || it->second.empty()) {
      out.warnings.push_back("attack " + id + " has no spoof trials; skipped");
      continue;
    }
    std::vector<ScoreRecord> subset = bonafide;
    subset.insert(subset.end(), it->second.begin(), it->second.end());
    out.rows.push_back(evaluate_row(id, subset, op, cost));
  }
  out.rows.push_back(evaluate_row("ALL", scores, op, cost));
  return out;
}

std::string render_metric_table(std::span<const MetricRow> rows,
                                std::string_view id_header) {
  std::size_t width = id_header.size();
  for (const auto& r : rows) width = std::max(width, r.id.size());
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-*s  %8s  %8s\n", static_cast<int>(width),
                std::string(id_header).c_str(), "t-DCF", "EER(%)");
  out += buf;
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%-*s  %8.4f  %8.3f\n", static_cast<int>(width),
                  r.id.c_str(), r.tdcf, 100.0 * r.eer);
    out += buf;
  }
  return out;
}

std::string render_metric_csv(std::span<const MetricRow> rows) {
  std::string out = "id,tdcf,eer_percent\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%s,%.6f,%.6f\n", r.id.c_str(), r.tdcf,
                  100.0 * r.eer);
    out += buf;
  }
  return out;
}

}  // namespace modspoof
