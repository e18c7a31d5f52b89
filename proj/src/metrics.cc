// src/metrics.cc

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

#include "modspoof/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "modspoof/error.h"

namespace modspoof {

namespace {

// DET sweep in integer counts: at threshold t, `miss` bonafide trials score
// below t and `fa` spoof trials score at or above t.
struct CountPoint {
  double threshold;
  std::int64_t miss;
  std::int64_t fa;
};

std::vector<CountPoint> count_sweep(std::span<const double> bonafide,
                                    std::span<const double> spoof) {
  if (bonafide.empty() || spoof.empty()) {
    throw Error(ErrorCode::kDegenerateInput,
                "score set needs at least one bonafide and one spoof trial (got " +
                    std::to_string(bonafide.size()) + " bonafide, " +
                    std::to_string(spoof.size()) + " spoof)");
  }
  std::vector<double> b(bonafide.begin(), bonafide.end());
  std::vector<double> s(spoof.begin(), spoof.end());
  for (double v : b) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kNonFinite, "non-finite score");
  }
  for (double v : s) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kNonFinite, "non-finite score");
  }
  std::sort(b.begin(), b.end());
  std::sort(s.begin(), s.end());

  std::vector<CountPoint> points;
  points.reserve(b.size() + s.size() + 1);
  const auto n_spoof = static_cast<std::int64_t>(s.size());
  std::size_t ib = 0, is = 0;
  while (ib < b.size() || is < s.size()) {
    double t;
    if (is == s.size() || (ib < b.size() && b[ib] <= s[is])) {
      t = b[ib];
    } else {
      t = s[is];
    }
    // Counts strictly below t.
    points.push_back({t, static_cast<std::int64_t>(ib),
                      n_spoof - static_cast<std::int64_t>(is)});
    while (ib < b.size() && b[ib] == t) ++ib;
    while (is < s.size() && s[is] == t) ++is;
  }
  points.push_back({std::numeric_limits<double>::infinity(),
                    static_cast<std::int64_t>(b.size()), 0});
  return points;
}

}  // namespace

void split_by_key(std::span<const ScoreRecord> scores,
                  std::vector<double>& bonafide, std::vector<double>& spoof) {
  bonafide.clear();
  spoof.clear();
  for (const auto& r : scores) {
    (r.key == TrialKey::kBonafide ? bonafide : spoof).push_back(r.score);
  }
}

std::vector<DetPoint> det_points(std::span<const double> bonafide,
                                 std::span<const double> spoof) {
  const auto counts = count_sweep(bonafide, spoof);
  const double nb = static_cast<double>(bonafide.size());
  const double ns = static_cast<double>(spoof.size());
  std::vector<DetPoint> out;
  out.reserve(counts.size());
  for (const auto& c : counts) {
    out.push_back({c.threshold, static_cast<double>(c.miss) / nb,
                   static_cast<double>(c.fa) / ns});
  }
  return out;
}

std::vector<DetPoint> det_points(std::span<const ScoreRecord> scores) {
  std::vector<double> b, s;
  split_by_key(scores, b, s);
  return det_points(b, s);
}

EerResult eer(std::span<const double> bonafide, std::span<const double> spoof) {
  const auto counts = count_sweep(bonafide, spoof);
  const auto nb = static_cast<std::int64_t>(bonafide.size());
  const auto ns = static_cast<std::int64_t>(spoof.size());
  // |miss/nb - fa/ns| compared as |miss*ns - fa*nb|.
  std::size_t best = 0;
  std::int64_t best_gap = std::numeric_limits<std::int64_t>::max();
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const std::int64_t gap = std::llabs(counts[i].miss * ns - counts[i].fa * nb);
    if (gap < best_gap) {
      best_gap = gap;
      best = i;
    }
  }
  const double p_miss = static_cast<double>(counts[best].miss) / static_cast<double>(nb);
  const double p_fa = static_cast<double>(counts[best].fa) / static_cast<double>(ns);
  return {(p_miss + p_fa) / 2.0, counts[best].threshold};
}

EerResult eer(std::span<const ScoreRecord> scores) {
  std::vector<double> b, s;
  split_by_key(scores, b, s);
  return eer(b, s);
}

// ---------------------------------------------------------------------------

void CostModel::validate() const {
  for (double p : {p_spoof, p_target, p_nontarget}) {
    if (!(p > 0.0 && p < 1.0)) {
      throw Error(ErrorCode::kCostModel, "cost model priors must lie in (0, 1)");
    }
  }
  if (std::abs(p_spoof + p_target + p_nontarget - 1.0) > 1e-9) {
    throw Error(ErrorCode::kCostModel, "cost model priors must sum to 1");
  }
  for (double c : {c_miss_asv, c_fa_asv, c_miss_cm, c_fa_cm}) {
    if (!(c > 0.0) || !std::isfinite(c)) {
      throw Error(ErrorCode::kCostModel, "cost model costs must be positive");
    }
  }
}

std::string CostModel::to_json() const {
  nlohmann::ordered_json j;
  j["p_spoof"] = p_spoof;
  j["p_target"] = p_target;
  j["p_nontarget"] = p_nontarget;
  j["c_miss_asv"] = c_miss_asv;
  j["c_fa_asv"] = c_fa_asv;
  j["c_miss_cm"] = c_miss_cm;
  j["c_fa_cm"] = c_fa_cm;
  return j.dump(2);
}

CostModel CostModel::from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("cost model JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::kParse, "cost model JSON must be an object");
  CostModel c;
  const std::pair<const char*, double*> fields[] = {
      {"p_spoof", &c.p_spoof},       {"p_target", &c.p_target},
      {"p_nontarget", &c.p_nontarget}, {"c_miss_asv", &c.c_miss_asv},
      {"c_fa_asv", &c.c_fa_asv},     {"c_miss_cm", &c.c_miss_cm},
      {"c_fa_cm", &c.c_fa_cm},
  };
  for (const auto& [name, dst] : fields) {
    if (!j.contains(name)) {
      throw Error(ErrorCode::kParse, std::string("cost model is missing '") + name + "'");
    }
    if (!j[name].is_number()) {
      throw Error(ErrorCode::kParse, std::string("cost model field '") + name +
                                         "' must be a number");
    }
    *dst = j[name].get<double>();
  }
  c.validate();
  return c;
}

CostModel CostModel::load(const std::filesystem::path& path) {
  return from_json(read_file_text(path));
}

void AsvOperatingPoint::validate() const {
  for (double p : {p_miss_asv, p_fa_asv, p_miss_spoof_asv}) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "ASV rates must lie in [0, 1]");
    }
  }
}

AsvOperatingPoint AsvOperatingPoint::parse(std::string_view text) {
  AsvOperatingPoint op;
  double* dst[] = {&op.p_miss_asv, &op.p_fa_asv, &op.p_miss_spoof_asv};
  std::size_t pos = 0;
  for (int i = 0; i < 3; ++i) {
    const std::size_t comma = text.find(',', pos);
    if ((i < 2) != (comma != std::string_view::npos)) {
      throw Error(ErrorCode::kParse,
                  "ASV operating point must be 'Pmiss,Pfa,Pmiss_spoof'");
    }
    const std::string token(text.substr(pos, comma == std::string_view::npos
                                                 ? std::string_view::npos
                                                 : comma - pos));
    char* end = nullptr;
    *dst[i] = std::strtod(token.c_str(), &end);
    if (token.empty() || end != token.c_str() + token.size()) {
      throw Error(ErrorCode::kParse, "bad ASV rate '" + token + "'");
    }
    pos = comma + 1;
  }
  op.validate();
  return op;
}

std::vector<AsvTrial> parse_asv_scores(std::string_view text) {
  std::vector<AsvTrial> trials;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string key, score, extra;
    if (!(fields >> key)) continue;
    if (!(fields >> score) || (fields >> extra)) {
      throw Error(ErrorCode::kParse,
                  "ASV score line " + std::to_string(line_no) + ": expected 'key score'");
    }
    AsvTrial t{};
    if (key == "target") {
      t.key = AsvKey::kTarget;
    } else if (key == "nontarget") {
      t.key = AsvKey::kNontarget;
    } else if (key == "spoof") {
      t.key = AsvKey::kSpoof;
    } else {
      throw Error(ErrorCode::kParse, "ASV score line " + std::to_string(line_no) +
                                         ": unknown key '" + key + "'");
    }
    char* end = nullptr;
    t.score = std::strtod(score.c_str(), &end);
    if (end != score.c_str() + score.size() || !std::isfinite(t.score)) {
      throw Error(ErrorCode::kParse, "ASV score line " + std::to_string(line_no) +
                                         ": bad score '" + score + "'");
    }
    trials.push_back(t);
  }
  return trials;
}

std::vector<AsvTrial> read_asv_scores(const std::filesystem::path& path) {
  return parse_asv_scores(read_file_text(path));
}

AsvRates asv_operating_point(std::span<const AsvTrial> trials) {
  std::vector<double> tar, non, spoof;
  for (const auto& t : trials) {
    switch (t.key) {
      case AsvKey::kTarget: tar.push_back(t.score); break;
      case AsvKey::kNontarget: non.push_back(t.score); break;
      case AsvKey::kSpoof: spoof.push_back(t.score); break;
    }
  }
  if (tar.empty() || non.empty()) {
    throw Error(ErrorCode::kDegenerateInput,
                "ASV scores need both target and nontarget trials");
  }
  if (spoof.empty()) {
    throw Error(ErrorCode::kDegenerateInput, "ASV scores contain no spoof trials");
  }
  const double t = eer(tar, non).threshold;
  auto frac = [](const std::vector<double>& v, auto pred) {
    return static_cast<double>(std::count_if(v.begin(), v.end(), pred)) /
           static_cast<double>(v.size());
  };
  AsvRates rates;
  rates.threshold = t;
  rates.point.p_miss_asv = frac(tar, [t](double s) { return s < t; });
  rates.point.p_fa_asv = frac(non, [t](double s) { return s >= t; });
  rates.point.p_miss_spoof_asv = frac(spoof, [t](double s) { return s < t; });
  return rates;
}

TdcfCoefficients tdcf_coefficients(const AsvOperatingPoint& op,
                                   const CostModel& cost) {
  return {
      cost.p_target * (cost.c_miss_cm - cost.c_miss_asv * op.p_miss_asv) -
          cost.p_nontarget * cost.c_fa_asv * op.p_fa_asv,
      cost.c_fa_cm * cost.p_spoof * (1.0 - op.p_miss_spoof_asv),
  };
}

TdcfResult min_tdcf(std::span<const double> bonafide,
                    std::span<const double> spoof, const AsvOperatingPoint& op,
                    const CostModel& cost) {
  cost.validate();
  op.validate();
  const auto [c1, c2] = tdcf_coefficients(op, cost);
  if (c1 <= 0.0 || c2 <= 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "t-DCF coefficients must be positive (C1=%g, C2=%g); the ASV "
                  "system is worse than chance at its operating point",
                  c1, c2);
    throw Error(ErrorCode::kCostModel, buf);
  }
  const double norm = std::min(c1, c2);
  const auto points = det_points(bonafide, spoof);
  TdcfResult best{std::numeric_limits<double>::infinity(), 0.0};
  for (const auto& p : points) {
    const double v = (c1 * p.p_miss + c2 * p.p_fa) / norm;
    if (v < best.tdcf_norm) best = {v, p.threshold};
  }
  return best;
}

TdcfResult min_tdcf(std::span<const ScoreRecord> scores,
                    const AsvOperatingPoint& op, const CostModel& cost) {
  std::vector<double> b, s;
  split_by_key(scores, b, s);
  return min_tdcf(b, s, op, cost);
}

}  // namespace modspoof
