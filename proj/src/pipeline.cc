// src/pipeline.cc

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

#include "modspoof/pipeline.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>

#include <json.hpp>

#include "modspoof/dct.h"
#include "modspoof/error.h"

namespace modspoof {

using nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// FeatureSpec

FeatureSpec FeatureSpec::parse(std::string_view token) {
  FeatureSpec spec;
  auto bad = [&]() {
    return Error(ErrorCode::kInvalidArgument,
                 "unknown feature '" + std::string(token) +
                     "' (expected logmel, mfcc, global-mod, blocked-mod:RxC, "
                     "band-mod:low|high)");
  };
  if (token == "logmel") {
    spec.kind = FeatureKind::kLogMel;
  } else if (token == "mfcc") {
    spec.kind = FeatureKind::kMfcc;
  } else if (token == "global-mod") {
    spec.kind = FeatureKind::kGlobalMod;
  } else if (token.starts_with("blocked-mod")) {
    spec.kind = FeatureKind::kBlockedMod;
    std::string_view rest = token.substr(11);
    if (!rest.empty()) {
      if (rest[0] != ':') throw bad();
      rest.remove_prefix(1);
      const auto x = rest.find('x');
      if (x == std::string_view::npos) throw bad();
      const std::string r(rest.substr(0, x)), c(rest.substr(x + 1));
      char* end_r = nullptr;
      char* end_c = nullptr;
      const long gr = std::strtol(r.c_str(), &end_r, 10);
      const long gc = std::strtol(c.c_str(), &end_c, 10);
      if (r.empty() || c.empty() || *end_r != '\0' || *end_c != '\0' || gr < 1 || gc < 1) {
        throw bad();
      }
      spec.grid = {static_cast<std::size_t>(gr), static_cast<std::size_t>(gc)};
    }
  } else if (token == "band-mod:low") {
    spec.kind = FeatureKind::kBandMod;
    spec.band = Band::kLowHalf;
  } else if (token == "band-mod:high" || token == "band-mod") {
    spec.kind = FeatureKind::kBandMod;
    spec.band = Band::kHighHalf;
  } else {
    throw bad();
  }
  return spec;
}

std::string FeatureSpec::token() const {
  switch (kind) {
    case FeatureKind::kLogMel: return "logmel";
    case FeatureKind::kMfcc: return "mfcc";
    case FeatureKind::kGlobalMod: return "global-mod";
    case FeatureKind::kBlockedMod:
      return "blocked-mod:" + std::to_string(grid.rows) + "x" + std::to_string(grid.cols);
    case FeatureKind::kBandMod:
      return band == Band::kLowHalf ? "band-mod:low" : "band-mod:high";
    default:
      throw Error(ErrorCode::kInvalidArgument, "feature kind cannot be extracted");
  }
}

// ---------------------------------------------------------------------------
// PipelineConfig

void PipelineConfig::resolve() {
  mel.sample_rate = sample_rate;
  train.seed = seed;
  mask.seed = seed;
}

void PipelineConfig::validate() const {
  if (sample_rate <= 0) throw Error(ErrorCode::kInvalidArgument, "sample_rate must be positive");
  if (!(duration > 0.0)) throw Error(ErrorCode::kInvalidArgument, "duration must be positive");
  if (offset < 0.0) throw Error(ErrorCode::kInvalidArgument, "offset must be >= 0");
  if (mel.sample_rate != sample_rate) {
    throw Error(ErrorCode::kInvalidArgument, "mel sample rate differs from pipeline rate");
  }
  stft.validate();
  mel.validate();
  mask.validate();
  train.validate();
  cost.validate();
  (void)feature.token();
  if (feature.kind == FeatureKind::kMfcc &&
      (feature.n_mfcc == 0 || feature.n_mfcc > mel.n_mels)) {
    throw Error(ErrorCode::kInvalidArgument, "n_mfcc must be in [1, n_mels]");
  }
}

namespace {

std::string window_name(WindowType w) { return w == WindowType::kHann ? "hann" : "hamming"; }

WindowType parse_window(const std::string& s) {
  if (s == "hann") return WindowType::kHann;
  if (s == "hamming") return WindowType::kHamming;
  throw Error(ErrorCode::kInvalidArgument, "unknown window '" + s + "'");
}

// Copies j[key] into dst when present; rejects keys not in `allowed`.
void check_keys(const nlohmann::json& j, std::initializer_list<const char*> allowed,
                const std::string& where) {
  if (!j.is_object()) throw Error(ErrorCode::kParse, where + " must be a JSON object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : j.items()) {
    if (!ok.count(key)) {
      throw Error(ErrorCode::kParse, "unknown config key '" + where + "." + key + "'");
    }
  }
}

template <typename T>
void get_if(const nlohmann::json& j, const char* key, T& dst) {
  if (j.contains(key)) dst = j.at(key).get<T>();
}

}  // namespace

std::string PipelineConfig::to_json() const {
  ordered_json j;
  j["sample_rate"] = sample_rate;
  j["duration"] = duration;
  j["offset"] = offset;
  j["seed"] = seed;
  j["stft"] = {{"n_fft", stft.n_fft},
               {"win_length", stft.win_length},
               {"hop_length", stft.hop_length},
               {"window", window_name(stft.window)},
               {"center", stft.center}};
  j["mel"] = {{"n_mels", mel.n_mels}, {"f_min", mel.f_min}, {"f_max", mel.f_max}};
  j["log_floor"] = kLogFloor;
  j["feature"] = feature.token();
  j["n_mfcc"] = feature.n_mfcc;
  j["norm"] = std::string(norm_mode_name(norm));
  j["augment"] = {{"enabled", augment},
                  {"max_masks_per_axis", mask.max_masks_per_axis},
                  {"max_width_fraction", mask.max_width_fraction}};
  j["train"] = {{"learning_rate", train.learning_rate},
                {"epochs", train.epochs},
                {"batch_size", train.batch_size},
                {"weight_decay", train.weight_decay},
                {"hidden", train.hidden},
                {"validation_fraction", train.validation_fraction},
                {"reduction", std::string(reduction_kind_name(train.reduction.kind))},
                {"k_rows", train.reduction.k_rows},
                {"k_cols", train.reduction.k_cols}};
  j["cost_model"] = ordered_json::parse(cost.to_json());
  return j.dump(2) + "\n";
}

PipelineConfig PipelineConfig::from_json(std::string_view text) {
  PipelineConfig cfg;
  try {
    const auto j = nlohmann::json::parse(text);
    check_keys(j,
               {"sample_rate", "duration", "offset", "seed", "stft", "mel", "log_floor",
                "feature", "n_mfcc", "norm", "augment", "train", "cost_model"},
               "config");
    get_if(j, "sample_rate", cfg.sample_rate);
    get_if(j, "duration", cfg.duration);
    get_if(j, "offset", cfg.offset);
    get_if(j, "seed", cfg.seed);
    if (j.contains("log_floor") && j.at("log_floor").get<double>() != kLogFloor) {
      throw Error(ErrorCode::kInvalidArgument, "log_floor is fixed at 1e-10");
    }
    if (j.contains("stft")) {
      const auto& s = j.at("stft");
      check_keys(s, {"n_fft", "win_length", "hop_length", "window", "center"}, "stft");
      get_if(s, "n_fft", cfg.stft.n_fft);
      get_if(s, "win_length", cfg.stft.win_length);
      get_if(s, "hop_length", cfg.stft.hop_length);
      get_if(s, "center", cfg.stft.center);
      if (s.contains("window")) cfg.stft.window = parse_window(s.at("window").get<std::string>());
    }
    if (j.contains("mel")) {
      const auto& m = j.at("mel");
      check_keys(m, {"n_mels", "f_min", "f_max"}, "mel");
      get_if(m, "n_mels", cfg.mel.n_mels);
      get_if(m, "f_min", cfg.mel.f_min);
      get_if(m, "f_max", cfg.mel.f_max);
    }
    if (j.contains("feature")) cfg.feature = FeatureSpec::parse(j.at("feature").get<std::string>());
    get_if(j, "n_mfcc", cfg.feature.n_mfcc);
    if (j.contains("norm")) cfg.norm = parse_norm_mode(j.at("norm").get<std::string>());
    if (j.contains("augment")) {
      const auto& a = j.at("augment");
      check_keys(a, {"enabled", "max_masks_per_axis", "max_width_fraction"}, "augment");
      get_if(a, "enabled", cfg.augment);
      get_if(a, "max_masks_per_axis", cfg.mask.max_masks_per_axis);
      get_if(a, "max_width_fraction", cfg.mask.max_width_fraction);
    }
    if (j.contains("train")) {
      const auto& t = j.at("train");
      check_keys(t,
                 {"learning_rate", "epochs", "batch_size", "weight_decay", "hidden",
                  "validation_fraction", "reduction", "k_rows", "k_cols"},
                 "train");
      get_if(t, "learning_rate", cfg.train.learning_rate);
      get_if(t, "epochs", cfg.train.epochs);
      get_if(t, "batch_size", cfg.train.batch_size);
      get_if(t, "weight_decay", cfg.train.weight_decay);
      get_if(t, "hidden", cfg.train.hidden);
      get_if(t, "validation_fraction", cfg.train.validation_fraction);
      if (t.contains("reduction")) {
        cfg.train.reduction.kind = parse_reduction_kind(t.at("reduction").get<std::string>());
      }
      get_if(t, "k_rows", cfg.train.reduction.k_rows);
      get_if(t, "k_cols", cfg.train.reduction.k_cols);
    }
    if (j.contains("cost_model")) cfg.cost = CostModel::from_json(j.at("cost_model").dump());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("config JSON: ") + e.what());
  }
  cfg.resolve();
  cfg.validate();
  return cfg;
}

PipelineConfig PipelineConfig::load(const std::filesystem::path& path) {
  try {
    return from_json(read_file_text(path));
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void PipelineConfig::save(const std::filesystem::path& path) const {
  write_file_text(path, to_json());
}

// ---------------------------------------------------------------------------

FeatureMatrix compute_feature(const AudioClip& clip, const PipelineConfig& cfg) {
  const FeatureMatrix logmel = compute_log_mel(clip, cfg.stft, cfg.mel);
  switch (cfg.feature.kind) {
    case FeatureKind::kLogMel: return logmel;
    case FeatureKind::kMfcc: return mfcc(logmel, cfg.feature.n_mfcc);
    case FeatureKind::kGlobalMod: return dct2_forward(logmel);
    case FeatureKind::kBlockedMod: return blocked_modulation(logmel, cfg.feature.grid);
    case FeatureKind::kBandMod: return band_restricted_modulation(logmel, cfg.feature.band);
    default:
      throw Error(ErrorCode::kInvalidArgument, "feature kind cannot be extracted");
  }
}

FeatureMatrix extract_file(const std::filesystem::path& wav,
                           const PipelineConfig& cfg, const Normalizer& norm) {
  const AudioClip clip =
      fix_duration(read_wav(wav, cfg.sample_rate), cfg.duration, cfg.offset);
  return norm.apply(compute_feature(clip, cfg));
}

AugmentHook make_augment_hook(const PipelineConfig& cfg) {
  if (!cfg.augment) return {};
  const MaskSpec spec = cfg.mask;
  switch (cfg.feature.kind) {
    case FeatureKind::kLogMel:
      return [spec](const FeatureMatrix& m, Rng& rng) { return spec_mask(m, spec, rng); };
    case FeatureKind::kGlobalMod:
    case FeatureKind::kBlockedMod:
    case FeatureKind::kBandMod:
      return [spec](const FeatureMatrix& m, Rng& rng) { return dct_zero_mask(m, spec, rng); };
    default:
      return {};
  }
}

std::vector<ManifestEntry> parse_audio_manifest(std::string_view text,
                                                const std::filesystem::path& base_dir) {
  std::vector<ManifestEntry> entries;
  std::set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string utt, path, extra;
    if (!(fields >> utt)) continue;
    if (!(fields >> path) || (fields >> extra)) {
      throw Error(ErrorCode::kParse, "manifest line " + std::to_string(line_no) +
                                         ": expected 'utterance_id path'");
    }
    if (!seen.insert(utt).second) {
      throw Error(ErrorCode::kDuplicate, "manifest line " + std::to_string(line_no) +
                                             ": duplicate utterance " + utt);
    }
    std::filesystem::path p(path);
    if (p.is_relative()) p = base_dir / p;
    entries.push_back({utt, p});
  }
  return entries;
}

std::vector<ManifestEntry> read_audio_manifest(const std::filesystem::path& path) {
  return parse_audio_manifest(read_file_text(path), path.parent_path());
}

ExtractReport extract_to_dir(std::span<const ManifestEntry> entries,
                             const PipelineConfig& cfg, const Normalizer& norm,
                             const std::filesystem::path& out_dir,
                             std::size_t jobs) {
  cfg.validate();
  if (cfg.norm != norm.mode()) {
    throw Error(ErrorCode::kInvalidArgument,
                "config asks for '" + std::string(norm_mode_name(cfg.norm)) +
                    "' normalization but the supplied normalizer is '" +
                    std::string(norm_mode_name(norm.mode())) + "'");
  }
  std::filesystem::create_directories(out_dir);
  jobs = std::max<std::size_t>(1, jobs);

  // Workers compute a chunk; the calling thread writes it in manifest order.
  const std::size_t chunk = jobs * 8;
  ExtractReport report;
  ordered_json listing = ordered_json::array();
  std::vector<std::optional<FeatureMatrix>> results;
  std::vector<std::string> errors;
  for (std::size_t base = 0; base < entries.size(); base += chunk) {
    const std::size_t n = std::min(chunk, entries.size() - base);
    results.assign(n, std::nullopt);
    errors.assign(n, std::string());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          results[i] = extract_file(entries[base + i].path, cfg, norm);
        } catch (const std::exception& e) {
          errors[i] = e.what();
        }
      }
    };
    if (jobs == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (std::size_t t = 0; t < std::min(jobs, n); ++t) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    for (std::size_t i = 0; i < n; ++i) {
      const auto& entry = entries[base + i];
      if (!results[i]) {
        report.failures.push_back({entry.utterance_id, errors[i]});
        continue;
      }
      const std::string file = entry.utterance_id + ".gmf";
      write_feature(*results[i], out_dir / file);
      listing.push_back({{"utterance_id", entry.utterance_id}, {"file", file}});
      ++report.written;
    }
  }

  ordered_json manifest;
  manifest["feature"] = cfg.feature.token();
  manifest["norm"] = std::string(norm_mode_name(cfg.norm));
  manifest["config"] = ordered_json::parse(cfg.to_json());
  manifest["features"] = std::move(listing);
  write_file_text(out_dir / "features.json", manifest.dump(2) + "\n");
  cfg.save(out_dir / "config.json");
  return report;
}

std::vector<NamedFeature> load_feature_dir(const std::filesystem::path& dir) {
  const auto manifest_path = dir / "features.json";
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(read_file_text(manifest_path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, manifest_path.string() + ": " + e.what());
  }
  std::vector<NamedFeature> out;
  for (const auto& item : manifest.at("features")) {
    out.push_back({item.at("utterance_id").get<std::string>(),
                   read_feature(dir / item.at("file").get<std::string>())});
  }
  return out;
}

std::vector<LabeledFeature> label_features(std::span<const NamedFeature> features,
                                           std::span<const ProtocolEntry> protocol) {
  std::unordered_map<std::string, TrialKey> keys;
  for (const auto& e : protocol) keys.emplace(e.utterance_id, e.key);
  std::vector<LabeledFeature> out;
  out.reserve(features.size());
  for (const auto& f : features) {
    const auto it = keys.find(f.utterance_id);
    if (it == keys.end()) {
      throw Error(ErrorCode::kMismatch,
                  "utterance " + f.utterance_id + " has no protocol entry");
    }
    out.push_back({f.feature,
                   it->second == TrialKey::kBonafide ? Label::kGenuine : Label::kSpoof});
  }
  return out;
}

std::vector<ScoreRecord> score_features(const MlpModel& model,
                                        std::span<const NamedFeature> features,
                                        std::span<const ProtocolEntry> protocol,
                                        std::size_t jobs) {
  std::unordered_map<std::string, const ProtocolEntry*> by_id;
  for (const auto& e : protocol) by_id.emplace(e.utterance_id, &e);
  std::vector<FeatureMatrix> matrices;
  matrices.reserve(features.size());
  std::vector<ScoreRecord> out(features.size());
  for (std::size_t i = 0; i < features.size(); ++i) {
    const auto it = by_id.find(features[i].utterance_id);
    if (it == by_id.end()) {
      throw Error(ErrorCode::kMismatch,
                  "utterance " + features[i].utterance_id + " has no protocol entry");
    }
    out[i].utterance_id = features[i].utterance_id;
    out[i].attack = it->second->attack;
    out[i].key = it->second->key;
    matrices.push_back(features[i].feature);
  }
  const auto scores = predict_batch(model, matrices, jobs);
  for (std::size_t i = 0; i < out.size(); ++i) out[i].score = scores[i];
  return out;
}

std::string render_history_csv(std::span<const EpochStats> history) {
  std::string out = "epoch,train_loss,val_loss,val_accuracy\n";
  char buf[128];
  for (const auto& h : history) {
    std::snprintf(buf, sizeof(buf), "%zu,%.9g,%.9g,%.6f\n", h.epoch, h.train_loss,
                  h.val_loss, h.val_accuracy);
    out += buf;
  }
  return out;
}

std::optional<std::uint64_t> seed_from_env() {
  const char* v = std::getenv("MODSPOOF_SEED");
  if (v == nullptr || *v == '\0') return std::nullopt;
  char* end = nullptr;
  const unsigned long long seed = std::strtoull(v, &end, 10);
  if (*end != '\0') {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("MODSPOOF_SEED is not a number: '") + v + "'");
  }
  return seed;
}

}  // namespace modspoof
