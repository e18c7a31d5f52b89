// tools/modspoof.cc

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

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "modspoof/error.h"
#include "modspoof/fusion.h"
#include "modspoof/metrics.h"
#include "modspoof/pipeline.h"
#include "modspoof/synth.h"

namespace fs = std::filesystem;
using namespace modspoof;

namespace {

// Flags shared by the subcommands that resolve a PipelineConfig.
struct ConfigFlags {
  std::string config;
  std::string feature;
  std::string norm;
  std::optional<std::size_t> sa_masks;
  std::optional<double> sa_width;
  std::optional<std::uint64_t> seed;
  std::optional<double> offset;

  void add_to(CLI::App* app, bool audio_flags, bool augment_flags) {
    app->add_option("--config", config, "Pipeline config JSON (a resolved config.json works)");
    app->add_option("--seed", seed, "Master seed (else config, else MODSPOOF_SEED, else 0)");
    if (audio_flags) {
      app->add_option("--feature", feature,
                      "logmel | mfcc | global-mod | blocked-mod:RxC | band-mod:low|high");
      app->add_option("--norm", norm, "none | l1 | std");
      app->add_option("--offset", offset, "Seconds skipped before the fixed-length window");
    }
    if (augment_flags) {
      app->add_option("--sa-masks", sa_masks, "Max masks per axis; 0 disables augmentation");
      app->add_option("--sa-width", sa_width, "Max mask width as a fraction of the axis");
    }
  }

  // `fallback` is used when --config is absent.
  PipelineConfig resolve(const std::optional<fs::path>& fallback = std::nullopt) const {
    PipelineConfig cfg;
    bool from_file = false;
    if (!config.empty()) {
      cfg = PipelineConfig::load(config);
      from_file = true;
    } else if (fallback && fs::exists(*fallback)) {
      cfg = PipelineConfig::load(*fallback);
      from_file = true;
    }
    if (seed) {
      cfg.seed = *seed;
    } else if (!from_file) {
      cfg.seed = seed_from_env().value_or(0);
    }
    if (!feature.empty()) cfg.feature = FeatureSpec::parse(feature);
    if (!norm.empty()) cfg.norm = parse_norm_mode(norm);
    if (offset) cfg.offset = *offset;
    if (sa_masks) {
      cfg.augment = *sa_masks > 0;
      if (*sa_masks > 0) cfg.mask.max_masks_per_axis = *sa_masks;
    }
    if (sa_width) cfg.mask.max_width_fraction = *sa_width;
    cfg.resolve();
    cfg.validate();
    return cfg;
  }
};

std::size_t default_jobs() {
  return std::max(1u, std::thread::hardware_concurrency());
}

fs::path sidecar(const fs::path& output) {
  fs::path p = output;
  p += ".config.json";
  return p;
}

struct AsvFlags {
  std::string asv_scores;
  std::string asv_point;
  std::string cost_model;

  void add_to(CLI::App* app) {
    auto* scores = app->add_option("--asv-scores", asv_scores,
                                   "ASV score file with 'target|nontarget|spoof score' lines");
    app->add_option("--asv-point", asv_point, "Fixed ASV error rates Pmiss,Pfa,Pmiss_spoof")
        ->excludes(scores);
    app->add_option("--cost-model", cost_model, "t-DCF cost model JSON");
  }

  AsvOperatingPoint point() const {
    if (!asv_scores.empty()) {
      const AsvRates rates = asv_operating_point(read_asv_scores(asv_scores));
      std::fprintf(stderr, "ASV threshold %.6f: Pmiss %.6f Pfa %.6f Pmiss_spoof %.6f\n",
                   rates.threshold, rates.point.p_miss_asv, rates.point.p_fa_asv,
                   rates.point.p_miss_spoof_asv);
      return rates.point;
    }
    if (asv_point.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "one of --asv-scores or --asv-point is required");
    }
    return AsvOperatingPoint::parse(asv_point);
  }

  CostModel cost(const CostModel& base) const {
    return cost_model.empty() ? base : CostModel::load(cost_model);
  }
};

void emit_rows(const std::vector<MetricRow>& rows, const std::string& id_header,
               const std::string& csv_path) {
  std::cout << render_metric_table(rows, id_header);
  if (!csv_path.empty()) write_file_text(csv_path, render_metric_csv(rows));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spoofed-speech countermeasure toolkit built around global "
               "modulation features of log-Mel spectrograms."};
  app.require_subcommand(1);
  app.fallthrough();
  std::size_t jobs = default_jobs();
  app.add_option("--jobs", jobs, "Worker threads for extraction and scoring")
      ->check(CLI::PositiveNumber);

  // extract
  auto* extract = app.add_subcommand("extract", "Audio manifest -> feature directory");
  ConfigFlags extract_cfg;
  extract_cfg.add_to(extract, true, false);
  std::string manifest, feature_out, normalizer_path;
  extract->add_option("--manifest", manifest, "Lines 'utterance_id wav_path'")->required();
  extract->add_option("--out", feature_out, "Output directory")->required();
  extract->add_option("--normalizer", normalizer_path,
                      "GMN1 statistics from fit-norm (required for --norm std)");

  // fit-norm
  auto* fit_norm = app.add_subcommand("fit-norm", "Fit standardization statistics");
  std::string fit_features, fit_out;
  fit_norm->add_option("--features", fit_features, "Directory written by extract --norm none")
      ->required();
  fit_norm->add_option("--out", fit_out, "Output GMN1 file")->required();

  // train
  auto* train_cmd = app.add_subcommand("train", "Train the classifier");
  ConfigFlags train_cfg;
  train_cfg.add_to(train_cmd, false, true);
  std::string train_features, train_protocol, model_out, history_out;
  train_cmd->add_option("--features", train_features, "Feature directory")->required();
  train_cmd->add_option("--protocol", train_protocol, "CM protocol")->required();
  train_cmd->add_option("--model", model_out, "Output model file")->required();
  train_cmd->add_option("--history", history_out, "Per-epoch CSV (default <model>.history.csv)");

  // score
  auto* score = app.add_subcommand("score", "Score features with a trained model");
  std::string score_model, score_dir, score_protocol, score_out;
  score->add_option("--model", score_model, "Model file")->required();
  score->add_option("--features", score_dir, "Feature directory")->required();
  score->add_option("--protocol", score_protocol, "CM protocol")->required();
  score->add_option("--out", score_out, "Output score file")->required();

  // fuse
  auto* fuse_cmd = app.add_subcommand("fuse", "Combine two score files");
  std::string fuse_a, fuse_b, fuse_mode, fuse_out, fuse_csv;
  bool fuse_sweep = false, fuse_confidence = false;
  AsvFlags fuse_asv;
  fuse_cmd->add_option("--a", fuse_a, "Baseline system scores")->required();
  fuse_cmd->add_option("--b", fuse_b, "Global-modulation system scores")->required();
  auto* mode_opt = fuse_cmd->add_option("--mode", fuse_mode, "weighted:R | min | max");
  auto* sweep_opt = fuse_cmd->add_flag("--sweep", fuse_sweep,
                                       "Report min, weighted 0.0..1.0 and max");
  mode_opt->excludes(sweep_opt);
  fuse_cmd->add_flag("--confidence", fuse_confidence,
                     "Min/max pick the system by max(p, 1-p)");
  fuse_cmd->add_option("--out", fuse_out, "Fused score file (with --mode)");
  fuse_cmd->add_option("--csv", fuse_csv, "Sweep CSV (with --sweep)");
  fuse_asv.add_to(fuse_cmd);

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "EER and min t-DCF of a score file");
  std::string eval_scores, eval_csv;
  bool eval_breakdown = false;
  AsvFlags eval_asv;
  evaluate->add_option("--scores", eval_scores, "CM score file")->required();
  evaluate->add_flag("--breakdown", eval_breakdown, "One row per attack plus ALL");
  evaluate->add_option("--csv", eval_csv, "Also write the table as CSV");
  eval_asv.add_to(evaluate);

  // synthbench
  auto* synth = app.add_subcommand("synthbench",
                                   "Synthetic end-to-end comparison of feature kinds");
  ConfigFlags synth_cfg;
  synth_cfg.add_to(synth, true, true);
  std::size_t synth_clips = 600;
  std::vector<std::string> synth_features{"global-mod", "blocked-mod:2x2"};
  std::string synth_out, synth_asv = "0.05,0.05,0.5";
  synth->add_option("--clips", synth_clips, "Clips per class")->check(CLI::Range(2, 1000000));
  synth->add_option("--features", synth_features, "Feature kinds to compare");
  synth->add_option("--asv-point", synth_asv, "Fixed ASV error rates Pmiss,Pfa,Pmiss_spoof");
  synth->add_option("--out", synth_out, "Write clips, protocol, scores and report here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (extract->parsed()) {
      const PipelineConfig cfg = extract_cfg.resolve();
      Normalizer norm;
      if (cfg.norm == NormMode::kStandardize) {
        if (normalizer_path.empty()) {
          throw Error(ErrorCode::kInvalidArgument,
                      "--norm std needs --normalizer (see fit-norm)");
        }
        norm = Normalizer::load(normalizer_path);
      } else {
        norm = Normalizer::fit({}, cfg.norm);
      }
      const auto entries = read_audio_manifest(manifest);
      const ExtractReport report = extract_to_dir(entries, cfg, norm, feature_out, jobs);
      for (const auto& f : report.failures) {
        std::fprintf(stderr, "error: %s: %s\n", f.utterance_id.c_str(), f.message.c_str());
      }
      std::fprintf(stderr, "extracted %zu of %zu utterances into %s\n", report.written,
                   entries.size(), feature_out.c_str());
      return report.failures.empty() ? 0 : 1;
    }

    if (fit_norm->parsed()) {
      std::vector<FeatureMatrix> feats;
      for (auto& nf : load_feature_dir(fit_features)) feats.push_back(std::move(nf.feature));
      Normalizer::fit(feats, NormMode::kStandardize).save(fit_out);
      std::fprintf(stderr, "fitted statistics on %zu features\n", feats.size());
      return 0;
    }

    if (train_cmd->parsed()) {
      const PipelineConfig cfg = train_cfg.resolve(fs::path(train_features) / "config.json");
      const auto features = load_feature_dir(train_features);
      const auto protocol = read_cm_protocol(train_protocol);
      const auto labeled = label_features(features, protocol);
      const TrainResult result = train(labeled, cfg.train, make_augment_hook(cfg));
      save_model(result.model, model_out);
      const fs::path history =
          history_out.empty() ? fs::path(model_out + ".history.csv") : fs::path(history_out);
      write_file_text(history, render_history_csv(result.history));
      cfg.save(sidecar(model_out));
      std::fprintf(stderr, "trained on %zu utterances, best epoch %zu\n", labeled.size(),
                   result.best_epoch);
      return 0;
    }

    if (score->parsed()) {
      const MlpModel model = load_model(score_model);
      const auto features = load_feature_dir(score_dir);
      const auto protocol = read_cm_protocol(score_protocol);
      write_scores(score_features(model, features, protocol, jobs), score_out);
      return 0;
    }

    if (fuse_cmd->parsed()) {
      const auto a = read_scores(fuse_a);
      const auto b = read_scores(fuse_b);
      if (fuse_sweep) {
        const auto rows = ratio_sweep(a, b, fuse_asv.point(), fuse_asv.cost(CostModel{}), {},
                                      fuse_confidence);
        emit_rows(rows, "ratio", fuse_csv);
        return 0;
      }
      if (fuse_mode.empty() || fuse_out.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "fuse needs --sweep, or --mode and --out");
      }
      FusionMode mode = FusionMode::parse(fuse_mode);
      mode.confidence = fuse_confidence;
      write_scores(fuse(a, b, mode), fuse_out);
      return 0;
    }

    if (evaluate->parsed()) {
      const auto scores = read_scores(eval_scores);
      const AsvOperatingPoint op = eval_asv.point();
      const CostModel cost = eval_asv.cost(CostModel{});
      if (eval_breakdown) {
        const Breakdown bd = per_attack_breakdown(scores, op, cost);
        for (const auto& w : bd.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
        emit_rows(bd.rows, "attack", eval_csv);
      } else {
        std::vector<double> bonafide, spoof;
        split_by_key(scores, bonafide, spoof);
        MetricRow row{"ALL", min_tdcf(bonafide, spoof, op, cost).tdcf_norm,
                      eer(bonafide, spoof).eer, bonafide.size(), spoof.size()};
        emit_rows({row}, "system", eval_csv);
      }
      return 0;
    }

    if (synth->parsed()) {
      PipelineConfig cfg = synth_cfg.resolve();
      if (synth_cfg.norm.empty() && synth_cfg.config.empty()) cfg.norm = NormMode::kStandardize;
      SynthConfig sc;
      sc.clips_per_class = synth_clips;
      sc.duration = cfg.duration;
      sc.sample_rate = cfg.sample_rate;
      sc.hop_length = cfg.stft.hop_length;
      sc.seed = cfg.seed;
      std::vector<FeatureSpec> specs;
      for (const auto& f : synth_features) specs.push_back(FeatureSpec::parse(f));
      std::optional<fs::path> out;
      if (!synth_out.empty()) out = synth_out;
      const SynthReport report =
          run_synthbench(sc, cfg, specs, AsvOperatingPoint::parse(synth_asv), jobs, out);
      std::cout << render_synth_report(report);
      return 0;
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error [%s]: %s\n", error_code_name(e.code()), e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
