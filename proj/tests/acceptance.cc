// tests/acceptance.cc

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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <thread>

#include "modspoof/audio_io.h"
#include "modspoof/dct.h"
#include "modspoof/fusion.h"
#include "modspoof/metrics.h"
#include "modspoof/mlp.h"
#include "modspoof/pipeline.h"
#include "modspoof/synth.h"
#include "oracles.h"

using namespace modspoof;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int g_failures = 0;

void run(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0.0 && secs > budget_s) {
    o.pass = false;
    o.detail += "; over the time budget";
  }
  if (!o.pass) ++g_failures;
  std::printf("criterion %d %s: %s (%s; %.1f s)\n", id, title, o.pass ? "PASS" : "FAIL",
              o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), f, a, b);
  return buf;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

FeatureMatrix random_matrix(std::mt19937_64& gen, std::size_t r, std::size_t c) {
  return FeatureMatrix(r, c, FeatureKind::kLogMel, oracle::random_vector(gen, r * c, -10.0, 10.0));
}

Outcome dct_oracle() {
  std::mt19937_64 gen(101);
  std::uniform_int_distribution<std::size_t> len(4, 1024);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto x = oracle::random_vector(gen, len(gen), -10.0, 10.0);
    worst = std::max(worst, max_abs_diff(dct2_1d(x), oracle::naive_dct(x)));
  }
  double worst2 = 0.0;
  for (std::size_t r = 1; r <= 16; ++r) {
    for (std::size_t c = 1; c <= 16; ++c) {
      const FeatureMatrix m = random_matrix(gen, r, c);
      const auto expect =
          oracle::naive_dct_2d({m.values().begin(), m.values().end()}, r, c);
      worst2 = std::max(worst2, max_abs_diff(dct2_forward(m).values(), expect));
    }
  }
  return {worst <= 1e-9 && worst2 <= 1e-9,
          fmt("1-D max err %.3g, 2-D max err %.3g", worst, worst2)};
}

Outcome parseval() {
  std::mt19937_64 gen(102);
  std::uniform_int_distribution<std::size_t> rows(1, 128), cols(1, 512);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const FeatureMatrix m = random_matrix(gen, rows(gen), cols(gen));
    const FeatureMatrix d = dct2_forward(m);
    double a = 0.0, b = 0.0;
    for (double v : m.values()) a += v * v;
    for (double v : d.values()) b += v * v;
    worst = std::max(worst, std::abs(std::sqrt(b / a) - 1.0));
  }
  return {worst <= 1e-9, fmt("max |ratio - 1| %.3g", worst)};
}

Outcome eer_oracle() {
  std::mt19937_64 gen(103);
  std::uniform_int_distribution<std::size_t> size(1, 500);
  std::normal_distribution<double> g(0.0, 1.0);
  int mismatches = 0;
  for (int i = 0; i < 500; ++i) {
    const std::size_t nb = size(gen), ns = size(gen);
    const bool ties = i % 2 == 0;
    std::vector<double> b(nb), s(ns);
    for (double& v : b) v = g(gen) + 1.0;
    for (double& v : s) v = g(gen) - 1.0;
    if (ties) {
      for (double& v : b) v = std::round(v * 4.0) / 4.0;
      for (double& v : s) v = std::round(v * 4.0) / 4.0;
    }
    const EerResult r = eer(b, s);
    const oracle::EerOracle o = oracle::brute_force_eer(b, s);
    mismatches += r.eer != o.eer || r.threshold != o.threshold;
  }
  return {mismatches == 0, std::to_string(mismatches) + " of 500 sets differ"};
}

Outcome tdcf_oracle() {
  std::mt19937_64 gen(104);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> rate(0.0, 0.3);
  std::uniform_int_distribution<std::size_t> size(2, 400);
  const CostModel cost;
  const oracle::TdcfCost ocost;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    std::vector<double> b(size(gen)), s(size(gen));
    for (double& v : b) v = g(gen) + 1.5;
    for (double& v : s) v = g(gen) - 1.5;
    const AsvOperatingPoint op{rate(gen), rate(gen), 0.3 + rate(gen)};
    const double expect = oracle::asvspoof_min_tdcf(b, s, op.p_fa_asv, op.p_miss_asv,
                                                    op.p_miss_spoof_asv, ocost);
    worst = std::max(worst, std::abs(min_tdcf(b, s, op, cost).tdcf_norm - expect));
  }
  const AsvOperatingPoint op{0.05, 0.05, 0.5};
  const std::vector<double> same(50, 0.4);
  const double constant = min_tdcf(same, same, op, cost).tdcf_norm;
  const double separated =
      min_tdcf(std::vector<double>{0.9, 0.8, 0.7}, std::vector<double>{0.3, 0.2}, op, cost)
          .tdcf_norm;
  const bool ok = worst <= 1e-6 && std::abs(constant - 1.0) <= 1e-9 && separated == 0.0;
  return {ok, fmt("max err %.3g, constant %.9f", worst, constant) +
                  fmt(", separated %.3g", separated)};
}

Outcome gradient_check() {
  std::mt19937_64 gen(105);
  std::uniform_int_distribution<std::size_t> dim(2, 6), hid(1, 5), batch(1, 6);
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    MlpModel m;
    m.input_dim = dim(gen);
    m.hidden = hid(gen);
    m.reduction = {ReductionKind::kFlattenTopK, 1, m.input_dim};
    m.params.w1 = oracle::random_vector(gen, m.hidden * m.input_dim);
    m.params.b1 = oracle::random_vector(gen, m.hidden, -0.2, 0.2);
    m.params.w2 = oracle::random_vector(gen, 2 * m.hidden);
    m.params.b2 = oracle::random_vector(gen, 2, -0.2, 0.2);
    std::vector<Example> ex;
    const std::size_t n = batch(gen);
    for (std::size_t i = 0; i < n; ++i) {
      ex.push_back({oracle::random_vector(gen, m.input_dim, -2.0, 2.0),
                    i % 2 ? Label::kSpoof : Label::kGenuine});
    }
    const double wd = t % 2 ? 1e-3 : 0.0;
    const LossAndGrad lg = loss_and_grad(m, ex, wd);
    const double eps = 1e-5;
    auto check = [&](std::vector<double>& w, const std::vector<double>& g) {
      double diff = 0.0, norm = 0.0;
      for (std::size_t i = 0; i < w.size(); ++i) {
        const double keep = w[i];
        w[i] = keep + eps;
        const double up = loss_and_grad(m, ex, wd).loss;
        w[i] = keep - eps;
        const double down = loss_and_grad(m, ex, wd).loss;
        w[i] = keep;
        const double num = (up - down) / (2.0 * eps);
        diff += (num - g[i]) * (num - g[i]);
        norm += num * num + g[i] * g[i];
      }
      if (norm > 0.0) worst = std::max(worst, std::sqrt(diff) / std::sqrt(norm));
    };
    check(m.params.w1, lg.grad.w1);
    check(m.params.b1, lg.grad.b1);
    check(m.params.w2, lg.grad.w2);
    check(m.params.b2, lg.grad.b2);
  }
  return {worst < 1e-4, fmt("max relative error %.3g", worst)};
}

Outcome fusion_endpoints() {
  std::mt19937_64 gen(106);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<ScoreRecord> a, b;
  for (int i = 0; i < 300; ++i) {
    const bool spoof = i >= 100;
    const std::string id = "U" + std::to_string(i);
    const AttackId attack = spoof ? AttackId::parse(i % 2 ? "A17" : "A09") : AttackId::bonafide();
    const TrialKey key = spoof ? TrialKey::kSpoof : TrialKey::kBonafide;
    const double shift = spoof ? -1.0 : 1.0;
    a.push_back({id, attack, key, 1.0 / (1.0 + std::exp(-(g(gen) + shift)))});
    b.push_back({id, attack, key, 1.0 / (1.0 + std::exp(-(g(gen) + 0.7 * shift)))});
  }
  const AsvOperatingPoint op{0.05, 0.05, 0.5};
  const CostModel cost;
  const auto rows = ratio_sweep(a, b, op, cost);
  const MetricRow& r1 = rows[11];
  const MetricRow& r0 = rows[1];
  const double ta = min_tdcf(a, op, cost).tdcf_norm, tb = min_tdcf(b, op, cost).tdcf_norm;
  const double ea = eer(a).eer, eb = eer(b).eer;
  const bool ok = rows.size() == 13 && r1.id == "1.0" && r0.id == "0.0" && r1.tdcf == ta &&
                  r1.eer == ea && r0.tdcf == tb && r0.eer == eb;
  return {ok, fmt("r=1.0 t-DCF %.6f EER %.4f", r1.tdcf, r1.eer) +
                  fmt(", r=0.0 t-DCF %.6f EER %.4f", r0.tdcf, r0.eer)};
}

Outcome synthetic_separability() {
  PipelineConfig cfg;
  cfg.norm = NormMode::kStandardize;
  cfg.resolve();
  SynthConfig sc;
  sc.clips_per_class = 600;
  sc.seed = cfg.seed;
  const std::vector<FeatureSpec> specs = {FeatureSpec::parse("global-mod"),
                                          FeatureSpec::parse("blocked-mod:2x2")};
  const std::size_t jobs = std::max(1u, std::thread::hardware_concurrency());
  const SynthReport rep =
      run_synthbench(sc, cfg, specs, AsvOperatingPoint{0.05, 0.05, 0.5}, jobs, std::nullopt);
  const double global = rep.rows[0].eer, blocked = rep.rows[1].eer;
  const bool ok = global <= 0.05 && blocked - global >= 0.10;
  return {ok, fmt("global-mod EER %.2f%%, blocked-mod:2x2 EER %.2f%%", 100.0 * global,
                  100.0 * blocked)};
}

int cli(const std::string& args) {
  const std::string cmd = std::string("\"") + MODSPOOF_CLI + "\" " + args + " >/dev/null";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

Outcome determinism() {
  const fs::path dir = fs::temp_directory_path() / "modspoof_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir / "wav");
  SynthConfig sc;
  sc.seed = 5;
  std::string manifest;
  std::vector<ProtocolEntry> protocol;
  for (int spoof = 0; spoof < 2; ++spoof) {
    for (std::size_t i = 0; i < 16; ++i) {
      const std::string id = (spoof ? "S" : "B") + std::to_string(i);
      write_wav(dir / "wav" / (id + ".wav"), synth_clip(sc, i, spoof != 0));
      manifest += id + " wav/" + id + ".wav\n";
      protocol.push_back({"SPK", id, spoof ? AttackId::parse("A10") : AttackId::bonafide(),
                          spoof ? TrialKey::kSpoof : TrialKey::kBonafide});
    }
  }
  write_file_text(dir / "manifest.txt", manifest);
  write_file_text(dir / "protocol.txt", render_cm_protocol(protocol));

  for (const char* run : {"run1", "run2"}) {
    const fs::path r = dir / run;
    fs::create_directories(r);
    const std::string common = " --seed 42 ";
    if (cli("extract" + common + "--manifest " + q(dir / "manifest.txt") + " --out " +
            q(r / "feat")) != 0 ||
        cli("train" + common + "--sa-masks 2 --features " + q(r / "feat") + " --protocol " +
            q(dir / "protocol.txt") + " --model " + q(r / "model.bin")) != 0 ||
        cli("score --model " + q(r / "model.bin") + " --features " + q(r / "feat") +
            " --protocol " + q(dir / "protocol.txt") + " --out " + q(r / "scores.txt")) != 0 ||
        cli("evaluate --scores " + q(r / "scores.txt") +
            " --asv-point 0.05,0.05,0.5 --csv " + q(r / "eval.csv")) != 0) {
      return {false, std::string("pipeline command failed in ") + run};
    }
  }
  std::size_t compared = 0, differing = 0;
  auto cmp = [&](const fs::path& rel) {
    ++compared;
    if (read_file_bytes(dir / "run1" / rel) != read_file_bytes(dir / "run2" / rel)) ++differing;
  };
  for (const auto& e : fs::directory_iterator(dir / "run1" / "feat")) {
    cmp(fs::path("feat") / e.path().filename());
  }
  cmp("model.bin");
  cmp("model.bin.history.csv");
  cmp("model.bin.config.json");
  cmp("scores.txt");
  cmp("eval.csv");
  return {differing == 0 && compared == 39,
          std::to_string(compared) + " files compared, " + std::to_string(differing) +
              " differ"};
}

Outcome modulation_localization() {
  std::mt19937_64 gen(109);
  std::uniform_real_distribution<double> period(6.0, 80.0), base(-12.0, -2.0), phase(0.0, 1.0);
  const std::size_t rows = 80, cols = 398;
  std::string detail;
  bool ok = true;
  for (int t = 0; t < 10; ++t) {
    const double p = period(gen);
    // A smooth spectral envelope plus a cosine along time; the cosine is
    // sampled at frame centres (c + 1/2) like the DCT-II basis.
    FeatureMatrix lm(rows, cols, FeatureKind::kLogMel);
    const double b0 = base(gen), b1 = phase(gen);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        lm(r, c) = b0 + b1 * std::cos(std::numbers::pi * r / rows) +
                   3.0 * std::cos(2.0 * std::numbers::pi * (c + 0.5) / p);
      }
    }
    const FeatureMatrix d = dct2_forward(lm);
    std::size_t best_r = 0, best_c = 0;
    double best = -1.0;
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        if (r == 0 && c == 0) continue;
        if (std::abs(d(r, c)) > best) {
          best = std::abs(d(r, c));
          best_r = r;
          best_c = c;
        }
      }
    }
    const auto predicted = static_cast<std::size_t>(std::lround(2.0 * cols / p));
    ok = ok && best_r == 0 && best_c == predicted;
    detail += (t ? ", " : "") + fmt("P=%.1f:", p) + std::to_string(best_c) + "/" +
              std::to_string(predicted);
  }
  return {ok, "argmax/predicted column " + detail};
}

}  // namespace

int main() {
  run(1, "DCT oracle equivalence", 30.0, dct_oracle);
  run(2, "Parseval", 0.0, parseval);
  run(3, "EER oracle", 0.0, eer_oracle);
  run(4, "t-DCF oracle", 0.0, tdcf_oracle);
  run(5, "gradient check", 0.0, gradient_check);
  run(6, "fusion endpoints", 0.0, fusion_endpoints);
  run(7, "synthetic separability", 600.0, synthetic_separability);
  run(8, "determinism", 0.0, determinism);
  run(9, "modulation localization", 0.0, modulation_localization);
  std::printf("%d of 9 criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
