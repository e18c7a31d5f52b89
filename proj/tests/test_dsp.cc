// tests/test_dsp.cc

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>

#include "modspoof/dct.h"
#include "modspoof/error.h"
#include "modspoof/features.h"
#include "modspoof/fft.h"
#include "modspoof/normalizer.h"
#include "oracles.h"

using namespace modspoof;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a modspoof::Error");
  return ErrorCode::kIo;
}

FeatureMatrix random_matrix(std::mt19937_64& gen, std::size_t r, std::size_t c,
                            FeatureKind kind = FeatureKind::kLogMel) {
  return FeatureMatrix(r, c, kind, oracle::random_vector(gen, r * c));
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  REQUIRE(a.size() == b.size());
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

double frobenius(const FeatureMatrix& m) {
  long double s = 0.0L;
  for (double v : m.values()) s += static_cast<long double>(v) * v;
  return static_cast<double>(std::sqrt(s));
}

AudioClip random_clip(std::mt19937_64& gen, std::size_t n) {
  return AudioClip{oracle::random_vector(gen, n, -0.5, 0.5), 16000};
}

}  // namespace

TEST_CASE("fft matches a naive DFT for power-of-two and other lengths") {
  std::mt19937_64 gen(1);
  for (std::size_t n : {1u, 2u, 3u, 5u, 8u, 12u, 64u, 97u, 100u, 256u, 1000u, 1024u}) {
    CAPTURE(n);
    std::vector<Complex> x(n);
    const auto re = oracle::random_vector(gen, n), im = oracle::random_vector(gen, n);
    for (std::size_t i = 0; i < n; ++i) x[i] = {re[i], im[i]};
    const auto expect = oracle::naive_dft(x);
    auto got = x;
    fft_plan(n).forward(got);
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(got[i] - expect[i]));
    CHECK(err < 1e-9);
    fft_plan(n).inverse(got);
    err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      err = std::max(err, std::abs(got[i] / static_cast<double>(n) - x[i]));
    }
    CHECK(err < 1e-12);
  }
}

TEST_CASE("dct2_1d examples") {
  const std::vector<double> ones = {1, 1, 1, 1};
  const auto c = dct2_1d(ones);
  CHECK(c[0] == doctest::Approx(2.0).epsilon(1e-15));
  for (std::size_t k = 1; k < 4; ++k) CHECK(std::abs(c[k]) < 1e-15);

  const std::vector<double> impulse = {1, 0, 0, 0};
  const auto d = dct2_1d(impulse);
  const auto expect = oracle::naive_dct(impulse);
  CHECK(max_abs_diff(d, expect) < 1e-12);
  CHECK(d[1] == doctest::Approx(0.65328).epsilon(1e-5));
  CHECK(d[3] == doctest::Approx(0.27060).epsilon(1e-4));

  CHECK(dct2_1d(impulse, 2).size() == 2);
  CHECK(code_of([&] { dct2_1d(impulse, 5); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { dct2_1d(std::vector<double>{}); }) == ErrorCode::kEmptyInput);
}

TEST_CASE("fast dct equals naive summation and inverts") {
  std::mt19937_64 gen(2);
  std::uniform_int_distribution<std::size_t> len(1, 300);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = trial < 5 ? std::size_t{1} << (trial + 2) : len(gen);
    CAPTURE(n);
    const auto x = oracle::random_vector(gen, n);
    const auto fast = dct2_1d(x);
    CHECK(max_abs_diff(fast, oracle::naive_dct(x)) < 1e-9);
    CHECK(max_abs_diff(idct2_1d(fast), x) < 1e-9);
    CHECK(max_abs_diff(dct2_1d(idct2_1d(x)), x) < 1e-9);
  }
}

TEST_CASE("2-D dct properties") {
  std::mt19937_64 gen(3);
  SUBCASE("constant matrix concentrates at DC") {
    const FeatureMatrix m(6, 10, FeatureKind::kLogMel, 2.5);
    const FeatureMatrix d = dct2_forward(m);
    CHECK(d.kind() == FeatureKind::kGlobalMod);
    CHECK(d(0, 0) == doctest::Approx(2.5 * std::sqrt(60.0)).epsilon(1e-14));
    for (std::size_t i = 1; i < d.size(); ++i) CHECK(std::abs(d.values()[i]) < 1e-12);
  }
  SUBCASE("random 8x8 equals the brute-force double sum") {
    const FeatureMatrix m = random_matrix(gen, 8, 8);
    const auto expect = oracle::naive_dct_2d({m.values().begin(), m.values().end()}, 8, 8);
    CHECK(max_abs_diff(dct2_forward(m).values(), expect) < 1e-9);
  }
  SUBCASE("separability, linearity, Parseval and inverse") {
    for (auto [r, c] : {std::pair{3, 7}, std::pair{80, 398}, std::pair{33, 64}}) {
      const FeatureMatrix a = random_matrix(gen, r, c), b = random_matrix(gen, r, c);
      const FeatureMatrix da = dct2_forward(a);
      CHECK(max_abs_diff(da.values(), dct2_forward_cols_first(a).values()) < 1e-10);
      CHECK(std::abs(frobenius(da) / frobenius(a) - 1.0) < 1e-9);
      FeatureMatrix combo(r, c, FeatureKind::kLogMel);
      for (std::size_t i = 0; i < combo.size(); ++i) {
        combo.values()[i] = 1.5 * a.values()[i] - 0.25 * b.values()[i];
      }
      const FeatureMatrix db = dct2_forward(b), dcombo = dct2_forward(combo);
      for (std::size_t i = 0; i < combo.size(); ++i) {
        REQUIRE(std::abs(dcombo.values()[i] - (1.5 * da.values()[i] - 0.25 * db.values()[i])) <
                1e-9);
      }
      CHECK(max_abs_diff(dct2_inverse(da).values(), a.values()) < 1e-9);
    }
  }
  SUBCASE("non-finite input is rejected") {
    FeatureMatrix m(2, 2, FeatureKind::kLogMel, 0.0);
    m(1, 1) = std::numeric_limits<double>::infinity();
    CHECK(code_of([&] { dct2_forward(m); }) == ErrorCode::kNonFinite);
  }
}

TEST_CASE("stft framing") {
  const StftConfig cfg;
  CHECK(cfg.num_frames(64000) == 398);
  const auto spec = stft(AudioClip{std::vector<double>(64000, 0.0), 16000}, cfg);
  CHECK(spec.bins == 513);
  CHECK(spec.frames == 398);
  for (const auto& v : spec.values) REQUIRE(v == Complex(0.0, 0.0));

  CHECK(code_of([&] { stft(AudioClip{std::vector<double>(399, 0.0), 16000}, cfg); }) ==
        ErrorCode::kTooShort);
  StftConfig centered = cfg;
  centered.center = true;
  CHECK(stft(AudioClip{std::vector<double>(64000, 0.0), 16000}, centered).frames ==
        1 + 64000 / 160);

  StftConfig bad = cfg;
  bad.n_fft = 1000;
  CHECK(code_of([&] { bad.validate(); }) == ErrorCode::kInvalidArgument);
  bad = cfg;
  bad.hop_length = 0;
  CHECK(code_of([&] { bad.validate(); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("stft frames equal a naive DFT of the windowed frame") {
  std::mt19937_64 gen(4);
  for (WindowType wt : {WindowType::kHann, WindowType::kHamming}) {
    StftConfig cfg;
    cfg.n_fft = 64;
    cfg.win_length = 48;
    cfg.hop_length = 16;
    cfg.window = wt;
    const AudioClip clip = random_clip(gen, 400);
    const auto spec = stft(clip, cfg);
    const double a0 = wt == WindowType::kHann ? 0.5 : 0.54;
    for (std::size_t f = 0; f < spec.frames; ++f) {
      std::vector<std::complex<double>> frame(cfg.n_fft, 0.0);
      for (std::size_t n = 0; n < cfg.win_length; ++n) {
        const double w =
            a0 - (1.0 - a0) * std::cos(2.0 * std::numbers::pi * n / cfg.win_length);
        frame[n] = w * clip.samples[f * cfg.hop_length + n];
      }
      const auto expect = oracle::naive_dft(frame);
      for (std::size_t b = 0; b < spec.bins; ++b) {
        REQUIRE(std::abs(spec(b, f) - expect[b]) < 1e-9);
      }
    }
  }
}

TEST_CASE("pure cosine at a bin centre concentrates its energy") {
  StftConfig cfg;
  cfg.n_fft = 256;
  cfg.win_length = 256;
  cfg.hop_length = 128;
  const std::size_t k = 10;
  AudioClip clip{std::vector<double>(1024), 16000};
  for (std::size_t n = 0; n < clip.samples.size(); ++n) {
    clip.samples[n] = std::cos(2.0 * std::numbers::pi * k * n / cfg.n_fft);
  }
  const FeatureMatrix p = power_spectrogram(stft(clip, cfg));
  for (std::size_t f = 0; f < p.cols(); ++f) {
    double total = 0.0, near = 0.0;
    std::size_t peak = 0;
    for (std::size_t b = 0; b < p.rows(); ++b) {
      total += p(b, f);
      if (b + 1 >= k && b <= k + 1) near += p(b, f);
      if (p(b, f) > p(peak, f)) peak = b;
    }
    CHECK(peak == k);
    CHECK(near / total >= 0.99);
  }
}

TEST_CASE("power spectrogram") {
  ComplexSpectrogram s;
  s.bins = 1;
  s.frames = 2;
  s.values = {Complex(3, 4), Complex(0, 0)};
  const FeatureMatrix p = power_spectrogram(s);
  CHECK(p.kind() == FeatureKind::kPowerSpec);
  CHECK(p(0, 0) == 25.0);
  CHECK(p(0, 1) == 0.0);

  // Parseval over the one-sided spectrum of each windowed frame.
  std::mt19937_64 gen(5);
  StftConfig cfg;
  const AudioClip clip = random_clip(gen, 4000);
  const FeatureMatrix power = power_spectrogram(stft(clip, cfg));
  const auto window = make_window(cfg.window, cfg.win_length);
  for (std::size_t f = 0; f < power.cols(); ++f) {
    double time_energy = 0.0;
    for (std::size_t n = 0; n < cfg.win_length; ++n) {
      const double v = window[n] * clip.samples[f * cfg.hop_length + n];
      time_energy += v * v;
    }
    double freq = power(0, f) + power(power.rows() - 1, f);
    for (std::size_t b = 1; b + 1 < power.rows(); ++b) freq += 2.0 * power(b, f);
    CHECK(freq / static_cast<double>(cfg.n_fft) ==
          doctest::Approx(time_energy).epsilon(1e-6));
  }
}

TEST_CASE("mel scale and filterbank") {
  CHECK(hz_to_mel(0.0) == 0.0);
  CHECK(hz_to_mel(700.0) == doctest::Approx(2595.0 * std::log10(2.0)).epsilon(1e-14));
  CHECK(hz_to_mel(700.0) == doctest::Approx(781.1729).epsilon(1e-7));
  CHECK(mel_to_hz(hz_to_mel(1234.5)) == doctest::Approx(1234.5).epsilon(1e-12));

  const MelConfig cfg;
  const MelFilterbank bank = mel_filterbank(cfg, 1024);
  CHECK(bank.n_mels == 80);
  CHECK(bank.n_bins == 513);
  for (std::size_t m = 0; m < bank.n_mels; ++m) {
    if (m > 0) CHECK(bank.center_hz[m] > bank.center_hz[m - 1]);
    // One contiguous nonnegative support.
    std::size_t runs = 0;
    bool inside = false;
    for (std::size_t b = 0; b < bank.n_bins; ++b) {
      REQUIRE(bank(m, b) >= 0.0);
      const bool nz = bank(m, b) > 0.0;
      if (nz && !inside) ++runs;
      inside = nz;
    }
    CHECK(runs == 1);
    CHECK(bank(m, bank.first[m]) > 0.0);
    CHECK(bank(m, bank.last[m]) > 0.0);
  }
  // Centre frequencies are uniform on the mel scale.
  const double step = (hz_to_mel(cfg.f_max) - hz_to_mel(cfg.f_min)) / (cfg.n_mels + 1);
  CHECK(hz_to_mel(bank.center_hz[0]) == doctest::Approx(step).epsilon(1e-12));

  MelConfig fine = cfg;
  fine.n_mels = 200;
  CHECK(code_of([&] { mel_filterbank(fine, 256); }) == ErrorCode::kResolution);
  MelConfig bad = cfg;
  bad.f_max = 9000.0;
  CHECK(code_of([&] { bad.validate(); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("log_mel floor and identity") {
  const MelFilterbank bank = mel_filterbank(MelConfig{}, 1024);
  const FeatureMatrix zero(513, 5, FeatureKind::kPowerSpec, 0.0);
  const FeatureMatrix lm = log_mel(zero, bank);
  CHECK(lm.kind() == FeatureKind::kLogMel);
  CHECK(lm.rows() == 80);
  for (double v : lm.values()) REQUIRE(v == doctest::Approx(-23.025850929940457).epsilon(1e-15));

  MelFilterbank unit;
  unit.n_mels = 1;
  unit.n_bins = 1;
  unit.weights = {1.0};
  unit.center_hz = {0.0};
  unit.first = {0};
  unit.last = {0};
  const FeatureMatrix e(1, 1, FeatureKind::kPowerSpec, std::numbers::e);
  CHECK(log_mel(e, unit)(0, 0) == doctest::Approx(1.0).epsilon(1e-15));

  CHECK(code_of([&] { log_mel(FeatureMatrix(100, 2, FeatureKind::kPowerSpec), bank); }) ==
        ErrorCode::kShapeMismatch);
}

TEST_CASE("mfcc") {
  std::mt19937_64 gen(6);
  const FeatureMatrix c(4, 3, FeatureKind::kLogMel, 1.5);
  const FeatureMatrix m = mfcc(c, 2);
  CHECK(m.kind() == FeatureKind::kMfcc);
  REQUIRE(m.rows() == 2);
  for (std::size_t t = 0; t < 3; ++t) {
    CHECK(m(0, t) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(std::abs(m(1, t)) < 1e-15);
  }
  const FeatureMatrix lm = random_matrix(gen, 40, 17);
  const FeatureMatrix mf = mfcc(lm, 13);
  for (std::size_t t = 0; t < lm.cols(); ++t) {
    std::vector<double> col(lm.rows());
    double sum = 0.0;
    for (std::size_t r = 0; r < lm.rows(); ++r) sum += (col[r] = lm(r, t));
    const auto expect = oracle::naive_dct(col);
    for (std::size_t k = 0; k < 13; ++k) REQUIRE(std::abs(mf(k, t) - expect[k]) < 1e-9);
    CHECK(mf(0, t) == doctest::Approx(sum * std::sqrt(1.0 / 40.0)).epsilon(1e-12));
  }
  CHECK(code_of([&] { mfcc(lm, 41); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([&] { mfcc(FeatureMatrix(4, 4, FeatureKind::kMfcc), 2); }) ==
        ErrorCode::kInvalidArgument);
}

TEST_CASE("global modulation composition") {
  std::mt19937_64 gen(7);
  const StftConfig scfg;
  const MelConfig mcfg;
  const Normalizer none;

  const AudioClip silence{std::vector<double>(64000, 0.0), 16000};
  const FeatureMatrix g0 = global_modulation(silence, scfg, mcfg, none);
  CHECK(g0.rows() == 80);
  CHECK(g0.cols() == 398);
  CHECK(g0(0, 0) == doctest::Approx(std::log(1e-10) * std::sqrt(80.0 * 398.0)).epsilon(1e-12));
  for (std::size_t i = 1; i < g0.size(); ++i) REQUIRE(std::abs(g0.values()[i]) < 1e-9);

  const AudioClip clip = random_clip(gen, 64000);
  const FeatureMatrix g = global_modulation(clip, scfg, mcfg, none);
  const FeatureMatrix manual = dct2_forward(
      log_mel(power_spectrogram(stft(clip, scfg)), mel_filterbank(mcfg, scfg.n_fft)));
  CHECK(g == manual);
  CHECK(global_modulation(clip, scfg, mcfg, none) == g);

  const Normalizer l1 = Normalizer::fit({}, NormMode::kL1);
  CHECK(global_modulation(clip, scfg, mcfg, l1) == l1.apply(manual));

  AudioClip wrong = clip;
  wrong.sample_rate = 8000;
  CHECK(code_of([&] { compute_log_mel(wrong, scfg, mcfg); }) == ErrorCode::kRateMismatch);
}

TEST_CASE("blocked modulation") {
  std::mt19937_64 gen(8);
  const FeatureMatrix m = random_matrix(gen, 80, 398);
  const FeatureMatrix one = blocked_modulation(m, {1, 1});
  CHECK(one.kind() == FeatureKind::kBlockedMod);
  CHECK(max_abs_diff(one.values(), dct2_forward(m).values()) <= 1e-12);

  const FeatureMatrix c(8, 8, FeatureKind::kLogMel, 1.0);
  const FeatureMatrix bc = blocked_modulation(c, {2, 2});
  std::size_t nonzero = 0;
  for (double v : bc.values()) nonzero += std::abs(v) > 1e-12;
  CHECK(nonzero == 4);
  CHECK(bc(0, 0) == doctest::Approx(4.0));
  CHECK(bc(4, 4) == doctest::Approx(4.0));

  const FeatureMatrix r = random_matrix(gen, 8, 8);
  const FeatureMatrix br = blocked_modulation(r, {2, 2});
  for (std::size_t bi = 0; bi < 2; ++bi) {
    for (std::size_t bj = 0; bj < 2; ++bj) {
      std::vector<double> block;
      for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) block.push_back(r(4 * bi + i, 4 * bj + j));
      }
      const auto expect = oracle::naive_dct_2d(block, 4, 4);
      for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
          REQUIRE(std::abs(br(4 * bi + i, 4 * bj + j) - expect[4 * i + j]) < 1e-9);
        }
      }
    }
  }

  // Remainder rows and columns go to the last block.
  const FeatureMatrix odd(9, 7, FeatureKind::kLogMel, 1.0);
  const FeatureMatrix bo = blocked_modulation(odd, {2, 2});
  CHECK(bo(0, 0) == doctest::Approx(std::sqrt(4.0 * 3.0)));
  CHECK(bo(4, 3) == doctest::Approx(std::sqrt(5.0 * 4.0)));

  CHECK(code_of([&] { blocked_modulation(r, {9, 1}); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([&] { blocked_modulation(r, {0, 1}); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("band-restricted modulation") {
  std::mt19937_64 gen(9);
  const FeatureMatrix m = random_matrix(gen, 4, 6);
  const FeatureMatrix low = band_restricted_modulation(m, Band::kLowHalf);
  CHECK(low.kind() == FeatureKind::kBandMod);
  CHECK(low.rows() == 2);
  CHECK(max_abs_diff(low.values(), dct2_forward(m.sub(0, 2, 0, 6)).values()) < 1e-12);
  const FeatureMatrix high = band_restricted_modulation(m, Band::kHighHalf);
  CHECK(max_abs_diff(high.values(), dct2_forward(m.sub(2, 2, 0, 6)).values()) < 1e-12);

  const FeatureMatrix five = random_matrix(gen, 5, 3);
  CHECK(band_restricted_modulation(five, Band::kLowHalf).rows() == 2);
  CHECK(band_restricted_modulation(five, Band::kHighHalf).rows() == 3);
  CHECK(max_abs_diff(band_restricted_modulation(five, Band::kHighHalf).values(),
                     dct2_forward(five.sub(2, 3, 0, 3)).values()) < 1e-12);

  FeatureMatrix split(6, 4, FeatureKind::kLogMel, 0.0);
  for (std::size_t r = 3; r < 6; ++r) {
    for (std::size_t c = 0; c < 4; ++c) split(r, c) = 2.0;
  }
  const FeatureMatrix hb = band_restricted_modulation(split, Band::kHighHalf);
  std::size_t nonzero = 0;
  for (double v : hb.values()) nonzero += std::abs(v) > 1e-12;
  CHECK(nonzero == 1);
  CHECK(code_of([] { band_restricted_modulation(FeatureMatrix(1, 4, FeatureKind::kLogMel),
                                                Band::kLowHalf); }) ==
        ErrorCode::kInvalidArgument);
}

TEST_CASE("normalizer") {
  std::mt19937_64 gen(10);
  SUBCASE("l1") {
    const Normalizer n = Normalizer::fit({}, NormMode::kL1);
    const FeatureMatrix m(2, 2, FeatureKind::kGlobalMod, std::vector<double>{3, -1, 0, 0});
    const auto r = n.apply_checked(m);
    CHECK_FALSE(r.zero_norm);
    CHECK(r.feature(0, 0) == 0.75);
    CHECK(r.feature(0, 1) == -0.25);
    const FeatureMatrix z(2, 2, FeatureKind::kGlobalMod, 0.0);
    const auto rz = n.apply_checked(z);
    CHECK(rz.zero_norm);
    CHECK(rz.feature == z);
    const FeatureMatrix big = random_matrix(gen, 30, 40);
    const FeatureMatrix nb = n.apply(big);
    double sum = 0.0;
    for (double v : nb.values()) sum += std::abs(v);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("none is the identity") {
    const FeatureMatrix m = random_matrix(gen, 3, 3);
    CHECK(Normalizer::fit({}, NormMode::kNone).apply(m) == m);
  }
  SUBCASE("standardize") {
    const FeatureMatrix m = random_matrix(gen, 3, 4);
    const std::vector<FeatureMatrix> same = {m, m};
    const Normalizer n = Normalizer::fit(same, NormMode::kStandardize);
    for (double s : n.stddev().values()) CHECK(s == kStdFloor);
    const FeatureMatrix zm = n.apply(m);
    for (double v : zm.values()) CHECK(v == 0.0);

    std::vector<FeatureMatrix> set;
    for (int i = 0; i < 100; ++i) set.push_back(random_matrix(gen, 5, 6));
    const Normalizer fitted = Normalizer::fit(set, NormMode::kStandardize);
    std::vector<double> mean(30, 0.0), sq(30, 0.0);
    for (const auto& f : set) {
      const FeatureMatrix z = fitted.apply(f);
      for (std::size_t i = 0; i < 30; ++i) {
        mean[i] += z.values()[i] / 100.0;
        sq[i] += z.values()[i] * z.values()[i] / 100.0;
      }
    }
    for (std::size_t i = 0; i < 30; ++i) {
      CHECK(std::abs(mean[i]) < 1e-6);
      CHECK(std::abs(std::sqrt(sq[i] - mean[i] * mean[i]) - 1.0) < 1e-6);
    }

    const auto path = std::filesystem::temp_directory_path() / "modspoof_test_norm.gmn";
    fitted.save(path);
    const Normalizer back = Normalizer::load(path);
    CHECK(back.mode() == NormMode::kStandardize);
    CHECK(back.apply(set[0]) == fitted.apply(set[0]));

    CHECK(code_of([] { Normalizer::fit({}, NormMode::kStandardize); }) == ErrorCode::kEmptyInput);
    CHECK(code_of([&] { fitted.apply(random_matrix(gen, 2, 2)); }) == ErrorCode::kShapeMismatch);
  }
}
