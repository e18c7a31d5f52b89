// tests/oracles.h

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

// Slow, independent reference implementations used by the tests. Nothing in
// here calls into the library.

#ifndef MODSPOOF_TESTS_ORACLES_H_
#define MODSPOOF_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

// X_k = s_k sum_n x_n cos(pi (2n+1) k / 2N), s_0 = sqrt(1/N), s_k = sqrt(2/N).
// The cosines come from a table of cos(pi m / 2N), m = (2n+1)k mod 4N, so
// every term is an exact lookup and the sum stays O(N^2).
inline std::vector<double> naive_dct(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<long double> table(4 * n);
  for (std::size_t m = 0; m < 4 * n; ++m) {
    table[m] = std::cos(std::numbers::pi_v<long double> * m / (2.0L * n));
  }
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    long double acc = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
      acc += static_cast<long double>(x[i]) * table[((2 * i + 1) * k) % (4 * n)];
    }
    const long double s = k == 0 ? std::sqrt(1.0L / n) : std::sqrt(2.0L / n);
    out[k] = static_cast<double>(s * acc);
  }
  return out;
}

// Brute-force double sum over a rows x cols row-major matrix.
inline std::vector<double> naive_dct_2d(const std::vector<double>& m, std::size_t rows,
                                        std::size_t cols) {
  std::vector<double> out(rows * cols);
  const long double pi = std::numbers::pi_v<long double>;
  for (std::size_t p = 0; p < rows; ++p) {
    for (std::size_t q = 0; q < cols; ++q) {
      long double acc = 0.0L;
      for (std::size_t i = 0; i < rows; ++i) {
        const long double ci = std::cos(pi * (2.0L * i + 1.0L) * p / (2.0L * rows));
        for (std::size_t j = 0; j < cols; ++j) {
          acc += static_cast<long double>(m[i * cols + j]) * ci *
                 std::cos(pi * (2.0L * j + 1.0L) * q / (2.0L * cols));
        }
      }
      const long double sp = p == 0 ? std::sqrt(1.0L / rows) : std::sqrt(2.0L / rows);
      const long double sq = q == 0 ? std::sqrt(1.0L / cols) : std::sqrt(2.0L / cols);
      out[p * cols + q] = static_cast<double>(sp * sq * acc);
    }
  }
  return out;
}

inline std::vector<std::complex<double>> naive_dft(const std::vector<std::complex<double>>& x,
                                                   bool inverse = false) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n);
  const long double sign = inverse ? 1.0L : -1.0L;
  for (std::size_t k = 0; k < n; ++k) {
    long double re = 0.0L, im = 0.0L;
    for (std::size_t t = 0; t < n; ++t) {
      // Reduce k*t mod n first to keep the angle accurate.
      const long double ang = sign * 2.0L * std::numbers::pi_v<long double> *
                              static_cast<long double>((k * t) % n) / n;
      const long double c = std::cos(ang), s = std::sin(ang);
      re += x[t].real() * c - x[t].imag() * s;
      im += x[t].real() * s + x[t].imag() * c;
    }
    out[k] = {static_cast<double>(re), static_cast<double>(im)};
  }
  return out;
}

// Exhaustive EER: candidate thresholds are every score plus +inf; a trial is
// accepted when score >= t. Minimizes |p_miss - p_fa| through the integer
// cross-multiplied gap, ties to the smaller threshold. O(n^2).
struct EerOracle {
  double eer;
  double threshold;
};

inline EerOracle brute_force_eer(const std::vector<double>& bonafide,
                                 const std::vector<double>& spoof) {
  std::vector<double> cand(bonafide);
  cand.insert(cand.end(), spoof.begin(), spoof.end());
  cand.push_back(std::numeric_limits<double>::infinity());
  const long long nb = static_cast<long long>(bonafide.size());
  const long long ns = static_cast<long long>(spoof.size());
  long long best_gap = std::numeric_limits<long long>::max();
  double best_t = 0.0, best_eer = 0.0;
  for (double t : cand) {
    long long miss = 0, fa = 0;
    for (double b : bonafide) miss += b < t;
    for (double s : spoof) fa += s >= t;
    const long long gap = std::llabs(miss * ns - fa * nb);
    if (gap < best_gap || (gap == best_gap && t < best_t)) {
      best_gap = gap;
      best_t = t;
      best_eer = (static_cast<double>(miss) / nb + static_cast<double>(fa) / ns) / 2.0;
    }
  }
  return {best_eer, best_t};
}

// Port of compute_det_curve() from the ASVspoof 2019 evaluation package
// (eval_metrics.py): stable argsort of the pooled scores, cumulative sums,
// plus the leading accept-all point.
struct DetCurve {
  std::vector<double> frr;
  std::vector<double> far;
  std::vector<double> thresholds;
};

inline DetCurve asvspoof_det_curve(const std::vector<double>& target,
                                   const std::vector<double>& nontarget) {
  const std::size_t n = target.size() + nontarget.size();
  std::vector<double> all(target);
  all.insert(all.end(), nontarget.begin(), nontarget.end());
  std::vector<double> labels(n, 0.0);
  std::fill(labels.begin(), labels.begin() + target.size(), 1.0);
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return all[a] < all[b];
  });
  DetCurve det;
  det.frr.push_back(0.0);
  det.far.push_back(1.0);
  det.thresholds.push_back(all[idx[0]] - 0.001);
  double tar_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    tar_sum += labels[idx[i]];
    const double non_sum = static_cast<double>(nontarget.size()) -
                           (static_cast<double>(i + 1) - tar_sum);
    det.frr.push_back(tar_sum / static_cast<double>(target.size()));
    det.far.push_back(non_sum / static_cast<double>(nontarget.size()));
    det.thresholds.push_back(all[idx[i]]);
  }
  return det;
}

struct TdcfCost {
  double p_spoof = 0.05;
  double p_tar = 0.95 * 0.99;
  double p_non = 0.95 * 0.01;
  double c_miss_asv = 1.0;
  double c_fa_asv = 10.0;
  double c_miss_cm = 1.0;
  double c_fa_cm = 10.0;
};

// Port of compute_tDCF() (ASVspoof 2019): returns min over the CM DET curve
// of the normalized tandem cost.
inline double asvspoof_min_tdcf(const std::vector<double>& bonafide,
                                const std::vector<double>& spoof, double p_fa_asv,
                                double p_miss_asv, double p_miss_spoof_asv,
                                const TdcfCost& c = {}) {
  const DetCurve det = asvspoof_det_curve(bonafide, spoof);
  const double c1 = c.p_tar * (c.c_miss_cm - c.c_miss_asv * p_miss_asv) -
                    c.p_non * c.c_fa_asv * p_fa_asv;
  const double c2 = c.c_fa_cm * c.p_spoof * (1.0 - p_miss_spoof_asv);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < det.frr.size(); ++i) {
    const double tdcf = c1 * det.frr[i] + c2 * det.far[i];
    best = std::min(best, tdcf / std::min(c1, c2));
  }
  return best;
}

inline std::vector<double> random_vector(std::mt19937_64& gen, std::size_t n,
                                         double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = dist(gen);
  return v;
}

}  // namespace oracle

#endif  // MODSPOOF_TESTS_ORACLES_H_
