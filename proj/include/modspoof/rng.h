// include/modspoof/rng.h

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

#ifndef MODSPOOF_RNG_H_
#define MODSPOOF_RNG_H_

#include <cstdint>

namespace modspoof {

/// Portable pseudo-random generator: xoshiro256** seeded through splitmix64.
///
/// Every random draw in the toolkit (mask placement, weight init, shuffles,
/// synthetic audio) goes through this class, so a seed reproduces the same
/// stream on every platform and standard library. The std:: distributions
/// are deliberately not used because their output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) { reseed(seed); }

  void reseed(std::uint64_t seed);

  std::uint64_t next_u64();

  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform();

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, bound], inclusive; bound == 0 returns 0.
  std::uint64_t uniform_int(std::uint64_t bound);

  /// Standard normal via Box-Muller (one cached spare value).
  double gaussian();

  struct State {
    std::uint64_t s[4];
    bool has_spare;
    double spare;
  };
  State state() const;
  void set_state(const State& st);

 private:
  std::uint64_t s_[4];
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t& x);

}  // namespace modspoof

#endif  // MODSPOOF_RNG_H_
