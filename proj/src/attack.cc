// src/attack.cc

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

#include "modspoof/attack.h"

#include <array>

namespace modspoof {

namespace {

struct KnownAttack {
  std::string_view id;
  AttackFamily family;
  std::string_view method;
};

// LA evaluation-set attacks.
constexpr std::array<KnownAttack, 13> kKnownAttacks{{
    {"A07", AttackFamily::kTts, "Vocoder+GAN"},
    {"A08", AttackFamily::kTts, "Neural waveform"},
    {"A09", AttackFamily::kTts, "Vocoder"},
    {"A10", AttackFamily::kTts, "Neural waveform"},
    {"A11", AttackFamily::kTts, "Griffin lim"},
    {"A12", AttackFamily::kTts, "Neural waveform"},
    {"A13", AttackFamily::kTtsVc, "WC + waveform filtering"},
    {"A14", AttackFamily::kTtsVc, "Vocoder"},
    {"A15", AttackFamily::kTtsVc, "Neural waveform"},
    {"A16", AttackFamily::kTts, "Waveform concatenation (WC)"},
    {"A17", AttackFamily::kVc, "Waveform filtering"},
    {"A18", AttackFamily::kVc, "Vocoder"},
    {"A19", AttackFamily::kVc, "Spectral filtering"},
}};

}  // namespace

std::string_view attack_family_name(AttackFamily family) {
  switch (family) {
    case AttackFamily::kNone: return "none";
    case AttackFamily::kTts: return "TTS";
    case AttackFamily::kVc: return "VC";
    case AttackFamily::kTtsVc: return "TTS-VC";
  }
  return "none";
}

AttackId AttackId::parse(std::string_view token) {
  AttackId out;
  if (token == "-" || token == "bonafide") return out;
  out.id_ = std::string(token);
  out.known_ = false;
  for (const auto& known : kKnownAttacks) {
    if (known.id == token) {
      out.family_ = known.family;
      out.method_ = std::string(known.method);
      out.known_ = true;
      break;
    }
  }
  return out;
}

}  // namespace modspoof
