// include/modspoof/attack.h

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

#ifndef MODSPOOF_ATTACK_H_
#define MODSPOOF_ATTACK_H_

#include <string>
#include <string_view>

namespace modspoof {

enum class AttackFamily { kNone, kTts, kVc, kTtsVc };

std::string_view attack_family_name(AttackFamily family);

/// ASVspoof 2019 LA spoofing-method label. Known ids (A07..A19) carry the
/// family and generation method of the evaluation-set attacks; bonafide is
/// spelled "-" in protocol and score files. Any other token is kept verbatim
/// with family kNone.
class AttackId {
 public:
  AttackId() = default;  // bonafide
  static AttackId parse(std::string_view token);
  static AttackId bonafide() { return AttackId(); }

  const std::string& id() const { return id_; }
  AttackFamily family() const { return family_; }
  const std::string& method() const { return method_; }
  bool is_bonafide() const { return id_ == "-"; }
  bool is_known() const { return known_; }

  friend bool operator==(const AttackId& a, const AttackId& b) {
    return a.id_ == b.id_;
  }
  friend bool operator<(const AttackId& a, const AttackId& b) {
    return a.id_ < b.id_;
  }

 private:
  std::string id_ = "-";
  AttackFamily family_ = AttackFamily::kNone;
  std::string method_;
  bool known_ = true;
};

}  // namespace modspoof

#endif  // MODSPOOF_ATTACK_H_
