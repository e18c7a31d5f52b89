// include/modspoof/error.h

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

#ifndef MODSPOOF_ERROR_H_
#define MODSPOOF_ERROR_H_

#include <stdexcept>
#include <string>

namespace modspoof {

enum class ErrorCode {
  kFormat,               // malformed file header or payload
  kUnsupportedEncoding,  // WAV codec other than PCM16 / float32
  kRateMismatch,
  kEmptyInput,
  kParse,
  kDuplicate,
  kInvalidArgument,
  kShapeMismatch,
  kTooShort,
  kResolution,           // mel filter with empty support
  kNonFinite,
  kDegenerateInput,      // single-class score set
  kCostModel,
  kDivergence,
  kVersionMismatch,
  kMismatch,             // utterance sets differ
  kIo,
};

const char* error_code_name(ErrorCode code);

/// Every failure in the library is reported as a modspoof::Error; the code
/// lets callers (and tests) distinguish failure classes without string
/// matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace modspoof

#endif  // MODSPOOF_ERROR_H_
