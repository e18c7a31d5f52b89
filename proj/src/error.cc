// src/error.cc

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

#include "modspoof/error.h"

namespace modspoof {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kFormat: return "format";
    case ErrorCode::kUnsupportedEncoding: return "unsupported-encoding";
    case ErrorCode::kRateMismatch: return "rate-mismatch";
    case ErrorCode::kEmptyInput: return "empty-input";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kDuplicate: return "duplicate";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kShapeMismatch: return "shape-mismatch";
    case ErrorCode::kTooShort: return "too-short";
    case ErrorCode::kResolution: return "resolution";
    case ErrorCode::kNonFinite: return "non-finite";
    case ErrorCode::kDegenerateInput: return "degenerate-input";
    case ErrorCode::kCostModel: return "cost-model";
    case ErrorCode::kDivergence: return "divergence";
    case ErrorCode::kVersionMismatch: return "version-mismatch";
    case ErrorCode::kMismatch: return "mismatch";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

}  // namespace modspoof
