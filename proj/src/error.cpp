// Copyright 2026 The vaes Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vaes/error.hpp"

namespace vaes {

std::string_view code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidCriterion: return "INVALID_CRITERION";
    case ErrorCode::kInvalidScore: return "INVALID_SCORE";
    case ErrorCode::kInvalidRecord: return "INVALID_RECORD";
    case ErrorCode::kInvalidTrace: return "INVALID_TRACE";
    case ErrorCode::kInvalidPool: return "INVALID_POOL";
    case ErrorCode::kInvalidWeights: return "INVALID_WEIGHTS";
    case ErrorCode::kEmbeddingMiss: return "EMBEDDING_MISS";
    case ErrorCode::kEmbeddingUnavailable: return "EMBEDDING_UNAVAILABLE";
    case ErrorCode::kZeroNorm: return "ZERO_NORM";
    case ErrorCode::kDimMismatch: return "DIM_MISMATCH";
    case ErrorCode::kEmptyPool: return "EMPTY_POOL";
    case ErrorCode::kEmptyEvalSet: return "EMPTY_EVAL_SET";
    case ErrorCode::kMissingBackward: return "MISSING_BACKWARD";
    case ErrorCode::kBadCriteriaCount: return "BAD_CRITERIA_COUNT";
    case ErrorCode::kNotAntisymmetric: return "NOT_ANTISYMMETRIC";
    case ErrorCode::kBadGroup: return "BAD_GROUP";
    case ErrorCode::kBadConfig: return "BAD_CONFIG";
    case ErrorCode::kBadRequest: return "BAD_REQUEST";
    case ErrorCode::kIo: return "IO_ERROR";
  }
  return "UNKNOWN";
}

}  // namespace vaes
