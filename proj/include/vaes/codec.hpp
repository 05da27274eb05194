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

// Canonical JSON encodings of the core types.
//
//   Dimension  -> "VA" | "VF" | "VP"
//   PrefScore  -> -1 | 0 | 1
//   Verdict    -> {"va": s, "vf": s, "vp": s}
//
// Decoders throw vaes::Error (kInvalidRecord / kInvalidScore /
// kInvalidCriterion / kInvalidTrace) on malformed input rather than
// nlohmann's own exception types.

#pragma once

#include <string>

#include <json.hpp>

#include "vaes/parser.hpp"
#include "vaes/rubric.hpp"

namespace vaes {

using Json = nlohmann::json;

void to_json(Json& j, Dimension d);
void from_json(const Json& j, Dimension& d);

void to_json(Json& j, PrefScore s);
void from_json(const Json& j, PrefScore& s);

void to_json(Json& j, const Verdict& v);
void from_json(const Json& j, Verdict& v);

void to_json(Json& j, const PreferenceRecord& r);
void from_json(const Json& j, PreferenceRecord& r);

void to_json(Json& j, const CriterionUnit& u);
void from_json(const Json& j, CriterionUnit& u);

void to_json(Json& j, const DimensionSummary& s);
void from_json(const Json& j, DimensionSummary& s);

void to_json(Json& j, const CoTTrace& t);
void from_json(const Json& j, CoTTrace& t);

void to_json(Json& j, const Violation& v);
// {"trace", "verdict", "answer_closed", "think_before_answer",
//  "criteria_found", "violations"}; the trace omits raw_text.
void to_json(Json& j, const ParseReport& r);

// Rounds to 9 significant digits so that serialized floats are byte-stable.
double round9(double v);

// Field accessors that convert nlohmann type errors into Error(kInvalidRecord).
const Json& require(const Json& obj, const char* key);
std::string require_string(const Json& obj, const char* key);

}  // namespace vaes
