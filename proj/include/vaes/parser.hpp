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

// Rule-based extraction of verdicts and chain-of-thought traces from raw
// reward-model output.
//
// Two output protocols are understood:
//
//   base:  <answer>Video A underperforms Video B in visual aesthetics, while
//          the two are comparable in visual fidelity and visual
//          plausibility.</answer>
//
//   cot:   <think>
//          [Visual Aesthetics-C1.Color Quality]
//          - requirement
//          - how Video A fares
//          - how Video B fares
//          - Score (A v.s. B): 1 (short justification)
//          ...
//          [Summary of Visual Aesthetics: ... is -1+1+1+1+1+1=4>0 ...
//           Video A is better than Video B in Visual Aesthetics.]
//          ...
//          </think>
//          <answer>one sentence as above</answer>
//
// Parsing never throws on malformed text. Every defect is recorded as a
// Violation and the report carries whatever could be recovered.

#pragma once

#include <array>
#include <bitset>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vaes/rubric.hpp"

namespace vaes {

enum class ViolationCode {
  kMissingAnswer,
  kMissingDimension,
  kAmbiguousDimension,
  kDuplicateDimension,
  kMissingThink,
  kThinkAfterAnswer,
  kMissingCriterion,
  kDuplicateCriterion,
  kCriterionOrder,
  kBadTag,
  kWrongLineCount,
  kBadScoreLine,
  kEmptyRationale,
  kMissingSummary,
  kDuplicateSummary,
  kBadSummary,
};

// Stable wire name, e.g. "BAD_SCORE_LINE".
std::string_view violation_name(ViolationCode code) noexcept;

struct Violation {
  ViolationCode code;
  // "line 12", "C7", "VA", "answer" or "structure".
  std::string location;
  std::string message;
};

struct ParseReport {
  // Present only when the output satisfies the full protocol; implies an
  // empty violation list.
  std::optional<CoTTrace> trace;
  std::optional<Verdict> verdict;
  bool answer_closed = false;
  bool think_before_answer = false;
  std::bitset<kNumCriteria> criteria_found;
  // Units and summaries that parsed cleanly, even if the trace as a whole
  // did not.
  std::vector<CriterionUnit> units;
  std::array<std::optional<DimensionSummary>, kNumDimensions> summaries;
  std::vector<Violation> violations;

  bool has(ViolationCode code) const noexcept;
  int criteria_count() const noexcept {
    return static_cast<int>(criteria_found.count());
  }
  const CriterionUnit* unit(Criterion c) const noexcept;
};

ParseReport parse_base(std::string_view raw);
ParseReport parse_cot(std::string_view raw);

// Extracts a verdict from a single answer sentence. Violations go to `out`.
std::optional<Verdict> parse_answer_sentence(std::string_view sentence,
                                             std::vector<Violation>& out);

// Canonical one-sentence answer for a verdict; parse_answer_sentence inverts
// it exactly.
std::string answer_sentence(const Verdict& v);

// Canonical text for a trace. Throws Error(kInvalidTrace) when the trace
// breaks its invariants. parse_cot(serialize_trace(t)).trace equals t up to
// raw_text.
std::string serialize_trace(const CoTTrace& trace);

}  // namespace vaes
