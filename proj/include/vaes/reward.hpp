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

// Verifiable rewards for reward-model outputs.
//
//   base:  total = acc * r_acc + fmt * r_fmt
//   cot:   total = acc * r_acc + fmt * r_fmt + cst * r_cst + prc * r_prc
//
// Every term is bounded: r_fmt is {0, 1} for base and {0} or [-1, 1] for cot;
// the other terms lie in [-1, 1]. A term that needs something the output
// does not provide takes its minimum, so an unparseable output never outranks
// a parseable one.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "vaes/codec.hpp"
#include "vaes/embedding.hpp"
#include "vaes/parser.hpp"
#include "vaes/rubric.hpp"

namespace vaes {

struct RewardWeights {
  double lambda_acc = 1.0;
  double lambda_fmt = 0.1;
  double lambda_cst = 0.5;
  double lambda_prc = 1.0;
  // VA, VF, VP.
  std::array<double, kNumDimensions> dim_weights = {0.3, 0.2, 0.5};

  friend bool operator==(const RewardWeights&, const RewardWeights&) = default;
};

// Throws Error(kInvalidWeights) unless every weight is finite and positive and
// the dimension weights sum to 1 (within 1e-9).
void validate(const RewardWeights& w);

enum class Variant { kBase, kCoT };

std::string_view variant_name(Variant v) noexcept;
// Throws Error(kBadRequest) for anything but "base" / "cot".
Variant variant_from_name(std::string_view name);

struct RewardBreakdown {
  Variant variant = Variant::kBase;
  double r_fmt = 0.0;
  double r_acc = -1.0;
  std::optional<double> r_cst;  // cot only
  std::optional<double> r_prc;  // cot only
  double total = 0.0;
  // Number of dimensions whose prediction equals the label, 0..3.
  int acc_matches = 0;
  // Per-dimension pass flags behind r_cst, when a trace was available.
  std::optional<std::array<bool, kNumDimensions>> consistency;
  // Why a term fell back: MISSING_VERDICT, MISSING_TRACE, NO_TEACHER.
  std::vector<std::string> notes;
};

double reward_fmt_base(const ParseReport& report) noexcept;

// Count of dimensions where pred equals gt (ties match ties).
int accuracy_matches(const Verdict& pred, const Verdict& gt) noexcept;

// sum_d w_d * (2 * [pred_d == gt_d] - 1).
double reward_acc(const Verdict& pred, const Verdict& gt, const RewardWeights& w) noexcept;

// 0 unless <think> closes before <answer>; otherwise 2 * found / 15 - 1.
double reward_fmt_cot(const ParseReport& report) noexcept;

// A dimension passes when the sign of its unit-score sum, the summary's
// stated conclusion and the sign of the stated sum all agree, and the
// conclusion equals the answer for that dimension.
std::array<bool, kNumDimensions> consistency_by_dimension(const CoTTrace& trace);

// 2 * passed / 3 - 1.
double reward_cst(const CoTTrace& trace);

// Per criterion: weight 1 when scores agree, 0.5 for a VP criterion where both
// scores are nonzero but differ, else 0; the term is weight * (cos + rouge_l)
// with the cosine floored at 0 (an undefined cosine counts as 0). The mean of
// the 15 terms lies in [0, 2] and is shifted to [-1, 1].
double reward_prc(const CoTTrace& student, const CoTTrace& teacher,
                  const EmbeddingProvider& provider);

// Weight applied to criterion `c` of reward_prc.
double prc_weight(Criterion c, PrefScore student, PrefScore teacher) noexcept;

RewardBreakdown reward_total_base(const ParseReport& report, const Verdict& gt,
                                  const RewardWeights& w);

// Without a teacher r_prc is 0 and a NO_TEACHER note is added.
RewardBreakdown reward_total_cot(const ParseReport& report, const Verdict& gt,
                                 const std::optional<CoTTrace>& teacher,
                                 const EmbeddingProvider& provider,
                                 const RewardWeights& w);

void to_json(Json& j, const RewardWeights& w);
void to_json(Json& j, const RewardBreakdown& b);

}  // namespace vaes
