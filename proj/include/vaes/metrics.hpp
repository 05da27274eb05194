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

// Evaluation statistics over prediction/label sets.

#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>

#include "vaes/codec.hpp"
#include "vaes/error.hpp"
#include "vaes/rubric.hpp"

namespace vaes {

struct PredictionPair {
  std::string pair_id;
  Verdict forward;                 // videos in (A, B) order
  std::optional<Verdict> backward; // same pair judged in (B, A) order
  Verdict gt;
};

void from_json(const Json& j, PredictionPair& p);
void to_json(Json& j, const PredictionPair& p);

// Sign of va + vf + vp.
PrefScore overall_preference(const Verdict& v) noexcept;

struct EvalReport {
  // Overall-sign agreement over the counted records.
  double binary_acc = 0.0;
  // Overall-sign agreement with gt ties always excluded; absent when every
  // record is a gt tie.
  std::optional<double> binary_acc_no_ties;
  // Exact three-dimension agreement.
  double three_class_acc = 0.0;
  std::array<double, kNumDimensions> per_dim_acc{};
  double avg_acc = 0.0;
  std::size_t n_total = 0;   // records supplied
  std::size_t n_ties = 0;    // records whose gt overall preference is 0
  std::size_t n_counted = 0; // records behind every rate
};

// With use_ties = false, records whose gt overall preference is 0 are left
// out of every rate. Throws Error(kEmptyEvalSet) when nothing is left.
EvalReport accuracy_suite(std::span<const PredictionPair> preds, bool use_ties);

enum class BiasVariant {
  // Negate the backward verdict into the (A, B) frame and count records whose
  // overall sign disagrees with the forward one.
  kCanonical,
  // Count records whose raw forward and backward overall signs are equal.
  kRaw,
};

std::string_view bias_variant_name(BiasVariant v) noexcept;
// Throws Error(kBadConfig) on anything but "canonical" / "raw".
BiasVariant bias_variant_from_name(std::string_view name);

// Fraction of records counted by `variant`. Throws Error(kMissingBackward)
// when a record lacks its backward verdict and Error(kEmptyEvalSet) on an
// empty input.
double position_bias(std::span<const PredictionPair> preds,
                     BiasVariant variant = BiasVariant::kCanonical);

struct GsbCounts {
  std::size_t good = 0;
  std::size_t same = 0;
  std::size_t bad = 0;
};

GsbCounts tally(std::span<const PrefScore> outcomes) noexcept;

// (G - B) / (G + S + B). Throws Error(kEmptyEvalSet) on an empty list.
double gsb(std::span<const PrefScore> outcomes);
double gsb(const GsbCounts& counts);

// (s1 - s2) / 2, with s1 from the (new, old) order and s2 from (old, new).
constexpr double bidirectional_score(double s1, double s2) noexcept {
  return (s1 - s2) / 2.0;
}

void to_json(Json& j, const EvalReport& r);

}  // namespace vaes
