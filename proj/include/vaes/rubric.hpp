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

// Rubric taxonomy and the record types shared by every other module.
//
// Scores are always "A relative to B": +1 means the first-listed video is
// better. Swapping the two videos negates every score.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vaes/error.hpp"

namespace vaes {

// ---------------------------------------------------------------------------
// Dimensions

enum class Dimension : std::uint8_t { kVA = 0, kVF = 1, kVP = 2 };

inline constexpr std::size_t kNumDimensions = 3;
inline constexpr std::array<Dimension, kNumDimensions> kDimensions = {
    Dimension::kVA, Dimension::kVF, Dimension::kVP};

constexpr std::size_t index_of(Dimension d) noexcept {
  return static_cast<std::size_t>(d);
}

// "VA" / "VF" / "VP".
std::string_view dimension_code(Dimension d) noexcept;
// "Visual Aesthetics" / "Visual Fidelity" / "Visual Plausibility".
std::string_view dimension_title(Dimension d) noexcept;
std::optional<Dimension> dimension_from_code(std::string_view code) noexcept;
std::optional<Dimension> dimension_from_title(std::string_view title) noexcept;

// ---------------------------------------------------------------------------
// Criteria

inline constexpr int kNumCriteria = 15;

struct CriterionInfo {
  int id;
  std::string_view name;
  Dimension dimension;
  std::string_view definition;
  // Alternate tag spelling accepted by the parser; empty when none.
  std::string_view alias;
};

// The fixed C1..C15 table, ordered by id.
std::span<const CriterionInfo, kNumCriteria> criterion_table() noexcept;

class Criterion {
 public:
  // Throws Error(kInvalidCriterion) unless 1 <= id <= 15.
  explicit Criterion(int id);

  int id() const noexcept { return id_; }
  std::size_t index() const noexcept { return static_cast<std::size_t>(id_ - 1); }
  const CriterionInfo& info() const noexcept;
  std::string_view name() const noexcept { return info().name; }
  Dimension dimension() const noexcept { return info().dimension; }

  friend bool operator==(Criterion, Criterion) = default;
  friend auto operator<=>(Criterion, Criterion) = default;

 private:
  int id_;
};

Dimension dimension_of(Criterion c) noexcept;
// Throws Error(kInvalidCriterion) for ids outside 1..15.
Dimension dimension_of(int criterion_id);

// Inclusive id range of the criteria belonging to `d`.
struct CriterionRange {
  int first;
  int last;
  constexpr int size() const noexcept { return last - first + 1; }
};
CriterionRange criteria_of(Dimension d) noexcept;

// ---------------------------------------------------------------------------
// Scores and verdicts

enum class PrefScore : std::int8_t { kBBetter = -1, kTie = 0, kABetter = 1 };

constexpr int to_int(PrefScore s) noexcept { return static_cast<int>(s); }

constexpr PrefScore negate(PrefScore s) noexcept {
  return static_cast<PrefScore>(-to_int(s));
}

template <typename T>
constexpr PrefScore sign_of(T v) noexcept {
  return v > T{0} ? PrefScore::kABetter
                  : (v < T{0} ? PrefScore::kBBetter : PrefScore::kTie);
}

// Throws Error(kInvalidScore) unless v is -1, 0 or 1.
PrefScore pref_from_int(long long v);

struct Verdict {
  PrefScore va = PrefScore::kTie;
  PrefScore vf = PrefScore::kTie;
  PrefScore vp = PrefScore::kTie;

  PrefScore at(Dimension d) const noexcept;
  PrefScore& at(Dimension d) noexcept;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

Verdict negate_verdict(const Verdict& v) noexcept;

// ---------------------------------------------------------------------------
// Records

struct PreferenceRecord {
  std::string pair_id;
  std::string prompt;
  std::string video_a;
  std::string video_b;
  Verdict expert_label;
  std::optional<std::string> expert_reason;

  friend bool operator==(const PreferenceRecord&,
                         const PreferenceRecord&) = default;
};

// Throws Error(kInvalidRecord) on an empty pair id or video_a == video_b.
void validate(const PreferenceRecord& record);

// One criterion of a chain-of-thought: three reasoning lines plus the score
// line. The rationale used for similarity is the three lines joined.
struct CriterionUnit {
  Criterion criterion{1};
  std::array<std::string, 3> lines;
  PrefScore score = PrefScore::kTie;
  // Free text following the score value on the score line.
  std::string note;

  std::string rationale() const;

  friend bool operator==(const CriterionUnit&, const CriterionUnit&) = default;
};

struct DimensionSummary {
  int stated_sum = 0;
  PrefScore stated_conclusion = PrefScore::kTie;

  friend bool operator==(const DimensionSummary&,
                         const DimensionSummary&) = default;
};

struct CoTTrace {
  // Exactly 15 units in C1..C15 order.
  std::vector<CriterionUnit> units;
  std::array<DimensionSummary, kNumDimensions> summaries;
  Verdict answer;
  std::string raw_text;

  const DimensionSummary& summary(Dimension d) const noexcept {
    return summaries[index_of(d)];
  }
  // Sum of the unit scores that belong to `d`.
  int score_sum(Dimension d) const;

  friend bool operator==(const CoTTrace&, const CoTTrace&) = default;
};

// Throws Error(kInvalidTrace) when a unit invariant is broken: wrong count or
// order, a blank rationale, or text that cannot survive serialization.
void validate(const CriterionUnit& unit);
void validate(const CoTTrace& trace);

// Equality ignoring raw_text.
bool same_content(const CoTTrace& a, const CoTTrace& b) noexcept;

}  // namespace vaes
