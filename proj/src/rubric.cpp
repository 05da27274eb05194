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

#include "vaes/rubric.hpp"

#include <algorithm>
#include <cctype>

#include "vaes/error.hpp"

namespace vaes {

namespace {

constexpr std::array<std::string_view, kNumDimensions> kCodes = {"VA", "VF",
                                                                 "VP"};
constexpr std::array<std::string_view, kNumDimensions> kTitles = {
    "Visual Aesthetics", "Visual Fidelity", "Visual Plausibility"};

constexpr std::array<CriterionInfo, kNumCriteria> kCriteria = {{
    {1, "Color Quality", Dimension::kVA,
     "brightness, contrast, dynamic range, saturation and color harmony", ""},
    {2, "Time Periods", Dimension::kVA,
     "lighting and palette consistent with the requested time of day",
     "Time Period"},
    {3, "Lighting Style", Dimension::kVA,
     "practical or scene lighting that models depth and sets the mood", ""},
    {4, "Light Source", Dimension::kVA,
     "natural or artificial source type rendered with its characteristics",
     ""},
    {5, "Light intensity", Dimension::kVA,
     "soft versus hard light and the resulting shadow quality", ""},
    {6, "Light direction", Dimension::kVA,
     "direction of the key light and its modeling of the subject", ""},
    {7, "Interaction Fidelity", Dimension::kVF,
     "contact between subjects and objects without clipping or "
     "interpenetration",
     ""},
    {8, "Physical Adherence", Dimension::kVF,
     "motion and dynamics that obey physical laws", ""},
    {9, "Structural Stability", Dimension::kVF,
     "bodies and objects keep a stable, unbroken structure over time", ""},
    {10, "Sharpness", Dimension::kVF,
     "clarity of edges and texture without blur or smearing", ""},
    {11, "Shot size", Dimension::kVP,
     "framing scale appropriate to the subject and the request", ""},
    {12, "Shot Composition", Dimension::kVP,
     "placement and balance of elements within the frame", ""},
    {13, "Focal length", Dimension::kVP,
     "lens perspective and depth of field suited to the shot", ""},
    {14, "Camera Angle", Dimension::kVP,
     "camera height and angle that serve the subject", ""},
    {15, "Detail Richness", Dimension::kVP,
     "how filled the frame is and whether the background is coherent", ""},
}};

bool is_blank(std::string_view s) noexcept {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isspace(c) != 0;
  });
}

bool is_trimmed(std::string_view s) noexcept {
  if (s.empty()) return true;
  return std::isspace(static_cast<unsigned char>(s.front())) == 0 &&
         std::isspace(static_cast<unsigned char>(s.back())) == 0;
}

bool has_block_tag(std::string_view s) noexcept {
  for (std::string_view tag : {"<think>", "</think>", "<answer>", "</answer>"}) {
    if (s.find(tag) != std::string_view::npos) return true;
  }
  return false;
}

void check_line(std::string_view s, int criterion_id, const char* what) {
  if (s.find_first_of("\r\n") != std::string_view::npos || !is_trimmed(s) ||
      has_block_tag(s)) {
    throw Error(ErrorCode::kInvalidTrace,
                "C" + std::to_string(criterion_id) + ": " + what +
                    " must be a trimmed single line without block tags");
  }
}

}  // namespace

std::string_view dimension_code(Dimension d) noexcept {
  return kCodes[index_of(d)];
}

std::string_view dimension_title(Dimension d) noexcept {
  return kTitles[index_of(d)];
}

std::optional<Dimension> dimension_from_code(std::string_view code) noexcept {
  for (Dimension d : kDimensions) {
    if (kCodes[index_of(d)] == code) return d;
  }
  return std::nullopt;
}

std::optional<Dimension> dimension_from_title(std::string_view title) noexcept {
  for (Dimension d : kDimensions) {
    if (kTitles[index_of(d)] == title) return d;
  }
  return std::nullopt;
}

std::span<const CriterionInfo, kNumCriteria> criterion_table() noexcept {
  return kCriteria;
}

Criterion::Criterion(int id) : id_(id) {
  if (id < 1 || id > kNumCriteria) {
    throw Error(ErrorCode::kInvalidCriterion,
                "criterion id out of range: " + std::to_string(id));
  }
}

const CriterionInfo& Criterion::info() const noexcept {
  return kCriteria[index()];
}

Dimension dimension_of(Criterion c) noexcept { return c.dimension(); }

Dimension dimension_of(int criterion_id) {
  return Criterion(criterion_id).dimension();
}

CriterionRange criteria_of(Dimension d) noexcept {
  switch (d) {
    case Dimension::kVA: return {1, 6};
    case Dimension::kVF: return {7, 10};
    case Dimension::kVP: return {11, 15};
  }
  return {1, 0};
}

PrefScore pref_from_int(long long v) {
  if (v < -1 || v > 1) {
    throw Error(ErrorCode::kInvalidScore,
                "preference score must be -1, 0 or 1, got " + std::to_string(v));
  }
  return static_cast<PrefScore>(v);
}

PrefScore Verdict::at(Dimension d) const noexcept {
  switch (d) {
    case Dimension::kVA: return va;
    case Dimension::kVF: return vf;
    case Dimension::kVP: return vp;
  }
  return va;
}

PrefScore& Verdict::at(Dimension d) noexcept {
  switch (d) {
    case Dimension::kVA: return va;
    case Dimension::kVF: return vf;
    case Dimension::kVP: return vp;
  }
  return va;
}

Verdict negate_verdict(const Verdict& v) noexcept {
  return {negate(v.va), negate(v.vf), negate(v.vp)};
}

void validate(const PreferenceRecord& record) {
  if (record.pair_id.empty()) {
    throw Error(ErrorCode::kInvalidRecord, "pair_id must be nonempty");
  }
  if (record.video_a == record.video_b) {
    throw Error(ErrorCode::kInvalidRecord,
                record.pair_id + ": video_a and video_b must differ");
  }
}

std::string CriterionUnit::rationale() const {
  std::string out;
  for (const std::string& line : lines) {
    if (line.empty()) continue;
    if (!out.empty()) out += ' ';
    out += line;
  }
  return out;
}

int CoTTrace::score_sum(Dimension d) const {
  int sum = 0;
  for (const CriterionUnit& u : units) {
    if (u.criterion.dimension() == d) sum += to_int(u.score);
  }
  return sum;
}

void validate(const CriterionUnit& unit) {
  const int id = unit.criterion.id();
  for (const std::string& line : unit.lines) check_line(line, id, "rationale line");
  check_line(unit.note, id, "score note");
  if (is_blank(unit.rationale())) {
    throw Error(ErrorCode::kInvalidTrace,
                "C" + std::to_string(id) + ": rationale is blank");
  }
}

void validate(const CoTTrace& trace) {
  if (trace.units.size() != static_cast<std::size_t>(kNumCriteria)) {
    throw Error(ErrorCode::kInvalidTrace,
                "trace must hold 15 criterion units, got " +
                    std::to_string(trace.units.size()));
  }
  for (std::size_t i = 0; i < trace.units.size(); ++i) {
    if (trace.units[i].criterion.index() != i) {
      throw Error(ErrorCode::kInvalidTrace,
                  "criterion units must appear in C1..C15 order");
    }
    validate(trace.units[i]);
  }
}

bool same_content(const CoTTrace& a, const CoTTrace& b) noexcept {
  return a.units == b.units && a.summaries == b.summaries &&
         a.answer == b.answer;
}

}  // namespace vaes
