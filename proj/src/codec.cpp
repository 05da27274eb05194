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

#include "vaes/codec.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "vaes/error.hpp"

namespace vaes {

namespace {

[[noreturn]] void bad(const std::string& what) {
  throw Error(ErrorCode::kInvalidRecord, what);
}

long long require_integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  return j.get<long long>();
}

}  // namespace

const Json& require(const Json& obj, const char* key) {
  if (!obj.is_object()) bad(std::string("expected an object holding '") + key + "'");
  auto it = obj.find(key);
  if (it == obj.end()) bad(std::string("missing field '") + key + "'");
  return *it;
}

std::string require_string(const Json& obj, const char* key) {
  const Json& v = require(obj, key);
  if (!v.is_string()) bad(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

double round9(double v) {
  if (!std::isfinite(v) || v == 0.0) return v == 0.0 ? 0.0 : v;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return std::strtod(buf, nullptr);
}

void to_json(Json& j, Dimension d) { j = std::string(dimension_code(d)); }

void from_json(const Json& j, Dimension& d) {
  if (!j.is_string()) bad("dimension must be a string");
  auto parsed = dimension_from_code(j.get<std::string>());
  if (!parsed) bad("unknown dimension '" + j.get<std::string>() + "'");
  d = *parsed;
}

void to_json(Json& j, PrefScore s) { j = to_int(s); }

void from_json(const Json& j, PrefScore& s) {
  s = pref_from_int(require_integer(j, "preference score"));
}

void to_json(Json& j, const Verdict& v) {
  j = Json{{"va", v.va}, {"vf", v.vf}, {"vp", v.vp}};
}

void from_json(const Json& j, Verdict& v) {
  require(j, "va").get_to(v.va);
  require(j, "vf").get_to(v.vf);
  require(j, "vp").get_to(v.vp);
}

void to_json(Json& j, const PreferenceRecord& r) {
  j = Json{{"pair_id", r.pair_id},
           {"prompt", r.prompt},
           {"video_a", r.video_a},
           {"video_b", r.video_b},
           {"expert_label", r.expert_label}};
  if (r.expert_reason) j["expert_reason"] = *r.expert_reason;
}

void from_json(const Json& j, PreferenceRecord& r) {
  r.pair_id = require_string(j, "pair_id");
  r.prompt = j.contains("prompt") ? require_string(j, "prompt") : std::string();
  r.video_a = require_string(j, "video_a");
  r.video_b = require_string(j, "video_b");
  require(j, "expert_label").get_to(r.expert_label);
  r.expert_reason.reset();
  if (j.contains("expert_reason") && !j["expert_reason"].is_null()) {
    r.expert_reason = require_string(j, "expert_reason");
  }
  validate(r);
}

void to_json(Json& j, const CriterionUnit& u) {
  j = Json{{"criterion", u.criterion.id()},
           {"name", u.criterion.name()},
           {"lines", u.lines},
           {"rationale", u.rationale()},
           {"score", u.score},
           {"note", u.note}};
}

void from_json(const Json& j, CriterionUnit& u) {
  u.criterion = Criterion(static_cast<int>(require_integer(require(j, "criterion"), "criterion")));
  const Json& lines = require(j, "lines");
  if (!lines.is_array() || lines.size() != 3) bad("unit 'lines' must be an array of 3 strings");
  for (std::size_t i = 0; i < 3; ++i) {
    if (!lines[i].is_string()) bad("unit 'lines' must be an array of 3 strings");
    u.lines[i] = lines[i].get<std::string>();
  }
  require(j, "score").get_to(u.score);
  u.note = j.contains("note") ? require_string(j, "note") : std::string();
}

void to_json(Json& j, const DimensionSummary& s) {
  j = Json{{"stated_sum", s.stated_sum},
           {"stated_conclusion", s.stated_conclusion}};
}

void from_json(const Json& j, DimensionSummary& s) {
  s.stated_sum = static_cast<int>(require_integer(require(j, "stated_sum"), "stated_sum"));
  require(j, "stated_conclusion").get_to(s.stated_conclusion);
}

void to_json(Json& j, const CoTTrace& t) {
  Json summaries = Json::object();
  for (Dimension d : kDimensions) {
    summaries[std::string(dimension_code(d))] = t.summary(d);
  }
  j = Json{{"units", t.units},
           {"summaries", std::move(summaries)},
           {"answer", t.answer},
           {"raw_text", t.raw_text}};
}

void from_json(const Json& j, CoTTrace& t) {
  const Json& units = require(j, "units");
  if (!units.is_array()) bad("'units' must be an array");
  t.units.clear();
  for (const Json& u : units) t.units.push_back(u.get<CriterionUnit>());
  const Json& summaries = require(j, "summaries");
  for (Dimension d : kDimensions) {
    std::string code(dimension_code(d));
    require(summaries, code.c_str()).get_to(t.summaries[index_of(d)]);
  }
  require(j, "answer").get_to(t.answer);
  t.raw_text = j.contains("raw_text") ? require_string(j, "raw_text") : std::string();
  validate(t);
}

void to_json(Json& j, const Violation& v) {
  j = Json{{"code", violation_name(v.code)}, {"location", v.location}, {"message", v.message}};
}

void to_json(Json& j, const ParseReport& r) {
  Json trace(nullptr);
  if (r.trace) {
    trace = *r.trace;
    trace.erase("raw_text");
  }
  Json found = Json::array();
  for (int id = 1; id <= kNumCriteria; ++id) {
    if (r.criteria_found.test(static_cast<std::size_t>(id - 1))) found.push_back(id);
  }
  j = Json{{"trace", std::move(trace)},
           {"verdict", r.verdict ? Json(*r.verdict) : Json(nullptr)},
           {"answer_closed", r.answer_closed},
           {"think_before_answer", r.think_before_answer},
           {"criteria_found", std::move(found)},
           {"violations", r.violations}};
}

}  // namespace vaes
