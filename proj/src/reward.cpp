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

#include "vaes/reward.hpp"

#include <cmath>

#include "vaes/similarity.hpp"

namespace vaes {

void validate(const RewardWeights& w) {
  auto check = [](double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0) {
      throw Error(ErrorCode::kInvalidWeights,
                  std::string(name) + " must be a finite positive number");
    }
  };
  check(w.lambda_acc, "lambda_acc");
  check(w.lambda_fmt, "lambda_fmt");
  check(w.lambda_cst, "lambda_cst");
  check(w.lambda_prc, "lambda_prc");
  for (double d : w.dim_weights) check(d, "dim_weights");
  const double sum = w.dim_weights[0] + w.dim_weights[1] + w.dim_weights[2];
  if (std::abs(sum - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidWeights, "dim_weights must sum to 1");
  }
}

std::string_view variant_name(Variant v) noexcept {
  return v == Variant::kBase ? "base" : "cot";
}

Variant variant_from_name(std::string_view name) {
  if (name == "base") return Variant::kBase;
  if (name == "cot") return Variant::kCoT;
  throw Error(ErrorCode::kBadRequest,
              "variant must be \"base\" or \"cot\", got \"" + std::string(name) + "\"");
}

double reward_fmt_base(const ParseReport& report) noexcept {
  return report.answer_closed && report.verdict ? 1.0 : 0.0;
}

int accuracy_matches(const Verdict& pred, const Verdict& gt) noexcept {
  int n = 0;
  for (Dimension d : kDimensions) n += pred.at(d) == gt.at(d) ? 1 : 0;
  return n;
}

double reward_acc(const Verdict& pred, const Verdict& gt, const RewardWeights& w) noexcept {
  double r = 0.0;
  for (Dimension d : kDimensions) {
    const double s = pred.at(d) == gt.at(d) ? 1.0 : 0.0;
    r += w.dim_weights[index_of(d)] * ((s - 0.5) * 2.0);
  }
  return r;
}

double reward_fmt_cot(const ParseReport& report) noexcept {
  if (!report.think_before_answer) return 0.0;
  return 2.0 * (static_cast<double>(report.criteria_count()) / kNumCriteria) - 1.0;
}

std::array<bool, kNumDimensions> consistency_by_dimension(const CoTTrace& trace) {
  std::array<bool, kNumDimensions> pass{};
  for (Dimension d : kDimensions) {
    const DimensionSummary& s = trace.summary(d);
    const PrefScore computed = sign_of(trace.score_sum(d));
    const bool internal = computed == s.stated_conclusion && sign_of(s.stated_sum) == s.stated_conclusion;
    const bool external = s.stated_conclusion == trace.answer.at(d);
    pass[index_of(d)] = internal && external;
  }
  return pass;
}

double reward_cst(const CoTTrace& trace) {
  int passed = 0;
  for (bool p : consistency_by_dimension(trace)) passed += p ? 1 : 0;
  return 2.0 * (static_cast<double>(passed) / kNumDimensions) - 1.0;
}

double prc_weight(Criterion c, PrefScore student, PrefScore teacher) noexcept {
  if (student == teacher) return 1.0;
  if (c.dimension() == Dimension::kVP && student != PrefScore::kTie &&
      teacher != PrefScore::kTie) {
    return 0.5;
  }
  return 0.0;
}

double reward_prc(const CoTTrace& student, const CoTTrace& teacher,
                  const EmbeddingProvider& provider) {
  validate(student);
  validate(teacher);
  std::vector<std::string> texts;
  texts.reserve(2 * kNumCriteria);
  for (const CriterionUnit& u : student.units) texts.push_back(u.rationale());
  for (const CriterionUnit& u : teacher.units) texts.push_back(u.rationale());
  const std::vector<Embedding> v = provider.embed(texts);

  double total = 0.0;
  for (std::size_t i = 0; i < static_cast<std::size_t>(kNumCriteria); ++i) {
    const CriterionUnit& s = student.units[i];
    const CriterionUnit& t = teacher.units[i];
    const double w = prc_weight(s.criterion, s.score, t.score);
    if (w == 0.0) continue;
    double cos = 0.0;
    try {
      cos = std::max(0.0, cosine(v[i], v[i + kNumCriteria]));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kZeroNorm) throw;
    }
    total += w * (cos + rouge_l(texts[i], texts[i + kNumCriteria]));
  }
  return total / kNumCriteria - 1.0;
}

RewardBreakdown reward_total_base(const ParseReport& report, const Verdict& gt,
                                  const RewardWeights& w) {
  RewardBreakdown b;
  b.variant = Variant::kBase;
  b.r_fmt = reward_fmt_base(report);
  if (report.verdict) {
    b.r_acc = reward_acc(*report.verdict, gt, w);
    b.acc_matches = accuracy_matches(*report.verdict, gt);
  } else {
    b.notes.emplace_back("MISSING_VERDICT");
  }
  b.total = w.lambda_acc * b.r_acc + w.lambda_fmt * b.r_fmt;
  return b;
}

RewardBreakdown reward_total_cot(const ParseReport& report, const Verdict& gt,
                                 const std::optional<CoTTrace>& teacher,
                                 const EmbeddingProvider& provider,
                                 const RewardWeights& w) {
  RewardBreakdown b;
  b.variant = Variant::kCoT;
  b.r_fmt = reward_fmt_cot(report);
  if (report.verdict && report.think_before_answer) {
    b.r_acc = reward_acc(*report.verdict, gt, w);
    b.acc_matches = accuracy_matches(*report.verdict, gt);
  } else {
    b.notes.emplace_back("MISSING_VERDICT");
  }
  if (report.trace) {
    b.consistency = consistency_by_dimension(*report.trace);
    b.r_cst = reward_cst(*report.trace);
    if (teacher) {
      b.r_prc = reward_prc(*report.trace, *teacher, provider);
    } else {
      b.r_prc = 0.0;
      b.notes.emplace_back("NO_TEACHER");
    }
  } else {
    b.r_cst = -1.0;
    b.r_prc = -1.0;
    b.notes.emplace_back("MISSING_TRACE");
  }
  b.total = w.lambda_acc * b.r_acc + w.lambda_fmt * b.r_fmt + w.lambda_cst * *b.r_cst +
            w.lambda_prc * *b.r_prc;
  return b;
}

void to_json(Json& j, const RewardWeights& w) {
  j = Json{{"lambda_acc", w.lambda_acc},
           {"lambda_fmt", w.lambda_fmt},
           {"lambda_cst", w.lambda_cst},
           {"lambda_prc", w.lambda_prc},
           {"dim_weights", w.dim_weights}};
}

void to_json(Json& j, const RewardBreakdown& b) {
  j = Json{{"variant", variant_name(b.variant)},
           {"r_fmt", round9(b.r_fmt)},
           {"r_acc", round9(b.r_acc)}};
  if (b.r_cst) j["r_cst"] = round9(*b.r_cst);
  if (b.r_prc) j["r_prc"] = round9(*b.r_prc);
  j["total"] = round9(b.total);
  j["acc_matches"] = b.acc_matches;
  if (b.consistency) {
    Json c = Json::object();
    for (Dimension d : kDimensions) c[std::string(dimension_code(d))] = (*b.consistency)[index_of(d)];
    j["consistency"] = std::move(c);
  }
  j["notes"] = b.notes;
}

}  // namespace vaes
