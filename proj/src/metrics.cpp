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

#include "vaes/metrics.hpp"

namespace vaes {

void from_json(const Json& j, PredictionPair& p) {
  p.pair_id = require_string(j, "pair_id");
  p.forward = require(j, "forward").get<Verdict>();
  p.backward.reset();
  if (auto it = j.find("backward"); it != j.end() && !it->is_null()) {
    p.backward = it->get<Verdict>();
  }
  p.gt = require(j, "gt").get<Verdict>();
}

void to_json(Json& j, const PredictionPair& p) {
  j = Json{{"pair_id", p.pair_id}, {"forward", p.forward}};
  if (p.backward) j["backward"] = *p.backward;
  j["gt"] = p.gt;
}

PrefScore overall_preference(const Verdict& v) noexcept {
  return sign_of(to_int(v.va) + to_int(v.vf) + to_int(v.vp));
}

EvalReport accuracy_suite(std::span<const PredictionPair> preds, bool use_ties) {
  EvalReport r;
  r.n_total = preds.size();
  std::size_t binary = 0;
  std::size_t binary_nt = 0;
  std::size_t exact = 0;
  std::array<std::size_t, kNumDimensions> dim{};
  for (const PredictionPair& p : preds) {
    const PrefScore gt_overall = overall_preference(p.gt);
    const bool tie = gt_overall == PrefScore::kTie;
    const bool sign_ok = overall_preference(p.forward) == gt_overall;
    if (tie) ++r.n_ties;
    if (!tie && sign_ok) ++binary_nt;
    if (tie && !use_ties) continue;
    ++r.n_counted;
    if (sign_ok) ++binary;
    if (p.forward == p.gt) ++exact;
    for (Dimension d : kDimensions) dim[index_of(d)] += p.forward.at(d) == p.gt.at(d) ? 1 : 0;
  }
  if (r.n_counted == 0) {
    throw Error(ErrorCode::kEmptyEvalSet,
                use_ties || r.n_total == 0 ? "no records to evaluate"
                                           : "every record is a tie and ties are excluded");
  }
  const auto n = static_cast<double>(r.n_counted);
  r.binary_acc = static_cast<double>(binary) / n;
  if (r.n_total > r.n_ties) {
    r.binary_acc_no_ties =
        static_cast<double>(binary_nt) / static_cast<double>(r.n_total - r.n_ties);
  }
  r.three_class_acc = static_cast<double>(exact) / n;
  double sum = 0.0;
  for (std::size_t d = 0; d < kNumDimensions; ++d) {
    r.per_dim_acc[d] = static_cast<double>(dim[d]) / n;
    sum += r.per_dim_acc[d];
  }
  r.avg_acc = sum / kNumDimensions;
  return r;
}

std::string_view bias_variant_name(BiasVariant v) noexcept {
  return v == BiasVariant::kCanonical ? "canonical" : "raw";
}

BiasVariant bias_variant_from_name(std::string_view name) {
  if (name == "canonical") return BiasVariant::kCanonical;
  if (name == "raw") return BiasVariant::kRaw;
  throw Error(ErrorCode::kBadConfig,
              "pb variant must be \"canonical\" or \"raw\", got \"" + std::string(name) + "\"");
}

double position_bias(std::span<const PredictionPair> preds, BiasVariant variant) {
  if (preds.empty()) throw Error(ErrorCode::kEmptyEvalSet, "no records to evaluate");
  std::size_t counted = 0;
  for (const PredictionPair& p : preds) {
    if (!p.backward) {
      throw Error(ErrorCode::kMissingBackward, "record " + p.pair_id + " has no backward verdict");
    }
    const PrefScore fwd = overall_preference(p.forward);
    if (variant == BiasVariant::kCanonical) {
      counted += fwd != overall_preference(negate_verdict(*p.backward)) ? 1 : 0;
    } else {
      counted += fwd == overall_preference(*p.backward) ? 1 : 0;
    }
  }
  return static_cast<double>(counted) / static_cast<double>(preds.size());
}

GsbCounts tally(std::span<const PrefScore> outcomes) noexcept {
  GsbCounts c;
  for (PrefScore s : outcomes) {
    switch (s) {
      case PrefScore::kABetter: ++c.good; break;
      case PrefScore::kTie: ++c.same; break;
      case PrefScore::kBBetter: ++c.bad; break;
    }
  }
  return c;
}

double gsb(const GsbCounts& c) {
  const std::size_t n = c.good + c.same + c.bad;
  if (n == 0) throw Error(ErrorCode::kEmptyEvalSet, "no outcomes to score");
  return (static_cast<double>(c.good) - static_cast<double>(c.bad)) / static_cast<double>(n);
}

double gsb(std::span<const PrefScore> outcomes) { return gsb(tally(outcomes)); }

void to_json(Json& j, const EvalReport& r) {
  Json per_dim = Json::object();
  for (Dimension d : kDimensions) {
    per_dim[std::string(dimension_code(d))] = round9(r.per_dim_acc[index_of(d)]);
  }
  j = Json{{"binary_acc", round9(r.binary_acc)},
           {"binary_acc_no_ties",
            r.binary_acc_no_ties ? Json(round9(*r.binary_acc_no_ties)) : Json(nullptr)},
           {"three_class_acc", round9(r.three_class_acc)},
           {"per_dim_acc", std::move(per_dim)},
           {"avg_acc", round9(r.avg_acc)},
           {"n_total", r.n_total},
           {"n_ties", r.n_ties},
           {"n_counted", r.n_counted}};
}

}  // namespace vaes
