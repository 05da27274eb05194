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

#include "vaes/commands.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "vaes/alignment.hpp"
#include "vaes/metrics.hpp"
#include "vaes/parser.hpp"

namespace vaes {

namespace {

[[noreturn]] void bad_record(const std::string& message) {
  throw Error(ErrorCode::kInvalidRecord, message);
}

double finite_number(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_number()) bad_record(std::string("field '") + key + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) bad_record(std::string("field '") + key + "' must be finite");
  return d;
}

template <typename Matrix>
Matrix square_matrix(const Json& j, const char* key) {
  const Json& rows = require(j, key);
  if (!rows.is_array() || rows.empty()) bad_record(std::string("'") + key + "' must be a square matrix");
  const auto g = static_cast<Eigen::Index>(rows.size());
  Matrix m(g, g);
  for (Eigen::Index a = 0; a < g; ++a) {
    const Json& row = rows[static_cast<std::size_t>(a)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != g) {
      bad_record(std::string("'") + key + "' must be a square matrix");
    }
    for (Eigen::Index b = 0; b < g; ++b) {
      const Json& v = row[static_cast<std::size_t>(b)];
      if constexpr (std::is_same_v<typename Matrix::Scalar, int>) {
        if (!v.is_number_integer()) bad_record(std::string("'") + key + "' entries must be integers");
        const auto n = v.get<long long>();
        if (n < -1 || n > 1) throw Error(ErrorCode::kBadGroup, "pairwise entries must be -1, 0 or 1");
        m(a, b) = static_cast<int>(n);
      } else {
        if (!v.is_number()) bad_record(std::string("'") + key + "' entries must be numbers");
        m(a, b) = v.get<double>();
      }
    }
  }
  return m;
}

Json vector_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(round9(v[i]));
  return out;
}

std::optional<CoTTrace> teacher_from(const Json& record) {
  auto it = record.find("teacher_trace");
  if (it == record.end() || it->is_null()) return std::nullopt;
  if (it->is_object()) return it->get<CoTTrace>();
  if (!it->is_string()) bad_record("'teacher_trace' must be trace text or a trace object");
  ParseReport rep = parse_cot(it->get<std::string>());
  if (!rep.trace) {
    std::string why = "teacher_trace is not a complete trace";
    if (!rep.violations.empty()) {
      why += ": " + std::string(violation_name(rep.violations.front().code)) + " at " +
             rep.violations.front().location;
    }
    throw Error(ErrorCode::kInvalidTrace, why);
  }
  return std::move(rep.trace);
}

// Copies the identifying field of `record`, if any, into `out`.
void copy_id(const Json& record, Json& out) {
  for (const char* key : {"pair_id", "group_id", "id"}) {
    if (record.is_object() && record.contains(key)) out[key] = record[key];
  }
}

template <typename Handle>
BatchStats for_each_line(std::istream& in, std::ostream& out, Handle&& handle) {
  BatchStats stats;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++stats.records;
    Json record = Json::parse(line, nullptr, false);
    Json result;
    if (record.is_discarded()) {
      result = Json{{"line", line_no},
                    {"error", {{"code", code_name(ErrorCode::kInvalidRecord)},
                               {"message", "line is not valid JSON"}}}};
    } else {
      try {
        result = handle(record);
      } catch (const std::exception& e) {
        result = Json::object();
        copy_id(record, result);
        result["line"] = line_no;
        result["error"] = error_json(e);
      }
    }
    if (result.contains("error")) ++stats.errors;
    out << result.dump() << '\n';
  }
  if (in.bad()) throw Error(ErrorCode::kIo, "read error on input stream");
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "write error on output stream");
  return stats;
}

}  // namespace

EvalMode eval_mode_from_name(std::string_view name) {
  if (name == "accuracy") return EvalMode::kAccuracy;
  if (name == "gsb") return EvalMode::kGsb;
  throw Error(ErrorCode::kBadConfig,
              "eval mode must be \"accuracy\" or \"gsb\", got \"" + std::string(name) + "\"");
}

Json error_json(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    return Json{{"code", code_name(err->code())}, {"message", err->what()}};
  }
  if (dynamic_cast<const nlohmann::json::exception*>(&e) != nullptr) {
    return Json{{"code", code_name(ErrorCode::kInvalidRecord)}, {"message", e.what()}};
  }
  return Json{{"code", "INTERNAL"}, {"message", e.what()}};
}

PrefScore outcome_from_json(const Json& j) {
  if (j.is_object() && j.contains("outcome")) return require(j, "outcome").get<PrefScore>();
  if (j.is_object() && j.contains("s1") && j.contains("s2")) {
    return sign_of(bidirectional_score(finite_number(j, "s1"), finite_number(j, "s2")));
  }
  bad_record("gsb records need 'outcome' or both 's1' and 's2'");
}

// ---------------------------------------------------------------------------

Engine::Engine(EngineConfig config)
    : config_(std::move(config)), provider_(make_provider(config_.provider)) {
  validate(config_.weights);
}

Json Engine::parse(const Json& record, Variant default_variant) const {
  const std::string raw = require_string(record, "raw_output");
  const Variant v = record.contains("variant")
                        ? variant_from_name(require_string(record, "variant"))
                        : default_variant;
  Json out = v == Variant::kBase ? Json(parse_base(raw)) : Json(parse_cot(raw));
  copy_id(record, out);
  out["variant"] = variant_name(v);
  return out;
}

Json Engine::reward(const Json& record) const {
  const std::string raw = require_string(record, "raw_output");
  const Variant v = variant_from_name(require_string(record, "variant"));
  const Verdict gt = require(record, "gt").get<Verdict>();
  RewardBreakdown b;
  if (v == Variant::kBase) {
    b = reward_total_base(parse_base(raw), gt, config_.weights);
  } else {
    b = reward_total_cot(parse_cot(raw), gt, teacher_from(record), *provider_, config_.weights);
  }
  Json out = b;
  copy_id(record, out);
  return out;
}

Json Engine::synthesize(const Json& record, const std::filesystem::path& base_dir) const {
  SamplePool pool;
  {
    std::lock_guard lock(loaders_mu_);
    auto& loader = loaders_[base_dir];
    if (!loader) loader = std::make_unique<PoolLoader>(base_dir, provider_);
    pool = loader->load(record);
  }
  return vaes::synthesize(pool);
}

Json Engine::weights(const Json& record) const {
  if (!record.is_object()) bad_record("weights records must be JSON objects");
  Json out = Json::object();
  copy_id(record, out);
  if (record.contains("pairwise") || record.contains("scores")) {
    const PairwiseMatrix m = record.contains("pairwise")
                                 ? PairwiseMatrix(square_matrix<Eigen::MatrixXi>(record, "pairwise"))
                                 : PairwiseMatrix::from_bidirectional(
                                       square_matrix<Eigen::MatrixXd>(record, "scores"));
    const Eigen::VectorXd rates = win_rates(m);
    out["win_rates"] = vector_json(rates);
    out["advantages"] = vector_json(group_advantages(rates, config_.std_mode));
    return out;
  }
  if (record.contains("rewards")) {
    const Json& r = require(record, "rewards");
    if (!r.is_array()) bad_record("'rewards' must be an array of numbers");
    std::vector<double> rewards;
    for (const Json& v : r) {
      if (!v.is_number()) bad_record("'rewards' must be an array of numbers");
      rewards.push_back(v.get<double>());
    }
    out["advantages"] = vector_json(group_advantages(rewards, config_.std_mode));
    return out;
  }
  if (record.contains("criteria")) {
    const Json& c = require(record, "criteria");
    if (!c.is_array()) bad_record("'criteria' must be an array of scores");
    std::vector<PrefScore> scores;
    for (const Json& v : c) scores.push_back(v.get<PrefScore>());
    out["weight"] = round9(rwr_weight_from_criteria(scores, config_.clamp_weights));
    return out;
  }
  if (record.contains("s") || (record.contains("s1") && record.contains("s2"))) {
    const double s = record.contains("s")
                         ? finite_number(record, "s")
                         : bidirectional_score(finite_number(record, "s1"), finite_number(record, "s2"));
    out["s"] = round9(s);
    out["weight"] = round9(rwr_weight_from_score(s, config_.clamp_weights));
    return out;
  }
  bad_record("weights records need 'pairwise', 'scores', 'rewards', 'criteria', 's' or 's1'/'s2'");
}

Json Engine::eval_accuracy(const std::vector<PredictionPair>& records) const {
  Json out{{"mode", "accuracy"},
           {"use_ties", config_.use_ties},
           {"report", accuracy_suite(records, config_.use_ties)},
           {"pb_variant", bias_variant_name(config_.pb_variant)}};
  bool all_backward = !records.empty();
  for (const PredictionPair& p : records) all_backward = all_backward && p.backward.has_value();
  out["position_bias"] =
      all_backward ? Json(round9(position_bias(records, config_.pb_variant))) : Json(nullptr);
  return out;
}

Json Engine::eval_gsb(const std::vector<PrefScore>& outcomes) const {
  const GsbCounts c = tally(outcomes);
  return Json{{"mode", "gsb"},
              {"gsb", round9(gsb(c))},
              {"good", c.good},
              {"same", c.same},
              {"bad", c.bad}};
}

Json Engine::eval(const Json& payload) const {
  if (payload.is_object() && payload.contains("records")) {
    const Json& r = require(payload, "records");
    if (!r.is_array()) bad_record("'records' must be an array");
    std::vector<PredictionPair> records;
    for (const Json& p : r) records.push_back(p.get<PredictionPair>());
    return eval_accuracy(records);
  }
  if (payload.is_object() && payload.contains("outcomes")) {
    const Json& r = require(payload, "outcomes");
    if (!r.is_array()) bad_record("'outcomes' must be an array");
    std::vector<PrefScore> outcomes;
    for (const Json& o : r) outcomes.push_back(o.is_object() ? outcome_from_json(o) : o.get<PrefScore>());
    return eval_gsb(outcomes);
  }
  bad_record("eval payloads need 'records' or 'outcomes'");
}

// ---------------------------------------------------------------------------

BatchStats run_parse(const Engine& engine, std::istream& in, std::ostream& out,
                     Variant default_variant) {
  return for_each_line(in, out, [&](const Json& r) { return engine.parse(r, default_variant); });
}

BatchStats run_reward(const Engine& engine, std::istream& in, std::ostream& out) {
  return for_each_line(in, out, [&](const Json& r) { return engine.reward(r); });
}

BatchStats run_weights(const Engine& engine, std::istream& in, std::ostream& out) {
  return for_each_line(in, out, [&](const Json& r) { return engine.weights(r); });
}

BatchStats run_synthesize(const Engine& engine, std::istream& in, std::ostream& out,
                          const std::filesystem::path& base_dir, SynthesisSummary& summary) {
  summary = {};
  BatchStats stats = for_each_line(in, out, [&](const Json& r) {
    Json result = engine.synthesize(r, base_dir);
    ++(result["fully_feasible"].get<bool>() ? summary.fully_feasible
                                            : summary.partially_infeasible);
    return result;
  });
  summary.pools = stats.records;
  summary.errors = stats.errors;
  return stats;
}

BatchStats run_eval(const Engine& engine, std::istream& in, std::ostream& out, EvalMode mode) {
  std::vector<PredictionPair> records;
  std::vector<PrefScore> outcomes;
  std::ostringstream inline_errors;
  BatchStats stats = for_each_line(in, inline_errors, [&](const Json& r) -> Json {
    if (mode == EvalMode::kAccuracy) {
      records.push_back(r.get<PredictionPair>());
    } else {
      outcomes.push_back(outcome_from_json(r));
    }
    return Json();
  });
  // Only the error lines are echoed; accepted records feed the aggregate.
  std::istringstream echoed(inline_errors.str());
  for (std::string line; std::getline(echoed, line);) {
    if (line != "null") out << line << '\n';
  }
  Json report;
  try {
    report = mode == EvalMode::kAccuracy ? engine.eval_accuracy(records) : engine.eval_gsb(outcomes);
  } catch (const std::exception& e) {
    report = Json{{"error", error_json(e)}};
    ++stats.errors;
  }
  out << report.dump() << '\n';
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "write error on output stream");
  return stats;
}

}  // namespace vaes
