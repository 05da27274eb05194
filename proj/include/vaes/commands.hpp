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

// JSON-level operations shared by the batch commands and the stream server.
//
// Record formats (one JSON object per line):
//
//   parse       {"pair_id", "raw_output", "variant"?}
//   reward      {"pair_id", "raw_output", "variant", "gt", "teacher_trace"?}
//   synthesize  {"record", "samples": [...], "embedding_store"?}
//   eval        {"pair_id", "forward", "backward"?, "gt"}          accuracy
//               {"outcome"} | {"s1", "s2"}                          gsb
//   weights     {"group_id", "pairwise": [[...]]}                   win rates
//               {"group_id", "scores": [[...]]}                     win rates
//               {"group_id", "rewards": [...]}                      advantages
//               {"id", "s"} | {"id", "s1", "s2"} | {"id", "criteria"} rwr
//
// A record that cannot be processed yields {"error": {"code", "message"}}
// (plus "line" and any id field) in place of its result.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "vaes/codec.hpp"
#include "vaes/config.hpp"
#include "vaes/reward.hpp"
#include "vaes/synthesis.hpp"

namespace vaes {

enum class EvalMode { kAccuracy, kGsb };

// Throws Error(kBadConfig) on anything but "accuracy" / "gsb".
EvalMode eval_mode_from_name(std::string_view name);

class Engine {
 public:
  // Builds the embedding provider named by the config. Throws on a bad
  // provider (for example an unreadable store file).
  explicit Engine(EngineConfig config);

  const EngineConfig& config() const noexcept { return config_; }
  const EmbeddingProvider& provider() const noexcept { return *provider_; }

  // Per-record handlers. Each throws vaes::Error on a bad record.
  Json parse(const Json& record, Variant default_variant = Variant::kCoT) const;
  Json reward(const Json& record) const;
  // Relative store paths resolve against `base_dir`.
  Json synthesize(const Json& record, const std::filesystem::path& base_dir) const;
  Json weights(const Json& record) const;

  // Whole-set evaluation of already decoded records.
  Json eval_accuracy(const std::vector<PredictionPair>& records) const;
  Json eval_gsb(const std::vector<PrefScore>& outcomes) const;
  // {"records": [...]} or {"outcomes": [...]}, as the stream server sends.
  Json eval(const Json& payload) const;

 private:
  EngineConfig config_;
  std::shared_ptr<const EmbeddingProvider> provider_;
  mutable std::mutex loaders_mu_;
  mutable std::map<std::filesystem::path, std::unique_ptr<PoolLoader>> loaders_;
};

// {"code": "...", "message": "..."} for an exception.
Json error_json(const std::exception& e);

// Decodes one eval outcome line ({"outcome"} or {"s1", "s2"}).
PrefScore outcome_from_json(const Json& j);

struct BatchStats {
  std::size_t records = 0;
  std::size_t errors = 0;
};

// Line-oriented batch drivers. Blank lines are skipped; every other line
// produces exactly one output line, in input order.
BatchStats run_parse(const Engine& engine, std::istream& in, std::ostream& out,
                     Variant default_variant);
BatchStats run_reward(const Engine& engine, std::istream& in, std::ostream& out);
BatchStats run_weights(const Engine& engine, std::istream& in, std::ostream& out);
// Also fills `summary` with feasibility counts.
BatchStats run_synthesize(const Engine& engine, std::istream& in, std::ostream& out,
                          const std::filesystem::path& base_dir, SynthesisSummary& summary);
// Bad lines are reported inline; the final line is the aggregate report.
BatchStats run_eval(const Engine& engine, std::istream& in, std::ostream& out, EvalMode mode);

}  // namespace vaes
