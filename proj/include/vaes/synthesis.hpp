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

// Self-consistency synthesis of chain-of-thought training data.
//
// Given M sampled traces for one video pair, pick one sample per criterion so
// that the summed consistency score is maximal while every dimension's score
// sum has the sign of the expert label (strictly positive, strictly negative,
// or exactly zero for a tie). The problem separates over dimensions, so each
// block of criteria is solved on its own by exhaustive enumeration.

#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "vaes/codec.hpp"
#include "vaes/embedding.hpp"
#include "vaes/rubric.hpp"

namespace vaes {

struct SamplePool {
  PreferenceRecord record;
  std::vector<CoTTrace> samples;
  // Row-major M x 15 grid: embeddings[j * 15 + i] is the rationale embedding
  // of criterion i in sample j.
  std::vector<Embedding> embeddings;

  std::size_t size() const noexcept { return samples.size(); }
  const Embedding& embedding(std::size_t j, std::size_t i) const {
    return embeddings[j * kNumCriteria + i];
  }
};

// Throws Error(kInvalidPool) when the pool is empty, a sample breaks the trace
// invariants or the embedding grid is not exactly M x 15.
void validate(const SamplePool& pool);

// Embeds every rationale of every sample with `provider`.
SamplePool make_pool(PreferenceRecord record, std::vector<CoTTrace> samples,
                     const EmbeddingProvider& provider);

// Largest pool accepted; keeps the 6-criterion block below M^6 = 16.7M.
inline constexpr std::size_t kMaxPoolSize = 16;

using ConsistencyMatrix = Eigen::Matrix<double, Eigen::Dynamic, kNumCriteria>;

struct ConsistencyScores {
  ConsistencyMatrix f;
  std::vector<std::string> warnings;
};

// f(j, i) = cosine(v_{j,i}, mean_j v_{j,i}). A cell whose cosine is undefined
// (zero norm) scores -1 and adds a warning.
ConsistencyScores consistency_scores(const SamplePool& pool);

// Objectives closer than this are ties. Keeps the tie-break stable when equal
// cosines differ only by rounding (M = 2 with unit vectors, for example).
inline constexpr double kObjectiveTolerance = 1e-12;

// Result of solving one block of criteria.
struct BlockSelection {
  std::vector<int> choice;  // 0-based sample index per column
  double objective = 0.0;
  int score_sum = 0;
  bool feasible = false;
};

// Does a score sum satisfy the sign constraint for `label`?
constexpr bool satisfies(int score_sum, PrefScore label) noexcept {
  return sign_of(score_sum) == label;
}

// Exhaustive search over the M^k column choices of an M x k block. `f` holds
// consistency scores and `scores` the matching criterion scores. The maximum
// of the column-ordered sum of f among choices whose score sum satisfies
// `label` wins; ties (within kObjectiveTolerance) go to the
// lexicographically smallest index tuple. When
// no choice is feasible the unconstrained maximum is returned with
// feasible = false.
BlockSelection select_dimension(const Eigen::Ref<const Eigen::MatrixXd>& f,
                                const Eigen::Ref<const Eigen::MatrixXi>& scores,
                                PrefScore label);

struct SynthesisResult {
  std::string pair_id;
  // 0-based sample index chosen for each criterion, C1..C15.
  std::array<int, kNumCriteria> selection{};
  CoTTrace synthesized;
  double objective = 0.0;
  std::array<bool, kNumDimensions> feasible{};
  std::vector<std::string> warnings;

  bool fully_feasible() const noexcept {
    return feasible[0] && feasible[1] && feasible[2];
  }
};

SynthesisResult synthesize(const SamplePool& pool);

struct SynthesisSummary {
  std::size_t pools = 0;
  std::size_t fully_feasible = 0;
  std::size_t partially_infeasible = 0;
  std::size_t errors = 0;
};

struct PoolError {
  std::size_t index = 0;
  std::string pair_id;
  ErrorCode code = ErrorCode::kInvalidPool;
  std::string message;
};

struct BatchSynthesis {
  // Successful results in input order.
  std::vector<SynthesisResult> results;
  std::vector<PoolError> errors;
  SynthesisSummary summary;
};

// Solves each pool independently; a pool that fails is recorded in `errors`
// and the batch continues.
BatchSynthesis synthesize_batch(const std::vector<SamplePool>& pools);

// Resolves the "embedding_store" field of pool lines. Stores are loaded once
// per path; relative paths resolve against `base_dir`.
class PoolLoader {
 public:
  PoolLoader(std::filesystem::path base_dir,
             std::shared_ptr<const EmbeddingProvider> default_provider);

  // Parses {"record", "samples": [raw CoT texts], "embedding_store"?}.
  // "embedding_store" is "fallback" or a store path; when absent the
  // default provider is used. Throws Error(kInvalidPool) naming the first
  // sample that does not parse into a complete trace.
  SamplePool load(const Json& line);

 private:
  std::shared_ptr<const EmbeddingProvider> provider_for(const Json& line);

  std::filesystem::path base_dir_;
  std::shared_ptr<const EmbeddingProvider> default_provider_;
  std::shared_ptr<const EmbeddingProvider> fallback_;
  std::map<std::filesystem::path, std::shared_ptr<const EmbeddingProvider>> stores_;
};

void to_json(Json& j, const SynthesisResult& r);
void to_json(Json& j, const SynthesisSummary& s);

}  // namespace vaes
