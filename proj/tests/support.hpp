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

// Shared fixtures and seeded generators for the test suites.

#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "vaes/embedding.hpp"
#include "vaes/rubric.hpp"
#include "vaes/synthesis.hpp"

namespace vaes::testing {

using Rng = std::mt19937_64;

// Directory holding the checked-in golden corpus.
std::filesystem::path data_dir();

std::string read_file(const std::filesystem::path& p);

PrefScore random_score(Rng& rng);
Verdict random_verdict(Rng& rng);

// A short sentence drawn from a fixed vocabulary.
std::string random_sentence(Rng& rng, int min_words = 1, int max_words = 8);

// A valid trace with random lines, scores, stated summaries and answer.
CoTTrace random_trace(Rng& rng);

// A trace whose summaries and answer agree with its unit scores, so that
// reward_cst is 1.
CoTTrace consistent_trace(Rng& rng);

// The deterministic trace behind tests/data/perfect_cot.txt: consistent, with
// verdict (1, 0, -1).
CoTTrace perfect_trace();

// A valid record with a random expert label.
PreferenceRecord random_record(Rng& rng, const std::string& pair_id);

// A pool of `m` random samples embedded with `provider`.
SamplePool random_pool(Rng& rng, const std::string& pair_id, int m,
                       const EmbeddingProvider& provider);

// Runs the brute-force oracle on the raw contents of `pool`.
oracle::PoolOptimum oracle_synthesis(const SamplePool& pool);

// Random printable text with occasional protocol fragments, for fuzzing.
std::string fuzz_text(Rng& rng, std::size_t max_len);

// Worked example block for C2 and the VA summary line, as printed in the
// reference prompt.
extern const char* const kWorkedExample;

}  // namespace vaes::testing
