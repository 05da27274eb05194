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

#include "support.hpp"

#include <array>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "vaes/parser.hpp"

#ifndef VAES_TEST_DATA_DIR
#error "VAES_TEST_DATA_DIR must be defined"
#endif

namespace vaes::testing {

namespace {

constexpr std::array<const char*, 40> kWords = {
    "the",     "warm",     "tones",   "video",  "sky",      "lighting", "dusk",
    "shadow",  "motion",   "camera",  "frame",  "contrast", "soft",     "sharp",
    "blur",    "golden",   "orange",  "cool",   "detail",   "texture",  "edges",
    "stable",  "flicker",  "close-up", "wide",  "angle",    "lens",     "depth",
    "subject", "centered", "balance", "rich",   "flat",     "noise",    "A",
    "B",       "meets",    "lacks",   "(ok)",   "naturally"};

// Lines that look like protocol fragments but are legal rationale text.
constexpr std::array<const char*, 9> kAwkwardLines = {
    "- leading hyphen", "--", "[Visual Aesthetics-C1.Color Quality]",
    "[Summary of Visual Aesthetics: =3 Video A is better than Video B]",
    "Score (A v.s. B): 1", "[bracketed] text", "tab\tinside", "\xc3\xbcnicode text",
    "Video A outperforms Video B in visual aesthetics"};

template <typename T, std::size_t N>
const T& pick(Rng& rng, const std::array<T, N>& a) {
  return a[std::uniform_int_distribution<std::size_t>(0, N - 1)(rng)];
}

}  // namespace

const char* const kWorkedExample =
    "[Visual Aesthetics-C2.Time Period]\n"
    "- The prompt requires dusk. Dusk standard: tones lean golden/orange; the sky gradually "
    "transitions into night; cool colors emerge while warm colors fade.\n"
    "- Video A: meets dusk characteristics; contains orange-gold elements; lighting is dim and "
    "gradually transitions toward night.\n"
    "- Video B: does not meet dusk characteristics; lacks orange-gold elements; sky is overly "
    "dark with lost detail.\n"
    "- Score (A v.s. B): 1 (A is clearly better)\n"
    "\n"
    "[Summary of Visual Aesthetics: In Visual Aesthetics, the sum over 6 criteria is "
    "-1+1+1+1+1+1=4>0. Therefore, the Visual Aesthetics score is positive, and Video A is "
    "better than Video B in Visual Aesthetics.]\n";

std::filesystem::path data_dir() { return VAES_TEST_DATA_DIR; }

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

PrefScore random_score(Rng& rng) {
  return static_cast<PrefScore>(std::uniform_int_distribution<int>(-1, 1)(rng));
}

Verdict random_verdict(Rng& rng) {
  Verdict v;
  v.va = random_score(rng);
  v.vf = random_score(rng);
  v.vp = random_score(rng);
  return v;
}

std::string random_sentence(Rng& rng, int min_words, int max_words) {
  const int n = std::uniform_int_distribution<int>(min_words, max_words)(rng);
  std::string s;
  for (int i = 0; i < n; ++i) {
    if (i > 0) s += ' ';
    s += pick(rng, kWords);
  }
  return s;
}

CoTTrace random_trace(Rng& rng) {
  CoTTrace t;
  std::bernoulli_distribution blank(0.15);
  std::bernoulli_distribution with_note(0.4);
  std::bernoulli_distribution awkward(0.05);
  for (int id = 1; id <= kNumCriteria; ++id) {
    CriterionUnit u;
    u.criterion = Criterion(id);
    for (std::string& line : u.lines) {
      line = blank(rng) ? "" : (awkward(rng) ? pick(rng, kAwkwardLines) : random_sentence(rng));
    }
    if (u.rationale().empty()) u.lines[0] = random_sentence(rng);
    u.score = random_score(rng);
    if (with_note(rng)) u.note = "(" + random_sentence(rng, 1, 4) + ")";
    t.units.push_back(std::move(u));
  }
  for (DimensionSummary& s : t.summaries) {
    s.stated_sum = std::uniform_int_distribution<int>(-6, 6)(rng);
    s.stated_conclusion = random_score(rng);
  }
  t.answer = random_verdict(rng);
  return t;
}

CoTTrace consistent_trace(Rng& rng) {
  CoTTrace t = random_trace(rng);
  for (Dimension d : kDimensions) {
    const int sum = t.score_sum(d);
    t.summaries[index_of(d)] = {sum, sign_of(sum)};
    t.answer.at(d) = sign_of(sum);
  }
  return t;
}

CoTTrace perfect_trace() {
  // VA sums to +2, VF to 0, VP to -1.
  constexpr std::array<int, kNumCriteria> kScores = {1, 1, 0, -1, 1, 0,   // VA
                                                     1, -1, 0, 0,         // VF
                                                     -1, 0, -1, 1, 0};    // VP
  CoTTrace t;
  for (int id = 1; id <= kNumCriteria; ++id) {
    const Criterion c(id);
    CriterionUnit u;
    u.criterion = c;
    const std::string name(c.name());
    u.lines = {"The prompt sets the standard for " + name + ".",
               "Video A: handles " + name + " as described in the prompt.",
               "Video B: handles " + name + " with visible differences from Video A."};
    u.score = static_cast<PrefScore>(kScores[static_cast<std::size_t>(id - 1)]);
    t.units.push_back(std::move(u));
  }
  for (Dimension d : kDimensions) {
    const int sum = t.score_sum(d);
    t.summaries[index_of(d)] = {sum, sign_of(sum)};
    t.answer.at(d) = sign_of(sum);
  }
  t.raw_text = serialize_trace(t);
  return t;
}

PreferenceRecord random_record(Rng& rng, const std::string& pair_id) {
  return {pair_id, random_sentence(rng, 4, 10), pair_id + "_a.mp4", pair_id + "_b.mp4",
          random_verdict(rng), std::nullopt};
}

SamplePool random_pool(Rng& rng, const std::string& pair_id, int m,
                       const EmbeddingProvider& provider) {
  PreferenceRecord record = random_record(rng, pair_id);
  std::vector<CoTTrace> samples;
  for (int j = 0; j < m; ++j) samples.push_back(random_trace(rng));
  return make_pool(std::move(record), std::move(samples), provider);
}

oracle::PoolOptimum oracle_synthesis(const SamplePool& pool) {
  std::vector<std::vector<std::vector<double>>> v(pool.size());
  std::vector<std::vector<int>> s(pool.size());
  for (std::size_t j = 0; j < pool.size(); ++j) {
    for (std::size_t i = 0; i < static_cast<std::size_t>(kNumCriteria); ++i) {
      const Embedding& e = pool.embedding(j, i);
      v[j].emplace_back(e.data(), e.data() + e.size());
      s[j].push_back(static_cast<int>(pool.samples[j].units[i].score));
    }
  }
  const Verdict& l = pool.record.expert_label;
  return oracle::solve_pool(v, s, {static_cast<int>(l.va), static_cast<int>(l.vf),
                                   static_cast<int>(l.vp)});
}

std::string fuzz_text(Rng& rng, std::size_t max_len) {
  static constexpr std::array<const char*, 22> kFragments = {
      "<think>", "</think>", "<answer>", "</answer>", "[Visual Aesthetics-C1.Color Quality]",
      "[Visual Fidelity-C7.Interaction Fidelity]", "[Visual Plausibility-C15.Detail Richness]",
      "- Score (A v.s. B): 1", "- Score (A v.s. B): -1", "- Score (A v.s. B):0", "\n- ",
      "[Summary of Visual Aesthetics: =3>0 Video A is better than Video B]",
      "Video A outperforms Video B in visual aesthetics", "underperforms", "comparable",
      "visual fidelity", "visual plausibility", "Score (A v.s. B): 17", "[", "]", "\n", "-"};
  const std::size_t len = std::uniform_int_distribution<std::size_t>(0, max_len)(rng);
  std::uniform_int_distribution<int> kind(0, 9);
  std::uniform_int_distribution<int> byte(0, 255);
  std::string s;
  while (s.size() < len) {
    const int k = kind(rng);
    if (k < 3) {
      s += pick(rng, kFragments);
    } else if (k < 5) {
      s += static_cast<char>(byte(rng));
    } else {
      s += pick(rng, kWords);
      s += ' ';
    }
  }
  return s;
}

}  // namespace vaes::testing
