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

#include "vaes/synthesis.hpp"

#include <cmath>

#include "vaes/parser.hpp"
#include "vaes/similarity.hpp"

namespace vaes {

namespace {

[[noreturn]] void bad_pool(const std::string& message) {
  throw Error(ErrorCode::kInvalidPool, message);
}

std::string cell_name(std::size_t j, std::size_t i) {
  return "C" + std::to_string(i + 1) + " sample " + std::to_string(j + 1);
}

}  // namespace

void validate(const SamplePool& pool) {
  validate(pool.record);
  if (pool.samples.empty()) bad_pool("pool has no samples");
  if (pool.samples.size() > kMaxPoolSize) {
    bad_pool("pool has " + std::to_string(pool.samples.size()) +
             " samples; at most " + std::to_string(kMaxPoolSize) + " are supported");
  }
  for (std::size_t j = 0; j < pool.samples.size(); ++j) {
    try {
      validate(pool.samples[j]);
    } catch (const Error& e) {
      bad_pool("sample " + std::to_string(j + 1) + ": " + e.what());
    }
  }
  if (pool.embeddings.size() != pool.samples.size() * kNumCriteria) {
    bad_pool("embedding grid has " + std::to_string(pool.embeddings.size()) +
             " cells, expected " + std::to_string(pool.samples.size() * kNumCriteria));
  }
  const Eigen::Index dim = pool.embeddings.front().size();
  for (std::size_t c = 0; c < pool.embeddings.size(); ++c) {
    const Embedding& v = pool.embeddings[c];
    if (v.size() == 0 || v.size() != dim) {
      bad_pool(cell_name(c / kNumCriteria, c % kNumCriteria) + ": embedding dimension mismatch");
    }
    if (!v.allFinite()) {
      bad_pool(cell_name(c / kNumCriteria, c % kNumCriteria) + ": non-finite embedding");
    }
  }
}

SamplePool make_pool(PreferenceRecord record, std::vector<CoTTrace> samples,
                     const EmbeddingProvider& provider) {
  std::vector<std::string> texts;
  texts.reserve(samples.size() * kNumCriteria);
  for (const CoTTrace& s : samples) {
    if (s.units.size() != static_cast<std::size_t>(kNumCriteria)) {
      bad_pool("sample does not hold 15 criterion units");
    }
    for (const CriterionUnit& u : s.units) texts.push_back(u.rationale());
  }
  SamplePool pool{std::move(record), std::move(samples), {}};
  if (!texts.empty()) pool.embeddings = provider.embed(texts);
  validate(pool);
  return pool;
}

ConsistencyScores consistency_scores(const SamplePool& pool) {
  const std::size_t m = pool.size();
  ConsistencyScores out;
  out.f.resize(static_cast<Eigen::Index>(m), kNumCriteria);
  std::vector<Embedding> column(m);
  for (std::size_t i = 0; i < static_cast<std::size_t>(kNumCriteria); ++i) {
    for (std::size_t j = 0; j < m; ++j) column[j] = pool.embedding(j, i);
    const Embedding centre = mean_vector(column);
    for (std::size_t j = 0; j < m; ++j) {
      double f;
      try {
        f = cosine(column[j], centre);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kZeroNorm) throw;
        f = -1.0;
        out.warnings.push_back(cell_name(j, i) + ": zero-norm embedding, consistency set to -1");
      }
      out.f(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = f;
    }
  }
  return out;
}

BlockSelection select_dimension(const Eigen::Ref<const Eigen::MatrixXd>& f,
                                const Eigen::Ref<const Eigen::MatrixXi>& scores,
                                PrefScore label) {
  const Eigen::Index m = f.rows();
  const Eigen::Index k = f.cols();
  if (m < 1 || k < 1 || scores.rows() != m || scores.cols() != k) {
    bad_pool("selection block must be a nonempty M x k matrix with matching scores");
  }
  double combos = std::pow(static_cast<double>(m), static_cast<double>(k));
  if (combos > static_cast<double>(1 << 24)) bad_pool("selection block too large to enumerate");

  std::vector<int> idx(static_cast<std::size_t>(k), 0);
  BlockSelection best_feasible;
  BlockSelection best_any;
  bool have_feasible = false;
  bool have_any = false;
  // Odometer with the last column turning fastest visits tuples in
  // lexicographic order; replacing only on strict improvement keeps the
  // smallest tuple among equal objectives.
  for (;;) {
    double obj = 0.0;
    int sum = 0;
    for (Eigen::Index c = 0; c < k; ++c) {
      obj += f(idx[static_cast<std::size_t>(c)], c);
      sum += scores(idx[static_cast<std::size_t>(c)], c);
    }
    if (!have_any || obj > best_any.objective + kObjectiveTolerance) {
      best_any = {idx, obj, sum, false};
      have_any = true;
    }
    if (satisfies(sum, label) &&
        (!have_feasible || obj > best_feasible.objective + kObjectiveTolerance)) {
      best_feasible = {idx, obj, sum, true};
      have_feasible = true;
    }
    Eigen::Index c = k - 1;
    while (c >= 0 && ++idx[static_cast<std::size_t>(c)] == m) {
      idx[static_cast<std::size_t>(c)] = 0;
      --c;
    }
    if (c < 0) break;
  }
  return have_feasible ? best_feasible : best_any;
}

SynthesisResult synthesize(const SamplePool& pool) {
  validate(pool);
  const std::size_t m = pool.size();
  ConsistencyScores cs = consistency_scores(pool);

  Eigen::MatrixXi scores(static_cast<Eigen::Index>(m), kNumCriteria);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < static_cast<std::size_t>(kNumCriteria); ++i) {
      scores(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) =
          to_int(pool.samples[j].units[i].score);
    }
  }

  SynthesisResult r;
  r.pair_id = pool.record.pair_id;
  r.warnings = std::move(cs.warnings);
  r.synthesized.units.reserve(kNumCriteria);
  for (Dimension d : kDimensions) {
    const CriterionRange range = criteria_of(d);
    const Eigen::Index first = range.first - 1;
    const PrefScore label = pool.record.expert_label.at(d);
    const BlockSelection b = select_dimension(cs.f.middleCols(first, range.size()),
                                              scores.middleCols(first, range.size()), label);
    r.objective += b.objective;
    r.feasible[index_of(d)] = b.feasible;
    if (!b.feasible) {
      r.warnings.push_back(std::string(dimension_code(d)) +
                           ": no selection matches the expert label; using the "
                           "unconstrained optimum");
    }
    for (int c = 0; c < range.size(); ++c) {
      const auto i = static_cast<std::size_t>(first + c);
      const int j = b.choice[static_cast<std::size_t>(c)];
      r.selection[i] = j;
      r.synthesized.units.push_back(pool.samples[static_cast<std::size_t>(j)].units[i]);
    }
    r.synthesized.summaries[index_of(d)] = {b.score_sum, sign_of(b.score_sum)};
  }
  r.synthesized.answer = pool.record.expert_label;
  r.synthesized.raw_text = serialize_trace(r.synthesized);
  return r;
}

BatchSynthesis synthesize_batch(const std::vector<SamplePool>& pools) {
  BatchSynthesis out;
  for (std::size_t p = 0; p < pools.size(); ++p) {
    ++out.summary.pools;
    try {
      SynthesisResult r = synthesize(pools[p]);
      ++(r.fully_feasible() ? out.summary.fully_feasible : out.summary.partially_infeasible);
      out.results.push_back(std::move(r));
    } catch (const Error& e) {
      ++out.summary.errors;
      out.errors.push_back({p, pools[p].record.pair_id, e.code(), e.what()});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

PoolLoader::PoolLoader(std::filesystem::path base_dir,
                       std::shared_ptr<const EmbeddingProvider> default_provider)
    : base_dir_(std::move(base_dir)), default_provider_(std::move(default_provider)) {}

std::shared_ptr<const EmbeddingProvider> PoolLoader::provider_for(const Json& line) {
  if (!line.contains("embedding_store")) return default_provider_;
  const std::string store = require_string(line, "embedding_store");
  if (store == "fallback") {
    if (!fallback_) fallback_ = std::make_shared<HashingEmbedder>();
    return fallback_;
  }
  std::filesystem::path path(store);
  if (path.is_relative()) path = base_dir_ / path;
  path = path.lexically_normal();
  auto it = stores_.find(path);
  if (it == stores_.end()) {
    it = stores_.emplace(path, std::make_shared<PrecomputedStore>(PrecomputedStore::load(path)))
             .first;
  }
  return it->second;
}

SamplePool PoolLoader::load(const Json& line) {
  PreferenceRecord record = require(line, "record").get<PreferenceRecord>();
  const Json& raw = require(line, "samples");
  if (!raw.is_array() || raw.empty()) bad_pool("'samples' must be a nonempty array of texts");
  std::vector<CoTTrace> samples;
  samples.reserve(raw.size());
  for (std::size_t j = 0; j < raw.size(); ++j) {
    if (!raw[j].is_string()) bad_pool("sample " + std::to_string(j + 1) + " is not a string");
    ParseReport rep = parse_cot(raw[j].get<std::string>());
    if (!rep.trace) {
      std::string why = "sample " + std::to_string(j + 1) + " is not a complete trace";
      if (!rep.violations.empty()) {
        const Violation& v = rep.violations.front();
        why += ": " + std::string(violation_name(v.code)) + " at " + v.location;
      }
      bad_pool(why);
    }
    samples.push_back(std::move(*rep.trace));
  }
  auto provider = provider_for(line);
  if (!provider) throw Error(ErrorCode::kBadConfig, "no embedding provider configured");
  return make_pool(std::move(record), std::move(samples), *provider);
}

// ---------------------------------------------------------------------------

void to_json(Json& j, const SynthesisResult& r) {
  Json selection = Json::array();
  for (int s : r.selection) selection.push_back(s + 1);
  Json feasible = Json::object();
  for (Dimension d : kDimensions) feasible[std::string(dimension_code(d))] = r.feasible[index_of(d)];
  Json trace = r.synthesized;
  trace.erase("raw_text");
  j = Json{{"pair_id", r.pair_id},
           {"selection", std::move(selection)},
           {"objective", round9(r.objective)},
           {"feasible", std::move(feasible)},
           {"fully_feasible", r.fully_feasible()},
           {"trace", std::move(trace)},
           {"text", r.synthesized.raw_text},
           {"warnings", r.warnings}};
}

void to_json(Json& j, const SynthesisSummary& s) {
  j = Json{{"pools", s.pools},
           {"fully_feasible", s.fully_feasible},
           {"partially_infeasible", s.partially_infeasible},
           {"errors", s.errors}};
}

}  // namespace vaes
