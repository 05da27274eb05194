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

#include "vaes/embedding.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>

#include <httplib.h>
#include <openssl/evp.h>

#include "vaes/codec.hpp"

namespace vaes {

namespace {

// 64-bit FNV-1a; stable across platforms and standard libraries.
std::uint64_t fnv1a(std::string_view s) noexcept {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

Embedding vector_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) {
    throw Error(ErrorCode::kInvalidRecord, "vector must be a nonempty array of numbers");
  }
  Embedding v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) {
      throw Error(ErrorCode::kInvalidRecord, "vector must be a nonempty array of numbers");
    }
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
    if (!std::isfinite(v[static_cast<Eigen::Index>(i)])) {
      throw Error(ErrorCode::kInvalidRecord, "vector holds a non-finite value");
    }
  }
  return v;
}

}  // namespace

std::string sha256_hex(std::string_view text) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::kIo, "sha256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xf];
  }
  return out;
}

// ---------------------------------------------------------------------------

HashingEmbedder::HashingEmbedder(int dim) : dim_(dim) {
  if (dim <= 0) throw Error(ErrorCode::kBadConfig, "embedding dim must be positive");
}

std::vector<Embedding> HashingEmbedder::embed(std::span<const std::string> texts) const {
  std::vector<Embedding> out;
  out.reserve(texts.size());
  for (const std::string& text : texts) {
    Embedding v = Embedding::Zero(dim_);
    for (const std::string& tok : tokenize(text)) {
      v[static_cast<Eigen::Index>(fnv1a(tok) % static_cast<std::uint64_t>(dim_))] += 1.0;
    }
    const double n = v.norm();
    if (n > 0) v /= n;
    out.push_back(std::move(v));
  }
  return out;
}

// ---------------------------------------------------------------------------

PrecomputedStore PrecomputedStore::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open embedding store " + path.string());
  return read(in);
}

PrecomputedStore PrecomputedStore::read(std::istream& in) {
  PrecomputedStore store;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json j = Json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      throw Error(ErrorCode::kInvalidRecord,
                  "embedding store line " + std::to_string(line_no) + " is not JSON");
    }
    store.insert_hash(require_string(j, "text_sha256"), vector_from_json(require(j, "vector")));
  }
  return store;
}

void PrecomputedStore::insert(std::string_view text, Embedding vector) {
  insert_hash(sha256_hex(text), std::move(vector));
}

void PrecomputedStore::insert_hash(std::string hex_digest, Embedding vector) {
  if (dim_ >= 0 && vector.size() != dim_) {
    throw Error(ErrorCode::kInvalidRecord, "embedding store mixes vector dimensions");
  }
  dim_ = vector.size();
  vectors_.insert_or_assign(std::move(hex_digest), std::move(vector));
}

std::vector<Embedding> PrecomputedStore::embed(std::span<const std::string> texts) const {
  std::vector<Embedding> out;
  out.reserve(texts.size());
  for (const std::string& text : texts) {
    auto it = vectors_.find(sha256_hex(text));
    if (it == vectors_.end()) {
      throw Error(ErrorCode::kEmbeddingMiss,
                  "no stored embedding for text \"" + text.substr(0, 60) + "\"");
    }
    out.push_back(it->second);
  }
  return out;
}

// ---------------------------------------------------------------------------

RemoteEmbedder::RemoteEmbedder(std::string base_url, std::chrono::milliseconds timeout)
    : base_url_(std::move(base_url)), timeout_(timeout) {}

std::vector<Embedding> RemoteEmbedder::embed(std::span<const std::string> texts) const {
  std::vector<std::string> missing;
  {
    std::lock_guard lock(mu_);
    for (const std::string& t : texts) {
      if (!cache_.contains(t) &&
          std::find(missing.begin(), missing.end(), t) == missing.end()) {
        missing.push_back(t);
      }
    }
  }
  if (!missing.empty()) {
    httplib::Client client(base_url_);
    client.set_connection_timeout(timeout_);
    client.set_read_timeout(timeout_);
    client.set_write_timeout(timeout_);
    const Json body{{"texts", missing}};
    auto res = client.Post("/embed", body.dump(), "application/json");
    if (!res) {
      throw Error(ErrorCode::kEmbeddingUnavailable,
                  "embedding service unreachable: " + httplib::to_string(res.error()));
    }
    if (res->status != 200) {
      throw Error(ErrorCode::kEmbeddingUnavailable,
                  "embedding service returned HTTP " + std::to_string(res->status));
    }
    Json reply = Json::parse(res->body, nullptr, false);
    if (reply.is_discarded() || !reply.contains("vectors") || !reply["vectors"].is_array() ||
        reply["vectors"].size() != missing.size()) {
      throw Error(ErrorCode::kEmbeddingUnavailable,
                  "embedding service reply lacks one vector per text");
    }
    std::vector<Embedding> fresh;
    try {
      for (const Json& v : reply["vectors"]) fresh.push_back(vector_from_json(v));
    } catch (const Error& e) {
      throw Error(ErrorCode::kEmbeddingUnavailable, std::string("embedding service: ") + e.what());
    }
    std::lock_guard lock(mu_);
    for (std::size_t i = 0; i < missing.size(); ++i) {
      // First writer wins so concurrent callers agree on one vector per text.
      cache_.try_emplace(missing[i], std::move(fresh[i]));
    }
  }
  std::vector<Embedding> out;
  out.reserve(texts.size());
  std::lock_guard lock(mu_);
  for (const std::string& t : texts) out.push_back(cache_.at(t));
  const Eigen::Index dim = out.empty() ? 0 : out.front().size();
  for (const Embedding& v : out) {
    if (v.size() != dim) {
      throw Error(ErrorCode::kEmbeddingUnavailable, "embedding service mixes dimensions");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

ProviderSpec parse_provider_spec(std::string_view text) {
  ProviderSpec spec;
  if (text == "fallback") return spec;
  if (text.starts_with("store:") && text.size() > 6) {
    spec.kind = ProviderSpec::Kind::kStore;
    spec.path = std::string(text.substr(6));
    return spec;
  }
  if (text.starts_with("remote:") && text.size() > 7) {
    spec.kind = ProviderSpec::Kind::kRemote;
    spec.url = std::string(text.substr(7));
    return spec;
  }
  throw Error(ErrorCode::kBadConfig,
              "provider must be 'fallback', 'store:<path>' or 'remote:<url>', got '" +
                  std::string(text) + "'");
}

std::shared_ptr<const EmbeddingProvider> make_provider(const ProviderSpec& spec) {
  switch (spec.kind) {
    case ProviderSpec::Kind::kFallback:
      return std::make_shared<HashingEmbedder>(spec.dim);
    case ProviderSpec::Kind::kStore:
      return std::make_shared<PrecomputedStore>(PrecomputedStore::load(spec.path));
    case ProviderSpec::Kind::kRemote:
      return std::make_shared<RemoteEmbedder>(spec.url,
                                              std::chrono::milliseconds(spec.timeout_ms));
  }
  throw Error(ErrorCode::kBadConfig, "unknown provider kind");
}

}  // namespace vaes
