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

// Sentence embedding providers.
//
// Three interchangeable backends sit behind EmbeddingProvider:
//
//  * HashingEmbedder   - deterministic bag of hashed lower-cased tokens,
//                        L2-normalized. No external dependency.
//  * PrecomputedStore  - vectors loaded from JSONL lines of
//                        {"text_sha256": "<hex>", "vector": [...]}.
//  * RemoteEmbedder    - POST <url>/embed with {"texts": [...]}, expecting
//                        {"vectors": [[...], ...]}. Results are cached so
//                        repeated texts map to identical vectors.
//
// Every provider is safe to call from several threads at once.

#pragma once

#include <chrono>
#include <filesystem>
#include <istream>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "vaes/similarity.hpp"

namespace vaes {

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;

  // One vector per text, all of the same dimension.
  virtual std::vector<Embedding> embed(std::span<const std::string> texts) const = 0;
  virtual std::string_view kind() const noexcept = 0;

  Embedding embed_one(const std::string& text) const {
    return embed(std::span<const std::string>(&text, 1)).front();
  }
};

class HashingEmbedder final : public EmbeddingProvider {
 public:
  static constexpr int kDefaultDim = 256;

  explicit HashingEmbedder(int dim = kDefaultDim);

  std::vector<Embedding> embed(std::span<const std::string> texts) const override;
  std::string_view kind() const noexcept override { return "fallback"; }
  int dim() const noexcept { return dim_; }

 private:
  int dim_;
};

class PrecomputedStore final : public EmbeddingProvider {
 public:
  // Throws Error(kIo) if the file cannot be read and Error(kInvalidRecord) on
  // a malformed line, a non-finite value or inconsistent dimensions.
  static PrecomputedStore load(const std::filesystem::path& path);
  static PrecomputedStore read(std::istream& in);

  void insert(std::string_view text, Embedding vector);
  void insert_hash(std::string hex_digest, Embedding vector);

  // Throws Error(kEmbeddingMiss) naming the first text without a vector.
  std::vector<Embedding> embed(std::span<const std::string> texts) const override;
  std::string_view kind() const noexcept override { return "store"; }
  std::size_t size() const noexcept { return vectors_.size(); }

 private:
  std::unordered_map<std::string, Embedding> vectors_;
  Eigen::Index dim_ = -1;
};

class RemoteEmbedder final : public EmbeddingProvider {
 public:
  // `base_url` is scheme://host[:port]; requests go to base_url + "/embed".
  explicit RemoteEmbedder(std::string base_url,
                          std::chrono::milliseconds timeout = std::chrono::seconds(30));

  // Throws Error(kEmbeddingUnavailable) on transport or protocol failure.
  std::vector<Embedding> embed(std::span<const std::string> texts) const override;
  std::string_view kind() const noexcept override { return "remote"; }

 private:
  std::string base_url_;
  std::chrono::milliseconds timeout_;
  mutable std::mutex mu_;
  mutable std::unordered_map<std::string, Embedding> cache_;
};

// Lower-case hex SHA-256 of the UTF-8 bytes of `text`.
std::string sha256_hex(std::string_view text);

struct ProviderSpec {
  enum class Kind { kFallback, kStore, kRemote };
  Kind kind = Kind::kFallback;
  std::string path;  // store file
  std::string url;   // remote base url
  int dim = HashingEmbedder::kDefaultDim;
  int timeout_ms = 30000;
};

// Parses "fallback", "store:<path>" or "remote:<url>". Throws
// Error(kBadConfig) on anything else.
ProviderSpec parse_provider_spec(std::string_view text);

std::shared_ptr<const EmbeddingProvider> make_provider(const ProviderSpec& spec);

}  // namespace vaes
