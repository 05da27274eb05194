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

// Engine configuration.
//
// A config file is one JSON object; every key is optional and unknown keys
// are rejected:
//
//   {
//     "weights": {"lambda_acc": 1, "lambda_fmt": 0.1, "lambda_cst": 0.5,
//                 "lambda_prc": 1, "dim_weights": [0.3, 0.2, 0.5]},
//     "provider": "fallback" | "store:<path>" | "remote:<url>"
//               | {"kind": ..., "path": ..., "url": ..., "dim": 256,
//                  "timeout_ms": 30000},
//     "use_ties": true,
//     "pb_variant": "canonical" | "raw",
//     "clamp_weights": false,
//     "std_mode": "population" | "sample",
//     "workers": 0
//   }

#pragma once

#include <filesystem>

#include "vaes/alignment.hpp"
#include "vaes/codec.hpp"
#include "vaes/embedding.hpp"
#include "vaes/metrics.hpp"
#include "vaes/reward.hpp"

namespace vaes {

struct EngineConfig {
  RewardWeights weights;
  ProviderSpec provider;
  bool use_ties = true;
  BiasVariant pb_variant = BiasVariant::kCanonical;
  bool clamp_weights = false;
  StdMode std_mode = StdMode::kPopulation;
  // Stream-server worker threads; 0 picks the hardware concurrency.
  int workers = 0;
};

// Applies the keys of `j` on top of `base`. Store paths resolve against
// `base_dir`. Throws Error(kBadConfig) on unknown keys or bad values and
// Error(kInvalidWeights) when the resulting weights are invalid.
EngineConfig config_from_json(const Json& j, EngineConfig base = {},
                              const std::filesystem::path& base_dir = {});

// Throws Error(kIo) when the file cannot be read and Error(kBadConfig) when it
// is not a JSON object.
EngineConfig load_config(const std::filesystem::path& path);

void to_json(Json& j, const EngineConfig& c);

}  // namespace vaes
