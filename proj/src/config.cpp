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

#include "vaes/config.hpp"

#include <fstream>
#include <initializer_list>
#include <string>

namespace vaes {

namespace {

[[noreturn]] void bad_config(const std::string& message) {
  throw Error(ErrorCode::kBadConfig, message);
}

void reject_unknown(const Json& j, std::initializer_list<std::string_view> known,
                    std::string_view where) {
  if (!j.is_object()) bad_config(std::string(where) + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (std::string_view k : known) ok = ok || key == k;
    if (!ok) bad_config("unknown key '" + key + "' in " + std::string(where));
  }
}

double number(const Json& v, const std::string& name) {
  if (!v.is_number()) bad_config(name + " must be a number");
  return v.get<double>();
}

bool boolean(const Json& v, const std::string& name) {
  if (!v.is_boolean()) bad_config(name + " must be true or false");
  return v.get<bool>();
}

std::string text(const Json& v, const std::string& name) {
  if (!v.is_string()) bad_config(name + " must be a string");
  return v.get<std::string>();
}

int integer(const Json& v, const std::string& name, int lo, int hi) {
  if (!v.is_number_integer()) bad_config(name + " must be an integer");
  const auto n = v.get<long long>();
  if (n < lo || n > hi) {
    bad_config(name + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return static_cast<int>(n);
}

void apply_weights(const Json& j, RewardWeights& w) {
  reject_unknown(j, {"lambda_acc", "lambda_fmt", "lambda_cst", "lambda_prc", "dim_weights"},
                 "weights");
  if (j.contains("lambda_acc")) w.lambda_acc = number(j["lambda_acc"], "weights.lambda_acc");
  if (j.contains("lambda_fmt")) w.lambda_fmt = number(j["lambda_fmt"], "weights.lambda_fmt");
  if (j.contains("lambda_cst")) w.lambda_cst = number(j["lambda_cst"], "weights.lambda_cst");
  if (j.contains("lambda_prc")) w.lambda_prc = number(j["lambda_prc"], "weights.lambda_prc");
  if (j.contains("dim_weights")) {
    const Json& d = j["dim_weights"];
    if (!d.is_array() || d.size() != kNumDimensions) {
      bad_config("weights.dim_weights must be an array of three numbers");
    }
    for (std::size_t k = 0; k < kNumDimensions; ++k) {
      w.dim_weights[k] = number(d[k], "weights.dim_weights");
    }
  }
}

ProviderSpec provider_from_json(const Json& j, const std::filesystem::path& base_dir) {
  ProviderSpec spec;
  if (j.is_string()) {
    spec = parse_provider_spec(j.get<std::string>());
  } else {
    reject_unknown(j, {"kind", "path", "url", "dim", "timeout_ms"}, "provider");
    const std::string kind = j.contains("kind") ? text(j["kind"], "provider.kind") : "fallback";
    if (kind == "fallback") {
      spec.kind = ProviderSpec::Kind::kFallback;
    } else if (kind == "store") {
      spec.kind = ProviderSpec::Kind::kStore;
      if (!j.contains("path")) bad_config("provider.path is required for a store provider");
    } else if (kind == "remote") {
      spec.kind = ProviderSpec::Kind::kRemote;
      if (!j.contains("url")) bad_config("provider.url is required for a remote provider");
    } else {
      bad_config("provider.kind must be fallback, store or remote");
    }
    if (j.contains("path")) spec.path = text(j["path"], "provider.path");
    if (j.contains("url")) spec.url = text(j["url"], "provider.url");
    if (j.contains("dim")) spec.dim = integer(j["dim"], "provider.dim", 1, 1 << 20);
    if (j.contains("timeout_ms")) {
      spec.timeout_ms = integer(j["timeout_ms"], "provider.timeout_ms", 1, 3600000);
    }
  }
  if (spec.kind == ProviderSpec::Kind::kStore && !base_dir.empty() &&
      std::filesystem::path(spec.path).is_relative()) {
    spec.path = (base_dir / spec.path).lexically_normal().string();
  }
  return spec;
}

}  // namespace

EngineConfig config_from_json(const Json& j, EngineConfig base,
                              const std::filesystem::path& base_dir) {
  reject_unknown(j,
                 {"weights", "provider", "use_ties", "pb_variant", "clamp_weights", "std_mode",
                  "workers"},
                 "config");
  if (j.contains("weights")) apply_weights(j["weights"], base.weights);
  if (j.contains("provider")) base.provider = provider_from_json(j["provider"], base_dir);
  if (j.contains("use_ties")) base.use_ties = boolean(j["use_ties"], "use_ties");
  if (j.contains("pb_variant")) {
    base.pb_variant = bias_variant_from_name(text(j["pb_variant"], "pb_variant"));
  }
  if (j.contains("clamp_weights")) base.clamp_weights = boolean(j["clamp_weights"], "clamp_weights");
  if (j.contains("std_mode")) base.std_mode = std_mode_from_name(text(j["std_mode"], "std_mode"));
  if (j.contains("workers")) base.workers = integer(j["workers"], "workers", 0, 1024);
  validate(base.weights);
  return base;
}

EngineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config file " + path.string());
  Json j = Json::parse(in, nullptr, false);
  if (j.is_discarded()) bad_config("config file " + path.string() + " is not valid JSON");
  return config_from_json(j, {}, path.parent_path());
}

void to_json(Json& j, const EngineConfig& c) {
  Json provider;
  switch (c.provider.kind) {
    case ProviderSpec::Kind::kFallback:
      provider = Json{{"kind", "fallback"}, {"dim", c.provider.dim}};
      break;
    case ProviderSpec::Kind::kStore:
      provider = Json{{"kind", "store"}, {"path", c.provider.path}};
      break;
    case ProviderSpec::Kind::kRemote:
      provider = Json{{"kind", "remote"}, {"url", c.provider.url},
                      {"timeout_ms", c.provider.timeout_ms}};
      break;
  }
  j = Json{{"weights", c.weights},
           {"provider", std::move(provider)},
           {"use_ties", c.use_ties},
           {"pb_variant", bias_variant_name(c.pb_variant)},
           {"clamp_weights", c.clamp_weights},
           {"std_mode", std_mode_name(c.std_mode)},
           {"workers", c.workers}};
}

}  // namespace vaes
