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

// vaes: command-line front end.
//
//   vaes [global flags] parse|synthesize|reward|eval|weights [-i IN] [-o OUT]
//   vaes [global flags] serve
//
// Exit status: 0 on success, 1 on an I/O failure, 2 on a configuration error.
// Record-level problems never change the exit status; they are written
// inline as {"error": ...} lines.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vaes/commands.hpp"
#include "vaes/config.hpp"
#include "vaes/stream_server.hpp"

namespace {

constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;

struct Flags {
  std::string config_path;
  std::string provider;
  double w_acc = 0, w_fmt = 0, w_cst = 0, w_prc = 0;
  std::vector<double> w_dim;
  std::string pb_variant;
  std::string use_ties;
  bool clamp_weights = false;
  std::string std_mode;
  int workers = -1;
  std::string input = "-";
  std::string output = "-";
  std::string variant = "cot";
  std::string eval_mode = "accuracy";
};

bool parse_bool(const std::string& s) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw vaes::Error(vaes::ErrorCode::kBadConfig, "--use-ties expects true or false");
}

int exit_code_for(const vaes::Error& e) {
  return e.code() == vaes::ErrorCode::kIo ? kExitIo : kExitConfig;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rubric-based preference reward engine"};
  app.fallthrough();
  app.require_subcommand(1);
  Flags f;

  app.add_option("--config", f.config_path, "JSON config file");
  app.add_option("--provider", f.provider, "fallback | store:<path> | remote:<url>");
  auto* o_acc = app.add_option("--weights-acc", f.w_acc, "accuracy weight");
  auto* o_fmt = app.add_option("--weights-fmt", f.w_fmt, "format weight");
  auto* o_cst = app.add_option("--weights-cst", f.w_cst, "consistency weight");
  auto* o_prc = app.add_option("--weights-prc", f.w_prc, "process weight");
  auto* o_dim = app.add_option("--weights-dim", f.w_dim, "VA,VF,VP weights")
                    ->expected(3)
                    ->delimiter(',');
  app.add_option("--pb-variant", f.pb_variant, "canonical | raw");
  app.add_option("--use-ties", f.use_ties, "true | false");
  app.add_flag("--clamp-weights", f.clamp_weights, "cap rwr weights at exp(15)");
  app.add_option("--std-mode", f.std_mode, "population | sample");

  auto add_io = [&](CLI::App* sub) {
    sub->add_option("-i,--input", f.input, "input JSONL ('-' for stdin)");
    sub->add_option("-o,--output", f.output, "output JSONL ('-' for stdout)");
  };
  CLI::App* parse = app.add_subcommand("parse", "parse raw outputs into reports");
  add_io(parse);
  parse->add_option("--variant", f.variant, "default variant: base | cot")
      ->check(CLI::IsMember({"base", "cot"}));
  CLI::App* synth = app.add_subcommand("synthesize", "self-consistency trace synthesis");
  add_io(synth);
  CLI::App* reward = app.add_subcommand("reward", "verifiable rewards");
  add_io(reward);
  CLI::App* eval = app.add_subcommand("eval", "accuracy, position bias and GSB");
  add_io(eval);
  eval->add_option("--mode", f.eval_mode, "accuracy | gsb")
      ->check(CLI::IsMember({"accuracy", "gsb"}));
  CLI::App* weights = app.add_subcommand("weights", "rwr weights, win rates, advantages");
  add_io(weights);
  CLI::App* serve = app.add_subcommand("serve", "NDJSON request/response loop on stdio");
  serve->add_option("--workers", f.workers, "worker threads (0 = hardware)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  vaes::EngineConfig cfg;
  try {
    if (!f.config_path.empty()) cfg = vaes::load_config(f.config_path);
    if (!f.provider.empty()) cfg.provider = vaes::parse_provider_spec(f.provider);
    if (o_acc->count() > 0) cfg.weights.lambda_acc = f.w_acc;
    if (o_fmt->count() > 0) cfg.weights.lambda_fmt = f.w_fmt;
    if (o_cst->count() > 0) cfg.weights.lambda_cst = f.w_cst;
    if (o_prc->count() > 0) cfg.weights.lambda_prc = f.w_prc;
    if (o_dim->count() > 0) {
      for (std::size_t k = 0; k < vaes::kNumDimensions; ++k) cfg.weights.dim_weights[k] = f.w_dim[k];
    }
    if (!f.pb_variant.empty()) cfg.pb_variant = vaes::bias_variant_from_name(f.pb_variant);
    if (!f.use_ties.empty()) cfg.use_ties = parse_bool(f.use_ties);
    if (f.clamp_weights) cfg.clamp_weights = true;
    if (!f.std_mode.empty()) cfg.std_mode = vaes::std_mode_from_name(f.std_mode);
    if (f.workers >= 0) cfg.workers = f.workers;
    vaes::validate(cfg.weights);
  } catch (const vaes::Error& e) {
    std::cerr << "vaes: " << vaes::code_name(e.code()) << ": " << e.what() << '\n';
    return exit_code_for(e);
  }

  std::optional<vaes::Engine> engine;
  try {
    engine.emplace(cfg);
  } catch (const vaes::Error& e) {
    std::cerr << "vaes: " << vaes::code_name(e.code()) << ": " << e.what() << '\n';
    return exit_code_for(e);
  }

  try {
    if (serve->parsed()) {
      const vaes::ServeStats s = vaes::serve_stream(*engine, std::cin, std::cout, cfg.workers);
      std::cerr << "vaes: served " << s.requests << " requests, " << s.errors << " errors\n";
      return 0;
    }

    std::ifstream in_file;
    std::istream* in = &std::cin;
    std::filesystem::path base_dir = std::filesystem::current_path();
    if (f.input != "-") {
      in_file.open(f.input);
      if (!in_file) throw vaes::Error(vaes::ErrorCode::kIo, "cannot open input " + f.input);
      in = &in_file;
      base_dir = std::filesystem::absolute(f.input).parent_path();
    }
    std::ofstream out_file;
    std::ostream* out = &std::cout;
    if (f.output != "-") {
      out_file.open(f.output, std::ios::binary | std::ios::trunc);
      if (!out_file) throw vaes::Error(vaes::ErrorCode::kIo, "cannot open output " + f.output);
      out = &out_file;
    }

    vaes::BatchStats stats;
    if (parse->parsed()) {
      stats = vaes::run_parse(*engine, *in, *out, vaes::variant_from_name(f.variant));
    } else if (synth->parsed()) {
      vaes::SynthesisSummary summary;
      stats = vaes::run_synthesize(*engine, *in, *out, base_dir, summary);
      std::cerr << vaes::Json(summary).dump() << '\n';
    } else if (reward->parsed()) {
      stats = vaes::run_reward(*engine, *in, *out);
    } else if (eval->parsed()) {
      stats = vaes::run_eval(*engine, *in, *out, vaes::eval_mode_from_name(f.eval_mode));
    } else if (weights->parsed()) {
      stats = vaes::run_weights(*engine, *in, *out);
    }
    if (stats.errors > 0) {
      std::cerr << "vaes: " << stats.errors << " of " << stats.records
                << " records reported errors\n";
    }
  } catch (const vaes::Error& e) {
    std::cerr << "vaes: " << vaes::code_name(e.code()) << ": " << e.what() << '\n';
    return exit_code_for(e);
  }
  return 0;
}
