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

// Drives the vaes binary end to end on the golden corpus.

#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "oracles.hpp"
#include "support.hpp"
#include "vaes/codec.hpp"

#ifndef VAES_CLI_PATH
#error "VAES_CLI_PATH must be defined"
#endif

namespace vaes {
namespace {

namespace fs = std::filesystem;

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("vaes_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

// Runs the CLI from the golden data directory with `args`, feeding `input`
// on stdin.
CliResult run(const std::string& args, const std::string& input = "") {
  static int counter = 0;
  const fs::path base = scratch_dir() / std::to_string(counter++);
  {
    std::ofstream(base.string() + ".in", std::ios::binary) << input;
  }
  const std::string cmd = "cd '" + testing::data_dir().string() + "' && '" VAES_CLI_PATH "' " +
                          args + " < '" + base.string() + ".in' > '" + base.string() +
                          ".out' 2> '" + base.string() + ".err'";
  const int status = std::system(cmd.c_str());
  CliResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = testing::read_file(base.string() + ".out");
  r.err = testing::read_file(base.string() + ".err");
  return r;
}

class ScratchCleanup : public ::testing::Environment {
 public:
  void TearDown() override { fs::remove_all(scratch_dir()); }
};

const auto* const kCleanup = ::testing::AddGlobalTestEnvironment(new ScratchCleanup);

std::vector<Json> lines_of(const std::string& text) {
  std::vector<Json> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(Json::parse(line));
  }
  return out;
}

std::string golden(const std::string& name) {
  return testing::read_file(testing::data_dir() / "expected" / name);
}

// ---------------------------------------------------------------------------
// Batch commands

struct BatchCase {
  const char* args;
  const char* expected;
};

const BatchCase kBatchCases[] = {
    {"parse -i parse.jsonl", "parse.jsonl"},
    {"reward -i reward.jsonl", "reward.jsonl"},
    {"synthesize -i synth.jsonl", "synthesize.jsonl"},
    {"eval -i eval.jsonl", "eval.jsonl"},
    {"eval --mode gsb -i gsb.jsonl", "eval_gsb.jsonl"},
    {"weights -i weights.jsonl", "weights.jsonl"},
};

TEST(Cli, BatchCommandsAreByteStableAndMatchGoldenOutputs) {
  for (const BatchCase& c : kBatchCases) {
    const CliResult a = run(c.args);
    const CliResult b = run(c.args);
    EXPECT_EQ(a.code, 0) << c.args << "\n" << a.err;
    EXPECT_EQ(a.out, b.out) << c.args;
    EXPECT_EQ(a.out, golden(c.expected)) << c.args;
  }
}

TEST(Cli, ParseEmitsOneLinePerRecord) {
  const CliResult r = run("parse -i parse.jsonl");
  const auto out = lines_of(r.out);
  ASSERT_EQ(out.size(), 7u);
  EXPECT_EQ(out[0]["criteria_found"].size(), 15u);
  EXPECT_EQ(out[1]["variant"], "base");
  EXPECT_EQ(out[5]["error"]["code"], "INVALID_RECORD");
  EXPECT_EQ(out[5]["line"], 7);
  EXPECT_EQ(out[6]["pair_id"], "no-output");
  EXPECT_NE(r.err.find("2 of 7"), std::string::npos);
}

TEST(Cli, EmptyInputGivesEmptyOutput) {
  for (const char* cmd : {"parse", "reward", "synthesize", "weights"}) {
    const CliResult r = run(cmd);
    EXPECT_EQ(r.code, 0) << cmd;
    EXPECT_EQ(r.out, "") << cmd;
  }
}

TEST(Cli, RewardTotalsOnTheGoldenFile) {
  std::map<std::string, double> total;
  for (const Json& j : lines_of(run("reward -i reward.jsonl").out)) {
    if (j.contains("total")) total[j["pair_id"].get<std::string>()] = j["total"].get<double>();
  }
  EXPECT_EQ(total.at("cot-perfect"), 2.6);
  EXPECT_EQ(total.at("base-perfect"), 1.1);
  EXPECT_EQ(total.at("base-wrong"), -0.9);
  EXPECT_EQ(total.at("base-junk"), -1.0);
  EXPECT_EQ(total.at("cot-gate"), -2.5);
  EXPECT_EQ(total.at("cot-no-teacher"), 1.6);
}

TEST(Cli, WeightFlagsChangeTotals) {
  const CliResult r = run("--weights-fmt 0.5 --weights-dim 0.2,0.3,0.5 reward -i reward.jsonl");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(lines_of(r.out)[1]["total"], 1.5);
}

TEST(Cli, EvalMatchesTheRecountOracle) {
  std::vector<std::array<int, 3>> pred, gt;
  for (const Json& j : lines_of(testing::read_file(testing::data_dir() / "eval.jsonl"))) {
    auto triple = [](const Json& v) {
      return std::array<int, 3>{v["va"].get<int>(), v["vf"].get<int>(), v["vp"].get<int>()};
    };
    pred.push_back(triple(j["forward"]));
    gt.push_back(triple(j["gt"]));
  }
  for (bool use_ties : {true, false}) {
    const CliResult r = run(std::string("--use-ties ") + (use_ties ? "true" : "false") +
                      " eval -i eval.jsonl");
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = Json::parse(r.out);
    const oracle::Tally t = oracle::accuracy_tally(pred, gt, use_ties);
    EXPECT_EQ(j["use_ties"], use_ties);
    EXPECT_NEAR(j["report"]["binary_acc"].get<double>(), t.binary, 1e-9);
    EXPECT_NEAR(j["report"]["three_class_acc"].get<double>(), t.three_class, 1e-9);
    EXPECT_NEAR(j["report"]["avg_acc"].get<double>(), t.avg, 1e-9);
    EXPECT_NEAR(j["report"]["per_dim_acc"]["VF"].get<double>(), t.per_dim[1], 1e-9);
    EXPECT_EQ(j["report"]["n_counted"], t.counted);
    EXPECT_EQ(j["position_bias"], 0.3);
  }
}

TEST(Cli, GsbFromScorePairs) {
  const Json j = Json::parse(run("eval --mode gsb -i gsb_scores.jsonl").out);
  EXPECT_EQ(j["good"], 2);
  EXPECT_EQ(j["same"], 2);
  EXPECT_EQ(j["bad"], 1);
  EXPECT_EQ(j["gsb"], 0.2);
}

TEST(Cli, WeightsOnTheGoldenFile) {
  std::map<std::string, Json> by_id;
  for (const Json& j : lines_of(run("weights -i weights.jsonl").out)) {
    by_id[j.contains("group_id") ? j["group_id"].get<std::string>() : j["id"].get<std::string>()] = j;
  }
  EXPECT_EQ(by_id["flat"]["advantages"], Json({0.0, 0.0, 0.0}));
  EXPECT_EQ(by_id["alt"]["advantages"], Json({1.0, -1.0, 1.0, -1.0}));
  EXPECT_EQ(by_id["cycle"]["win_rates"], Json({0.5, 0.5, 0.5}));
  EXPECT_EQ(by_id["s3"]["weight"], 0.0497870684);
  EXPECT_EQ(by_id["crit-short"]["error"]["code"], "BAD_CRITERIA_COUNT");
  const Json clamped = lines_of(run("--clamp-weights weights", R"({"id":"x","s":-40})").out)[0];
  EXPECT_EQ(clamped["weight"], round9(std::exp(15.0)));
}

TEST(Cli, SynthesisSummaryGoesToStderr) {
  const CliResult r = run("synthesize -i synth.jsonl");
  EXPECT_EQ(r.code, 0);
  const auto out = lines_of(r.out);
  ASSERT_EQ(out.size(), 5u);
  EXPECT_EQ(out[3]["pair_id"], "pool-store");
  EXPECT_EQ(out[4]["error"]["code"], "INVALID_POOL");
  const Json summary = Json::parse(r.err.substr(0, r.err.find('\n')));
  EXPECT_EQ(summary["pools"], 5);
  EXPECT_EQ(summary["errors"], 1);
  EXPECT_EQ(summary["fully_feasible"].get<int>() + summary["partially_infeasible"].get<int>(), 4);
}

TEST(Cli, OutputFileOption) {
  const fs::path out = scratch_dir() / "weights_out.jsonl";
  const CliResult r = run("weights -i weights.jsonl -o '" + out.string() + "'");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "");
  EXPECT_EQ(testing::read_file(out), golden("weights.jsonl"));
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("parse -i no_such_file.jsonl").code, 1);
  EXPECT_EQ(run("weights -o /nonexistent/dir/out.jsonl").code, 1);
  EXPECT_EQ(run("--config no_such_config.json parse").code, 1);
  EXPECT_EQ(run("--provider store:no_such_store.jsonl parse").code, 1);
  EXPECT_EQ(run("--config config_typo.json parse").code, 2);
  EXPECT_EQ(run("--provider bogus parse").code, 2);
  EXPECT_EQ(run("--weights-dim 0.5,0.5,0.5 reward").code, 2);
  EXPECT_EQ(run("--weights-acc -1 reward").code, 2);
  EXPECT_EQ(run("--use-ties maybe eval").code, 2);
  EXPECT_EQ(run("--pb-variant sideways eval").code, 2);
  EXPECT_EQ(run("--no-such-flag parse").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("eval --mode median").code, 2);
  EXPECT_EQ(run("eval -i eval.jsonl --pb-variant raw").code, 0);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, EvalOnEmptyInputReportsTheError) {
  const CliResult r = run("eval");
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["error"]["code"], "EMPTY_EVAL_SET");
}

// ---------------------------------------------------------------------------
// Stream server

std::map<int, Json> responses_by_id(const std::vector<Json>& lines) {
  std::map<int, Json> out;
  for (const Json& j : lines) {
    if (j["id"].is_number_integer()) out[j["id"].get<int>()] = j;
  }
  return out;
}

Json reward_request(int id, const std::string& raw, const std::string& variant,
                    const Json& teacher) {
  Json payload{{"pair_id", "s" + std::to_string(id)},
               {"raw_output", raw},
               {"variant", variant},
               {"gt", {{"va", 1}, {"vf", 0}, {"vp", -1}}}};
  if (!teacher.is_null()) payload["teacher_trace"] = teacher;
  return Json{{"id", id}, {"op", "reward"}, {"payload", payload}};
}

TEST(Stream, OneResponsePerRequestUntilShutdown) {
  const std::string perfect = testing::read_file(testing::data_dir() / "perfect_cot.txt");
  std::string in;
  in += Json{{"id", 1}, {"op", "ping"}}.dump() + "\n";
  in += reward_request(2, perfect, "cot", perfect).dump() + "\n";
  in += "{not json\n";
  in += "\n";
  in += Json{{"id", 4}, {"op", "frobnicate"}, {"payload", Json::object()}}.dump() + "\n";
  in += Json{{"id", 5}, {"op", "weights"}, {"payload", {{"group_id", "g"}, {"rewards", {1, 0, 1, 0}}}}}
            .dump() +
        "\n";
  in += Json{{"id", 6}, {"op", "reward"}}.dump() + "\n";
  in += Json{{"id", 7}, {"op", "eval"}, {"payload", {{"outcomes", {1, 1, 0, -1}}}}}.dump() + "\n";
  in += Json{{"id", 8}, {"op", "shutdown"}}.dump() + "\n";
  in += Json{{"id", 9}, {"op", "ping"}}.dump() + "\n";
  const CliResult r = run("serve --workers 3", in);
  EXPECT_EQ(r.code, 0) << r.err;
  const auto lines = lines_of(r.out);
  ASSERT_EQ(lines.size(), 7u);
  const auto by_id = responses_by_id(lines);
  EXPECT_EQ(by_id.at(1)["result"]["pong"], true);
  EXPECT_EQ(by_id.at(1)["result"]["config"]["weights"]["lambda_fmt"], 0.1);
  EXPECT_EQ(by_id.at(2)["ok"], true);
  EXPECT_EQ(by_id.at(2)["result"]["total"], 2.6);
  EXPECT_EQ(by_id.at(4)["error"]["code"], "BAD_REQUEST");
  EXPECT_EQ(by_id.at(5)["result"]["advantages"], Json({1.0, -1.0, 1.0, -1.0}));
  EXPECT_EQ(by_id.at(6)["error"]["code"], "BAD_REQUEST");
  EXPECT_EQ(by_id.at(7)["result"]["gsb"], 0.25);
  EXPECT_EQ(by_id.count(9), 0u);
  int null_ids = 0;
  for (const Json& j : lines) {
    if (j["id"].is_null()) {
      ++null_ids;
      EXPECT_EQ(j["error"]["code"], "BAD_REQUEST");
    }
  }
  EXPECT_EQ(null_ids, 1);
}

TEST(Stream, EndOfInputDrainsPendingWork) {
  std::string in;
  for (int id = 0; id < 20; ++id) in += Json{{"id", id}, {"op", "ping"}}.dump() + "\n";
  const CliResult r = run("serve --workers 2", in);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(responses_by_id(lines_of(r.out)).size(), 20u);
}

TEST(Stream, ConcurrentRewardsResolveToTheirIds) {
  const std::string perfect = testing::read_file(testing::data_dir() / "perfect_cot.txt");
  const std::string base = "<answer>" + std::string("Video A outperforms Video B in visual "
                                                    "aesthetics, visual fidelity, and visual "
                                                    "plausibility.") +
                           "</answer>";
  std::string in;
  for (int id = 0; id < 200; ++id) {
    in += (id % 2 == 0 ? reward_request(id, perfect, "cot", perfect)
                       : reward_request(id, base, "base", nullptr))
              .dump() +
          "\n";
  }
  in += R"({"op":"shutdown"})" "\n";
  const CliResult r = run("serve --workers 4", in);
  const auto lines = lines_of(r.out);
  ASSERT_EQ(lines.size(), 200u);
  const auto by_id = responses_by_id(lines);
  ASSERT_EQ(by_id.size(), 200u);
  for (const auto& [id, j] : by_id) {
    ASSERT_EQ(j["ok"], true) << j.dump();
    EXPECT_EQ(j["result"]["pair_id"], "s" + std::to_string(id));
    // base: VA matches, VF and VP do not -> 0.3 - 0.2 - 0.5 = -0.4, plus 0.1.
    EXPECT_EQ(j["result"]["total"], id % 2 == 0 ? 2.6 : -0.3);
  }
}

}  // namespace
}  // namespace vaes
