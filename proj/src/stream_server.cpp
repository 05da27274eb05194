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

#include "vaes/stream_server.hpp"

#include <condition_variable>
#include <deque>
#include <filesystem>
#include <functional>
#include <istream>
#include <mutex>
#include <ostream>
#include <thread>
#include <vector>

namespace vaes {

namespace {

Json failure(const Json& id, const Json& error) {
  return Json{{"id", id}, {"ok", false}, {"error", error}};
}

Json bad_request(const Json& id, const std::string& message) {
  return failure(id, Json{{"code", code_name(ErrorCode::kBadRequest)}, {"message", message}});
}

class WorkQueue {
 public:
  explicit WorkQueue(int workers) {
    for (int i = 0; i < workers; ++i) threads_.emplace_back([this] { loop(); });
  }

  ~WorkQueue() { drain(); }

  void push(std::function<void()> job) {
    {
      std::lock_guard lock(mu_);
      jobs_.push_back(std::move(job));
    }
    cv_.notify_one();
  }

  // Runs every queued job, then stops the workers.
  void drain() {
    {
      std::lock_guard lock(mu_);
      closing_ = true;
    }
    cv_.notify_all();
    for (std::thread& t : threads_) {
      if (t.joinable()) t.join();
    }
  }

 private:
  void loop() {
    for (;;) {
      std::function<void()> job;
      {
        std::unique_lock lock(mu_);
        cv_.wait(lock, [this] { return closing_ || !jobs_.empty(); });
        if (jobs_.empty()) return;
        job = std::move(jobs_.front());
        jobs_.pop_front();
      }
      job();
    }
  }

  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<std::function<void()>> jobs_;
  bool closing_ = false;
  std::vector<std::thread> threads_;
};

}  // namespace

Json handle_request(const Engine& engine, const Json& request) {
  if (!request.is_object()) return bad_request(nullptr, "request must be a JSON object");
  const Json id = request.contains("id") ? request["id"] : Json(nullptr);
  if (!request.contains("op") || !request["op"].is_string()) {
    return bad_request(id, "request needs a string 'op'");
  }
  const std::string op = request["op"].get<std::string>();
  if (op == "ping") {
    return Json{{"id", id}, {"ok", true}, {"result", {{"pong", true}, {"config", engine.config()}}}};
  }
  if (!request.contains("payload")) return bad_request(id, "request needs a 'payload'");
  const Json& payload = request["payload"];
  try {
    Json result;
    if (op == "parse") {
      result = engine.parse(payload);
    } else if (op == "reward") {
      result = engine.reward(payload);
    } else if (op == "synthesize") {
      result = engine.synthesize(payload, std::filesystem::current_path());
    } else if (op == "eval") {
      result = engine.eval(payload);
    } else if (op == "weights") {
      result = engine.weights(payload);
    } else {
      return bad_request(id, "unknown op '" + op + "'");
    }
    return Json{{"id", id}, {"ok", true}, {"result", std::move(result)}};
  } catch (const std::exception& e) {
    return failure(id, error_json(e));
  }
}

ServeStats serve_stream(const Engine& engine, std::istream& in, std::ostream& out, int workers) {
  if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  ServeStats stats;
  std::mutex out_mu;
  auto emit = [&](const Json& response) {
    const std::string line = response.dump();
    std::lock_guard lock(out_mu);
    out << line << '\n';
    out.flush();
    if (response.contains("ok") && !response["ok"].get<bool>()) ++stats.errors;
  };

  WorkQueue queue(workers);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json request = Json::parse(line, nullptr, false);
    if (request.is_discarded()) {
      ++stats.requests;
      emit(bad_request(nullptr, "request line is not valid JSON"));
      continue;
    }
    if (request.is_object() && request.contains("op") && request["op"] == "shutdown") break;
    ++stats.requests;
    queue.push([&engine, &emit, request = std::move(request)] {
      emit(handle_request(engine, request));
    });
  }
  queue.drain();
  return stats;
}

}  // namespace vaes
