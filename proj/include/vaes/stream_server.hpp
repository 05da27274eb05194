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

// Newline-delimited JSON request/response loop.
//
// Request:   {"id": <any>, "op": "parse" | "reward" | "synthesize" | "eval" |
//                                "weights" | "ping" | "shutdown",
//             "payload": {...}}
// Response:  {"id": <same>, "ok": true, "result": {...}}
//            {"id": <same>, "ok": false, "error": {"code", "message"}}
//
// Requests run on a worker pool, so responses may come back in any order.
// Each response is written as one line under a lock. "shutdown" (or end of
// input) stops reading, lets queued work finish and returns; shutdown itself
// gets no response.

#pragma once

#include <iosfwd>

#include "vaes/commands.hpp"

namespace vaes {

struct ServeStats {
  std::size_t requests = 0;
  std::size_t errors = 0;
};

// Serves until shutdown or EOF. `workers` <= 0 uses the hardware concurrency.
ServeStats serve_stream(const Engine& engine, std::istream& in, std::ostream& out,
                        int workers = 0);

// Handles one request object and returns its response; never throws.
Json handle_request(const Engine& engine, const Json& request);

}  // namespace vaes
