// Copyright 2026 The Wealthsim Authors
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

#pragma once

// HTTP facade over one immutable snapshot.
//
//   GET  /api/health    {"status": "ok", "ready": bool, "isa": "..."}
//   GET  /api/summary   per-base statistics of the corrected data
//   GET  /api/presets   the twelve reference designs
//   POST /api/simulate  {"design": {...}, "options": {"freeze_thresholds": bool}}
//
// Before a snapshot is published, /api/summary and /api/simulate answer 503.
// An invalid design answers 422 with {"diagnostics": [...]}. CORS is open to
// any origin.

#include <memory>
#include <string>

#include "json.hpp"

#include "wealthsim/engine.hpp"

namespace wealthsim::service {

struct Reply {
  int status = 200;
  nlohmann::json body;
};

class Service {
 public:
  Service();
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Makes `snap` visible to request handlers. May be called once; later
  /// calls throw.
  void publish(std::shared_ptr<const engine::Snapshot> snap);
  bool ready() const;

  Reply health() const;
  Reply summary() const;
  Reply presets() const;
  Reply simulate(const std::string& body) const;

  /// Binds to `port` (0 picks a free one) and returns the bound port, or -1.
  int bind(const std::string& host, int port);
  /// Serves on the bound socket until stop() is called.
  bool serve();
  void stop();
  /// Blocks until the server accepts connections.
  void wait_until_listening() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace wealthsim::service
