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

#include "wealthsim/service.hpp"

#include <atomic>
#include <chrono>

#include "httplib.h"

#include "wealthsim/json_io.hpp"
#include "wealthsim/kernels.hpp"
#include "wealthsim/report.hpp"

namespace wealthsim::service {

namespace {

using nlohmann::json;

Reply not_ready() { return {503, json{{"error", "snapshot not ready"}}}; }

Reply bad_request(const std::string& msg) { return {400, json{{"error", msg}}}; }

}  // namespace

struct Service::Impl {
  // The owner keeps the snapshot alive; handlers read through the atomic
  // pointer, which is written once.
  std::shared_ptr<const engine::Snapshot> owner;
  std::atomic<const engine::Snapshot*> snapshot{nullptr};
  httplib::Server http;
};

Service::Service() : impl_(std::make_unique<Impl>()) {
  auto send = [](httplib::Response& res, const Reply& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  auto& http = impl_->http;
  http.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                            {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                            {"Access-Control-Allow-Headers", "Content-Type"}});
  http.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
  });
  http.Get("/api/health", [this, send](const httplib::Request&, httplib::Response& res) {
    send(res, health());
  });
  http.Get("/api/summary", [this, send](const httplib::Request&, httplib::Response& res) {
    send(res, summary());
  });
  http.Get("/api/presets", [this, send](const httplib::Request&, httplib::Response& res) {
    send(res, presets());
  });
  http.Post("/api/simulate", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, simulate(req.body));
  });
  http.set_exception_handler(
      [send](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        std::string msg = "internal error";
        try {
          std::rethrow_exception(ep);
        } catch (const std::exception& e) {
          msg = e.what();
        } catch (...) {
        }
        send(res, {500, json{{"error", msg}}});
      });
}

Service::~Service() { stop(); }

void Service::publish(std::shared_ptr<const engine::Snapshot> snap) {
  if (!snap) throw Error(Errc::Config, "cannot publish an empty snapshot");
  if (impl_->snapshot.load(std::memory_order_acquire) != nullptr) {
    throw Error(Errc::Config, "snapshot already published");
  }
  impl_->owner = std::move(snap);
  impl_->snapshot.store(impl_->owner.get(), std::memory_order_release);
}

bool Service::ready() const { return impl_->snapshot.load(std::memory_order_acquire) != nullptr; }

Reply Service::health() const {
  return {200, json{{"status", "ok"},
                    {"ready", ready()},
                    {"isa", std::string(kernels::to_string(kernels::active().isa))}}};
}

Reply Service::summary() const {
  const engine::Snapshot* snap = impl_->snapshot.load(std::memory_order_acquire);
  if (snap == nullptr) return not_ready();
  return {200, report::to_json(snap->summary())};
}

Reply Service::presets() const {
  json out = json::array();
  for (const auto& d : tax::preset_designs()) out.push_back(json_io::to_json(d));
  return {200, out};
}

Reply Service::simulate(const std::string& body) const {
  const engine::Snapshot* snap = impl_->snapshot.load(std::memory_order_acquire);
  if (snap == nullptr) return not_ready();
  const auto start = std::chrono::steady_clock::now();

  json req;
  try {
    req = json::parse(body);
  } catch (const json::parse_error& e) {
    return bad_request(std::string("malformed JSON: ") + e.what());
  }
  if (!req.is_object() || !req.contains("design")) {
    return {422, json{{"diagnostics", json_io::to_json(std::vector<Diagnostic>{
                                          {Severity::Error, "design", "design is required"}})}}};
  }
  std::vector<Diagnostic> diags;
  const tax::TaxDesign design = json_io::design_from_json(req["design"], "design", diags);
  bool freeze = false;
  if (req.contains("options")) {
    const json& opt = req["options"];
    if (!opt.is_object()) {
      diags.push_back({Severity::Error, "options", "must be an object"});
    } else if (opt.contains("freeze_thresholds")) {
      if (opt["freeze_thresholds"].is_boolean()) freeze = opt["freeze_thresholds"].get<bool>();
      else diags.push_back({Severity::Error, "options.freeze_thresholds", "must be true or false"});
    }
  }
  if (has_errors(diags)) return {422, json{{"diagnostics", json_io::to_json(diags)}}};

  const auto ev = snap->evaluate(
      design, freeze ? tax::ThresholdMode::Shared : snap->threshold_mode());
  json out = json_io::to_json(ev.report);
  out["design"] = json_io::to_json(ev.design);
  json schedules = json::array();
  for (const auto& s : ev.schedules) schedules.push_back(json_io::to_json(s));
  out["schedules"] = schedules;
  out["diagnostics"] = json_io::to_json(diags);
  out["timing_ms"] = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  return {200, out};
}

int Service::bind(const std::string& host, int port) {
  if (port == 0) return impl_->http.bind_to_any_port(host);
  return impl_->http.bind_to_port(host, port) ? port : -1;
}

bool Service::serve() { return impl_->http.listen_after_bind(); }

void Service::stop() {
  if (impl_ && impl_->http.is_running()) impl_->http.stop();
}

void Service::wait_until_listening() const { impl_->http.wait_until_ready(); }

}  // namespace wealthsim::service
