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

// wealthsim command-line front end.
//
//   wealthsim run      --config <path> [--seed N] [--out DIR]
//   wealthsim validate --config <path>
//   wealthsim synth    --spec <path> --out <csv> [--rich-list <csv>] [--national-accounts <csv>]
//   wealthsim serve    --config <path> --port N [--host H]
//
// Exit codes: 0 ok, 2 configuration error, 3 data error.

#include <csignal>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "wealthsim/config.hpp"
#include "wealthsim/correction.hpp"
#include "wealthsim/json_io.hpp"
#include "wealthsim/report.hpp"
#include "wealthsim/service.hpp"
#include "wealthsim/syngen.hpp"

namespace {

using namespace wealthsim;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;

int exit_code_for(const Error& e) { return is_config_error(e.code()) ? kExitConfig : kExitData; }

void print_diagnostics(const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags) {
    std::cerr << to_string(d.severity) << ": " << (d.path.empty() ? "<root>" : d.path) << ": "
              << d.message << '\n';
  }
}

config::RunConfig load_or_report(const std::string& path, int& code) {
  config::RunConfig cfg;
  const auto diags = config::validate_file(path, &cfg);
  print_diagnostics(diags);
  code = has_errors(diags) ? kExitConfig : kExitOk;
  return cfg;
}

int cmd_validate(const std::string& path) {
  config::RunConfig cfg;
  const auto diags = config::validate_file(path, &cfg);
  std::cout << json_io::to_json(diags).dump(2) << '\n';
  return has_errors(diags) ? kExitConfig : kExitOk;
}

int cmd_run(const std::string& path, std::optional<std::uint64_t> seed,
            std::optional<std::string> out_dir) {
  int code = kExitOk;
  auto cfg = load_or_report(path, code);
  if (code != kExitOk) return code;
  if (seed) cfg.set_seed(*seed);
  if (out_dir) cfg.output_dir = *out_dir;
  const auto out = report::run(cfg);
  for (const auto& f : out.files) std::cout << f.string() << '\n';
  return kExitOk;
}

int cmd_synth(const std::string& spec_path, const std::string& out,
              const std::string& rich_list_out, const std::string& na_out) {
  std::ifstream in(spec_path);
  if (!in) throw Error(Errc::Config, "cannot open " + spec_path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::Config, std::string("malformed JSON: ") + e.what());
  }
  std::vector<Diagnostic> diags;
  const nlohmann::json& spec_json = j.contains("synth") ? j["synth"] : j;
  const auto spec = json_io::synth_spec_from_json(spec_json, diags);
  syngen::ScenarioSpec sc;
  if (j.contains("scenario") && j["scenario"].is_object()) {
    sc.truncate_quantile = j["scenario"].value("truncate_quantile", sc.truncate_quantile);
    sc.richlist_quantile = j["scenario"].value("richlist_quantile", sc.richlist_quantile);
  }
  print_diagnostics(diags);
  if (has_errors(diags)) return kExitConfig;

  if (rich_list_out.empty() && na_out.empty()) {
    save_population(out, syngen::generate(spec));
    return kExitOk;
  }
  const auto scenario = syngen::make_scenario(spec, sc);
  save_population(out, scenario.survey);
  if (!rich_list_out.empty()) {
    std::ofstream f(rich_list_out);
    if (!f) throw Error(Errc::Io, "cannot write " + rich_list_out);
    write_rich_list_csv(f, scenario.rich_list);
  }
  if (!na_out.empty()) {
    std::ofstream f(na_out);
    if (!f) throw Error(Errc::Io, "cannot write " + na_out);
    correction::write_national_accounts_csv(f, scenario.national_accounts);
  }
  return kExitOk;
}

service::Service* g_service = nullptr;

extern "C" void handle_signal(int) {
  if (g_service != nullptr) g_service->stop();
}

int cmd_serve(const std::string& path, int port, const std::string& host) {
  int code = kExitOk;
  const auto cfg = load_or_report(path, code);
  if (code != kExitOk) return code;

  service::Service svc;
  const int bound = svc.bind(host, port);
  if (bound < 0) throw Error(Errc::Io, "cannot bind " + host + ":" + std::to_string(port));
  g_service = &svc;
  std::signal(SIGINT, handle_signal);
  std::signal(SIGTERM, handle_signal);
  std::cerr << "listening on " << host << ':' << bound << " (loading snapshot)\n";

  // Requests are answered with 503 until the snapshot is ready.
  int load_code = kExitOk;
  std::thread loader([&] {
    try {
      auto prepared = config::prepare(cfg);
      svc.publish(std::make_shared<const engine::Snapshot>(std::move(prepared.snapshot)));
      std::cerr << "snapshot ready\n";
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << '\n';
      load_code = exit_code_for(e);
      svc.stop();
    }
  });
  svc.serve();
  loader.join();
  g_service = nullptr;
  return load_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wealth-tax microsimulation workbench"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  auto* run = app.add_subcommand("run", "Correct the data, evaluate designs, write outputs");
  run->add_option("--config", config_path, "Run configuration (JSON)")->required();
  run->add_option("--seed", seed, "Override the run seed");
  run->add_option("--out", out_dir, "Override the output directory");

  auto* validate = app.add_subcommand("validate", "Check a run configuration");
  validate->add_option("--config", config_path, "Run configuration (JSON)")->required();

  std::string spec_path, synth_out, rich_list_out, na_out;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset CSV");
  synth->add_option("--spec", spec_path, "Synthetic population spec (JSON)")->required();
  synth->add_option("--out", synth_out, "Dataset CSV to write")->required();
  synth->add_option("--rich-list", rich_list_out,
                    "Also write a truncated survey's rich list to this CSV");
  synth->add_option("--national-accounts", na_out,
                    "Also write the national accounts of the full population to this CSV");

  int port = 8080;
  std::string host = "127.0.0.1";
  auto* serve = app.add_subcommand("serve", "Serve the HTTP API");
  serve->add_option("--config", config_path, "Run configuration (JSON)")->required();
  serve->add_option("--port", port, "TCP port")->required();
  serve->add_option("--host", host, "Bind address");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return cmd_run(config_path, seed, out_dir);
    if (*validate) return cmd_validate(config_path);
    if (*synth) return cmd_synth(spec_path, synth_out, rich_list_out, na_out);
    if (*serve) return cmd_serve(config_path, port, host);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}
