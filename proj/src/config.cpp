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

#include "wealthsim/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "wealthsim/json_io.hpp"

namespace wealthsim::config {

namespace {

using nlohmann::json;

class Reader {
 public:
  Reader(std::vector<Diagnostic>& diags, std::filesystem::path base_dir)
      : diags_(diags), base_dir_(std::move(base_dir)) {}

  void error(const std::string& path, const std::string& msg) {
    diags_.push_back({Severity::Error, path, msg});
  }

  bool object(const json& j, const std::string& path) {
    if (j.is_object()) return true;
    error(path, "must be an object");
    return false;
  }

  void number(const json& j, const char* key, double& out, const std::string& path) {
    if (!j.contains(key)) return;
    if (!j[key].is_number()) return error(path + "." + key, "must be a number");
    out = j[key].get<double>();
  }

  void boolean(const json& j, const char* key, bool& out, const std::string& path) {
    if (!j.contains(key)) return;
    if (!j[key].is_boolean()) return error(path + "." + key, "must be true or false");
    out = j[key].get<bool>();
  }

  std::optional<std::filesystem::path> file(const json& j, const std::string& path) {
    if (!j.is_string()) {
      error(path, "must be a file path");
      return std::nullopt;
    }
    std::filesystem::path p = j.get<std::string>();
    if (p.is_relative()) p = base_dir_ / p;
    if (!std::filesystem::is_regular_file(p)) {
      error(path, "file not found: " + p.string());
      return std::nullopt;
    }
    return p;
  }

  std::set<std::string> string_set(const json& j, const std::string& path) {
    std::set<std::string> out;
    if (!j.is_array()) {
      error(path, "must be an array of strings");
      return out;
    }
    for (const auto& v : j) {
      if (v.is_string()) out.insert(v.get<std::string>());
      else error(path, "must be an array of strings");
    }
    return out;
  }

  std::map<std::string, std::string> string_map(const json& j, const std::string& path) {
    std::map<std::string, std::string> out;
    if (!object(j, path)) return out;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.value().is_string()) out[it.key()] = it.value().get<std::string>();
      else error(path + "." + it.key(), "must be a string");
    }
    return out;
  }

  const std::filesystem::path& base_dir() const { return base_dir_; }
  std::vector<Diagnostic>& diags() { return diags_; }

 private:
  std::vector<Diagnostic>& diags_;
  std::filesystem::path base_dir_;
};

void parse_input(const json& j, Reader& rd, RunConfig& out) {
  if (!rd.object(j, "input")) return;
  const bool has_csv = j.contains("csv");
  const bool has_synth = j.contains("synth");
  if (has_csv == has_synth) {
    rd.error("input", "exactly one of input.csv and input.synth is required");
    return;
  }
  if (has_csv) {
    const json& files = j["csv"];
    if (!files.is_array() || files.empty()) {
      rd.error("input.csv", "must be a non-empty array of file paths");
    } else {
      for (std::size_t i = 0; i < files.size(); ++i) {
        if (auto p = rd.file(files[i], "input.csv[" + std::to_string(i) + "]")) {
          out.input.csv.push_back(*p);
        }
      }
    }
    if (j.contains("column_map")) {
      out.input.column_map.header_for = rd.string_map(j["column_map"], "input.column_map");
      for (const auto& [canonical, header] : out.input.column_map.header_for) {
        const auto& cols = canonical_columns();
        if (std::find(cols.begin(), cols.end(), canonical) == cols.end()) {
          rd.error("input.column_map." + canonical, "unknown dataset column");
        }
      }
    }
    if (j.contains("scenario")) rd.error("input.scenario", "only valid with input.synth");
    return;
  }
  out.input.synth = json_io::synth_spec_from_json(j["synth"], rd.diags(), "input.synth");
  if (j.contains("scenario")) {
    syngen::ScenarioSpec sc;
    const json& s = j["scenario"];
    if (rd.object(s, "input.scenario")) {
      rd.number(s, "truncate_quantile", sc.truncate_quantile, "input.scenario");
      rd.number(s, "richlist_quantile", sc.richlist_quantile, "input.scenario");
      if (!(sc.truncate_quantile > 0.0 && sc.truncate_quantile <= sc.richlist_quantile &&
            sc.richlist_quantile < 1.0)) {
        rd.error("input.scenario", "need 0 < truncate_quantile <= richlist_quantile < 1");
      }
    }
    out.input.scenario = sc;
  }
}

void parse_pipeline(const json& j, Reader& rd, correction::PipelineConfig& p) {
  const std::string path = "pipeline";
  if (!rd.object(j, path)) return;
  if (j.contains("steps") && rd.object(j["steps"], path + ".steps")) {
    const json& s = j["steps"];
    const std::string sp = path + ".steps";
    for (auto it = s.begin(); it != s.end(); ++it) {
      static const std::set<std::string> known = {"adjust_weights",  "link",
                                                  "correct_deposits", "impute_tail",
                                                  "allocate_portfolio", "rescale"};
      if (known.count(it.key()) == 0) rd.error(sp + "." + it.key(), "unknown pipeline step");
    }
    rd.boolean(s, "adjust_weights", p.steps.adjust_weights, sp);
    rd.boolean(s, "link", p.steps.link, sp);
    rd.boolean(s, "correct_deposits", p.steps.correct_deposits, sp);
    rd.boolean(s, "impute_tail", p.steps.impute_tail, sp);
    rd.boolean(s, "allocate_portfolio", p.steps.allocate_portfolio, sp);
    rd.boolean(s, "rescale", p.steps.rescale, sp);
  }
  rd.number(j, "theta", p.theta, path);
  if (!(p.theta >= 0.0 && p.theta <= 1.0)) rd.error(path + ".theta", "theta must lie in [0, 1]");
  rd.number(j, "w_min", p.w_min, path);
  if (!(p.w_min > 0.0)) rd.error(path + ".w_min", "w_min must be positive");
  rd.number(j, "liability_ratio", p.portfolio.liability_ratio, path);
  if (j.contains("allocation_shares")) {
    const json& a = j["allocation_shares"];
    if (rd.object(a, path + ".allocation_shares")) {
      p.portfolio.allocation_shares = AssetVector{};
      for (auto it = a.begin(); it != a.end(); ++it) {
        const std::string ap = path + ".allocation_shares." + it.key();
        auto c = parse_category(it.key());
        if (!c) rd.error(ap, "unknown asset category");
        else if (!it.value().is_number()) rd.error(ap, "must be a number");
        else p.portfolio.allocation_shares[*c] = it.value().get<double>();
      }
    }
  }
  try {
    p.portfolio.validate();
  } catch (const Error& e) {
    rd.error(path, e.what());
  }
  if (j.contains("sampling")) {
    const json& s = j["sampling"];
    if (s == "random") p.sampling = correction::SamplingMode::Random;
    else if (s == "quantile_grid") p.sampling = correction::SamplingMode::QuantileGrid;
    else rd.error(path + ".sampling", "must be \"random\" or \"quantile_grid\"");
  }
  if (j.contains("skip_deposit_countries")) {
    p.skip_deposit_countries = rd.string_set(j["skip_deposit_countries"],
                                             path + ".skip_deposit_countries");
  }
  if (j.contains("skip_tail_countries")) {
    p.skip_tail_countries = rd.string_set(j["skip_tail_countries"], path + ".skip_tail_countries");
  }
}

void parse_designs(const json& j, Reader& rd, std::vector<tax::TaxDesign>& designs) {
  designs.clear();
  if (!j.is_array()) {
    rd.error("designs", "must be an array of designs");
    return;
  }
  if (j.empty()) {
    rd.error("designs", "at least one design is required");
    return;
  }
  std::set<std::string> labels;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string path = "designs[" + std::to_string(i) + "]";
    designs.push_back(json_io::design_from_json(j[i], path, rd.diags()));
    if (!labels.insert(designs.back().label).second) {
      rd.error(path + ".label", "duplicate label '" + designs.back().label + "'");
    }
  }
}

}  // namespace

void RunConfig::set_seed(std::uint64_t s) {
  seed = s;
  pipeline.seed = s;
  if (input.synth) input.synth->seed = s;
}

std::vector<Diagnostic> parse(const json& j, const std::filesystem::path& base_dir,
                              RunConfig& out) {
  std::vector<Diagnostic> diags;
  Reader rd(diags, base_dir);
  if (!rd.object(j, "")) return diags;
  static const std::set<std::string> known = {
      "input",    "national_accounts", "rich_list",  "category_aliases", "pipeline",
      "designs",  "thresholds",        "output_dir", "seed"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (known.count(it.key()) == 0) {
      diags.push_back({Severity::Warning, it.key(), "unknown key ignored"});
    }
  }

  if (!j.contains("input")) rd.error("input", "input is required");
  else parse_input(j["input"], rd, out);

  if (j.contains("national_accounts")) {
    out.national_accounts = rd.file(j["national_accounts"], "national_accounts");
  }
  if (j.contains("rich_list")) out.rich_list = rd.file(j["rich_list"], "rich_list");
  if (j.contains("category_aliases")) {
    out.category_aliases = rd.string_map(j["category_aliases"], "category_aliases");
  }
  if (j.contains("pipeline")) parse_pipeline(j["pipeline"], rd, out.pipeline);
  if (j.contains("designs")) parse_designs(j["designs"], rd, out.designs);
  if (j.contains("thresholds")) {
    const json& t = j["thresholds"];
    if (t == "per_implicate") out.thresholds = tax::ThresholdMode::PerImplicate;
    else if (t == "shared") out.thresholds = tax::ThresholdMode::Shared;
    else rd.error("thresholds", "must be \"per_implicate\" or \"shared\"");
  }
  if (j.contains("output_dir")) {
    if (!j["output_dir"].is_string()) {
      rd.error("output_dir", "must be a directory path");
    } else {
      std::filesystem::path p = j["output_dir"].get<std::string>();
      out.output_dir = p.is_relative() ? base_dir / p : p;
    }
  } else {
    out.output_dir = base_dir / out.output_dir;
  }
  std::uint64_t seed = out.seed;
  if (j.contains("seed")) {
    const json& v = j["seed"];
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
      rd.error("seed", "must be a nonnegative integer");
    } else {
      seed = v.get<std::uint64_t>();
    }
  }
  const bool synth_seed = j.contains("input") && j["input"].is_object() &&
                          j["input"].contains("synth") && j["input"]["synth"].is_object() &&
                          j["input"]["synth"].contains("seed");
  const std::uint64_t synth_seed_value = out.input.synth ? out.input.synth->seed : 0;
  out.set_seed(seed);
  if (synth_seed) out.input.synth->seed = synth_seed_value;
  return diags;
}

std::vector<Diagnostic> validate_file(const std::filesystem::path& path, RunConfig* out) {
  std::ifstream in(path);
  if (!in) return {{Severity::Error, "", "cannot open config file " + path.string()}};
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    return {{Severity::Error, "", std::string("malformed JSON: ") + e.what()}};
  }
  RunConfig cfg;
  auto diags = parse(j, path.parent_path().empty() ? "." : path.parent_path(), cfg);
  if (out != nullptr) *out = std::move(cfg);
  return diags;
}

RunConfig load(const std::filesystem::path& path) {
  RunConfig cfg;
  const auto diags = validate_file(path, &cfg);
  if (has_errors(diags)) {
    std::ostringstream msg;
    msg << path.string() << " is invalid:";
    for (const auto& d : diags) {
      if (d.severity == Severity::Error) {
        msg << "\n  " << (d.path.empty() ? "<root>" : d.path) << ": " << d.message;
      }
    }
    throw Error(Errc::Config, msg.str());
  }
  return cfg;
}

Inputs load_inputs(const RunConfig& cfg) {
  Inputs in;
  if (cfg.input.synth && cfg.input.scenario) {
    auto sc = syngen::make_scenario(*cfg.input.synth, *cfg.input.scenario);
    in.survey = std::move(sc.survey);
    in.rich_list = std::move(sc.rich_list);
    in.national_accounts = std::move(sc.national_accounts);
  } else if (cfg.input.synth) {
    in.survey = syngen::generate(*cfg.input.synth);
  } else {
    in.survey = load_population(cfg.input.csv, cfg.input.column_map);
  }
  if (cfg.national_accounts) {
    in.national_accounts = correction::load_national_accounts(*cfg.national_accounts,
                                                              cfg.category_aliases);
  }
  if (cfg.rich_list) in.rich_list = load_rich_list(*cfg.rich_list);
  validate_dataset(in.survey);
  return in;
}

Prepared prepare(const RunConfig& cfg) {
  Inputs in = load_inputs(cfg);
  auto result = correction::run_pipeline(in.survey,
                                         in.national_accounts ? &*in.national_accounts : nullptr,
                                         in.rich_list ? &*in.rich_list : nullptr, cfg.pipeline);
  engine::Snapshot snap(std::move(in.survey), result.dataset, cfg.thresholds);
  return Prepared{std::move(result), std::move(snap)};
}

}  // namespace wealthsim::config
