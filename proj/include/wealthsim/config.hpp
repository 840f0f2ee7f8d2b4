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

// Run configuration file (JSON). Schema, all keys optional unless noted:
//
//   {
//     "input": {                      required; exactly one of csv / synth
//       "csv": ["survey.csv", ...],   dataset CSV files, concatenated
//       "column_map": {"weight": "HW0010", ...},
//       "synth": { SynthSpec },       generated population
//       "scenario": {                 with synth: survey + rich list + NA
//         "truncate_quantile": 0.999, "richlist_quantile": 0.9999 }
//     },
//     "national_accounts": "na.csv",
//     "rich_list": "richlist.csv",
//     "category_aliases": {"F2M": "deposits", ...},
//     "pipeline": {
//       "steps": {"adjust_weights": true, "link": true, "correct_deposits": true,
//                 "impute_tail": true, "allocate_portfolio": true, "rescale": true},
//       "theta": 0.05, "w_min": 1e6, "liability_ratio": 0.05,
//       "allocation_shares": {"deposits": 0.05, ...},
//       "sampling": "random" | "quantile_grid",
//       "skip_deposit_countries": [...], "skip_tail_countries": [...]
//     },
//     "designs": [{"label": ..., "base": "net", "exemption_percentile": 90,
//                  "rates": [0.01, 0.02, 0.03]}, ...],   default: the 12 presets
//     "thresholds": "per_implicate" | "shared",
//     "output_dir": "out",
//     "seed": 1
//   }
//
// Relative paths resolve against the directory of the config file. The run
// seed drives both synthetic generation and tail sampling.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "wealthsim/correction.hpp"
#include "wealthsim/dataset.hpp"
#include "wealthsim/engine.hpp"
#include "wealthsim/error.hpp"
#include "wealthsim/syngen.hpp"
#include "wealthsim/tax.hpp"

namespace wealthsim::config {

struct InputConfig {
  std::vector<std::filesystem::path> csv;
  ColumnMap column_map;
  std::optional<syngen::SynthSpec> synth;
  std::optional<syngen::ScenarioSpec> scenario;
};

struct RunConfig {
  InputConfig input;
  std::optional<std::filesystem::path> national_accounts;
  std::optional<std::filesystem::path> rich_list;
  std::map<std::string, std::string> category_aliases;
  correction::PipelineConfig pipeline;
  std::vector<tax::TaxDesign> designs = tax::preset_designs();
  tax::ThresholdMode thresholds = tax::ThresholdMode::PerImplicate;
  std::filesystem::path output_dir = "out";
  std::uint64_t seed = 1;

  /// Sets the run seed and every seed derived from it.
  void set_seed(std::uint64_t s);
};

/// Reads `j` into `out`, returning every problem found. `base_dir` anchors
/// relative paths. Referenced files must exist.
std::vector<Diagnostic> parse(const nlohmann::json& j, const std::filesystem::path& base_dir,
                              RunConfig& out);

/// Reads and checks a config file. Unreadable or malformed JSON is reported
/// as a diagnostic at path "".
std::vector<Diagnostic> validate_file(const std::filesystem::path& path, RunConfig* out = nullptr);

/// Throws Error(Config) listing the error-level diagnostics.
RunConfig load(const std::filesystem::path& path);

struct Inputs {
  MultiImplicateDataset survey;
  std::optional<correction::NationalAccountsTable> national_accounts;
  std::optional<RichList> rich_list;
};

/// Loads or generates the survey and the correction inputs.
Inputs load_inputs(const RunConfig& cfg);

struct Prepared {
  correction::PipelineResult pipeline;
  engine::Snapshot snapshot;
};

/// Loads the inputs, runs the correction pipeline and builds the snapshot.
Prepared prepare(const RunConfig& cfg);

}  // namespace wealthsim::config
