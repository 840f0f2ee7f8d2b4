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

// JSON shapes shared by summary.json and the HTTP API. Field names of
// GoalReport are used verbatim; Kakwani is null when no tax is raised.

#include "json.hpp"

#include <string>
#include <vector>

#include "wealthsim/error.hpp"
#include "wealthsim/goals.hpp"
#include "wealthsim/syngen.hpp"
#include "wealthsim/tax.hpp"

namespace wealthsim::json_io {

using nlohmann::json;

json to_json(const tax::TaxDesign& d);
json to_json(const tax::BandSchedule& s);
json to_json(const goals::GoalReport& r);
json to_json(const goals::RadarScores& r);
json to_json(const std::vector<Diagnostic>& diags);

/// Reads a design, appending any problem to `diags` (paths prefixed by
/// `path`). Returns the design as far as it could be read; it is only
/// meaningful when no error was added.
tax::TaxDesign design_from_json(const json& j, const std::string& path,
                                std::vector<Diagnostic>& diags);

/// Reads a design or throws InvalidDesign.
tax::TaxDesign design_from_json(const json& j);

goals::GoalReport report_from_json(const json& j);

/// Fields left out keep their SynthSpec::defaults() value.
syngen::SynthSpec synth_spec_from_json(const json& j, std::vector<Diagnostic>& diags,
                                       const std::string& path = "synth");
syngen::SynthSpec synth_spec_from_json(const json& j);
json to_json(const syngen::SynthSpec& s);

}  // namespace wealthsim::json_io
