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

#include "doctest.h"
#include "wealthsim/json_io.hpp"

using namespace wealthsim;
using namespace wealthsim::json_io;

TEST_SUITE("json_io") {

TEST_CASE("design round trip") {
  for (const auto& d : tax::preset_designs()) CHECK(design_from_json(to_json(d)) == d);
  const auto j = to_json(tax::model(2, WealthBase::Fip));
  CHECK(j["base"] == "fip");
  CHECK(j["rates"][2] == 0.05);
}

TEST_CASE("design diagnostics carry paths") {
  std::vector<Diagnostic> diags;
  design_from_json(json{{"base", "land"}, {"exemption_percentile", 90}, {"rates", {0, 0, 0}}},
                   "designs[1]", diags);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].path == "designs[1].base");

  diags.clear();
  design_from_json(json{{"base", "net"}, {"exemption_percentile", 95}, {"rates", {0.01, 0.02, 0.03}}},
                   "design", diags);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].message == "rate r1 must be 0 when exemption_percentile is 95");
  CHECK(diags[0].path == "design.rates[0]");

  diags.clear();
  design_from_json(json{{"base", "net"}, {"exemption_percentile", 90}, {"rates", {0.01, "x"}}},
                   "design", diags);
  CHECK(diags.size() == 1);
  CHECK(diags[0].message == "rates must be an array of 3 numbers");

  diags.clear();
  design_from_json(json::array(), "design", diags);
  CHECK(diags.size() == 1);

  diags.clear();
  const auto d = design_from_json(
      json{{"base", "property"}, {"exemption_percentile", 95}, {"rates", {0, 0.01, 0.02}}}, "", diags);
  CHECK(diags.empty());
  CHECK(d.label == "property_p95");

  CHECK_THROWS_AS(design_from_json(json{{"base", "net"}}), Error);
}

TEST_CASE("report round trip keeps a missing Kakwani as null") {
  goals::GoalReport r;
  r.revenue = 1.5e9;
  r.co2_change = -0.25;
  auto j = to_json(r);
  CHECK(j["kakwani"].is_null());
  CHECK(report_from_json(j) == r);
  r.kakwani = 0.31;
  CHECK(report_from_json(to_json(r)) == r);
}

TEST_CASE("radar JSON") {
  goals::GoalReport a;
  a.revenue = 10;
  const std::vector<goals::GoalReport> reports = {a};
  const std::vector<std::string> labels = {"x"};
  const auto j = to_json(goals::radar(reports, labels));
  CHECK(j["rows"][0]["label"] == "x");
  CHECK(j["rows"][0]["axes"]["revenue"] == 100.0);
  CHECK(j["rows"][0]["criteria"]["revenue"] == 10.0);
  CHECK(j["rows"][0]["indices"]["revenue"] == 100.0);
  CHECK(j["all_zero_criteria"].size() == 7);
}

TEST_CASE("synth spec reading") {
  const auto s = synth_spec_from_json(json{{"n_households", 50}, {"tail", {{"alpha", 1.8}}},
                                           {"countries", {"AA", "BB"}}, {"seed", 4}});
  CHECK(s.n_households == 50);
  CHECK(s.tail_alpha == 1.8);
  CHECK(s.countries.size() == 2);
  CHECK(s.seed == 4);
  CHECK(synth_spec_from_json(to_json(s)) == s);

  std::vector<Diagnostic> diags;
  synth_spec_from_json(json{{"asset_split", {{"gold", 1.0}}}}, diags);
  CHECK(diags.front().path == "synth.asset_split.gold");
  diags.clear();
  synth_spec_from_json(json{{"n_households", "many"}}, diags);
  CHECK(diags.front().path == "synth.n_households");
  CHECK_THROWS_AS(synth_spec_from_json(json{{"tail", {{"alpha", -1}}}}), Error);
}

TEST_CASE("diagnostics JSON") {
  const auto j = to_json(std::vector<Diagnostic>{{Severity::Warning, "a.b", "m"}});
  CHECK(j[0]["severity"] == "warning");
  CHECK(j[0]["path"] == "a.b");
  CHECK(j[0]["message"] == "m");
}

}
