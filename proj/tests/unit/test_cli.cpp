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

#include <cstdlib>
#include <sys/wait.h>

#include "doctest.h"
#include "support.hpp"

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(WEALTHSIM_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("exit codes") {
  testing::TempDir dir;
  const auto good = dir.write(
      "good.json", R"({"input": {"synth": {"n_households": 1000}, "scenario": {}}, "output_dir": "out"})");
  const auto bad = dir.write(
      "bad.json",
      R"({"input": {"synth": {}}, "designs": [{"base": "net", "exemption_percentile": 90, "rates": [0.03, 0.02, 0.01]}]})");
  const auto missing = dir.write("missing.json", R"({"input": {"csv": ["nope.csv"]}})");
  const auto broken_csv = dir.write("broken.csv", testing::dataset_header() + "\nAA,1,h1,-1,0,0,0,0,0,0,0,0,0,0,0\n");
  const auto data_error = dir.write("data.json", R"({"input": {"csv": ["broken.csv"]}})");

  CHECK(run("validate --config " + good.string()) == 0);
  CHECK(run("validate --config " + bad.string()) == 2);
  CHECK(run("validate --config " + missing.string()) == 2);
  CHECK(run("run --config " + bad.string()) == 2);
  CHECK(run("run --config " + data_error.string()) == 3);
  CHECK(run("run --config " + good.string() + " --seed 3") == 0);
  CHECK(std::filesystem::exists(dir / "out/summary.json"));
  CHECK(run("run --config " + good.string() + " --out " + (dir / "other").string()) == 0);
  CHECK(std::filesystem::exists(dir / "other/figures/fig9_co2.csv"));
  CHECK(run("frobnicate") == 2);
}

TEST_CASE("synth writes a loadable dataset") {
  testing::TempDir dir;
  const auto spec = dir.write("spec.json", R"({"n_households": 300, "countries": ["AA", "BB"]})");
  CHECK(run("synth --spec " + spec.string() + " --out " + (dir / "pop.csv").string()) == 0);
  const auto text = testing::read_file(dir / "pop.csv");
  CHECK(text.rfind("country,implicate,hh_id,weight", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 5 * 300);

  CHECK(run("synth --spec " + spec.string() + " --out " + (dir / "s.csv").string() + " --rich-list " +
            (dir / "rl.csv").string() + " --national-accounts " + (dir / "na.csv").string()) == 0);
  CHECK(std::filesystem::exists(dir / "rl.csv"));
  CHECK(std::filesystem::exists(dir / "na.csv"));

  const auto bad = dir.write("badspec.json", R"({"n_households": 0})");
  CHECK(run("synth --spec " + bad.string() + " --out " + (dir / "x.csv").string()) == 2);
}

}
