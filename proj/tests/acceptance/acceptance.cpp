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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>

#include "httplib.h"
#include "support.hpp"
#include "wealthsim/correction.hpp"
#include "wealthsim/engine.hpp"
#include "wealthsim/goals.hpp"
#include "wealthsim/json_io.hpp"
#include "wealthsim/report.hpp"
#include "wealthsim/service.hpp"
#include "wealthsim/stats.hpp"
#include "wealthsim/syngen.hpp"
#include "wealthsim/tax.hpp"

using namespace wealthsim;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double rel_err(double a, double b) {
  const double scale = std::max(std::fabs(a), std::fabs(b));
  return scale == 0.0 ? 0.0 : std::fabs(a - b) / scale;
}

/// Random weighted population of positive values, n in [2, 200].
std::pair<std::vector<double>, std::vector<double>> random_series(std::mt19937_64& gen) {
  std::uniform_int_distribution<std::size_t> size(2, 200);
  std::lognormal_distribution<double> value(11.0, 1.5);
  std::uniform_real_distribution<double> weight(0.5, 3.0);
  const std::size_t n = size(gen);
  std::vector<double> x(n), w(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = value(gen);
    w[i] = weight(gen);
  }
  return {x, w};
}

Outcome schedule_fixture() {
  tax::BandSchedule s;
  s.thresholds = {629'352.0, 973'265.0, 2'406'940.0};
  s.rates = tax::model(1, WealthBase::Net).rates;
  const double l1 = tax::liability(1'000'000, s);
  s.rates = tax::model(2, WealthBase::Net).rates;
  const double l2 = tax::liability(3'406'940, s);
  const bool ok = std::fabs(l1 - 3'973.83) <= 0.01 && std::fabs(l2 - 96'449.38) <= 0.01;
  return {ok, fmt("model1(1,000,000) = %.4f, model2(3,406,940) = %.4f", l1, l2)};
}

Outcome elasticity() {
  const double c = goals::goal4_emissions(0.574, 0.5684);
  return {std::fabs(c - (-0.776)) <= 0.005, fmt("goal4(57.4%%, 56.84%%) = %.5f%%", c)};
}

Outcome kakwani_suite() {
  std::mt19937_64 gen(2024);
  double worst_prop = 0.0;
  double worst_lump = 0.0;
  for (int t = 0; t < 1'000; ++t) {
    const auto [x, w] = random_series(gen);
    const stats::WeightedSeries wealth(x, w);
    std::vector<double> prop(x.size()), lump(x.size(), 1'000.0);
    for (std::size_t i = 0; i < x.size(); ++i) prop[i] = 0.02 * x[i];
    worst_prop = std::max(worst_prop, std::fabs(stats::kakwani(stats::WeightedSeries(prop, w), wealth)));
    const double g = stats::gini(wealth);
    worst_lump = std::max(worst_lump,
                          std::fabs(stats::kakwani(stats::WeightedSeries(lump, w), wealth) + g));
  }
  const std::vector<double> x = {1, 2, 3, 4}, w = {1, 1, 1, 1}, tax = {0, 0, 0, 1};
  const double k4 = stats::kakwani(stats::WeightedSeries(tax, w), stats::WeightedSeries(x, w));
  const bool ok = worst_prop <= 1e-12 && worst_lump <= 1e-12 && k4 == 0.5;
  return {ok, fmt("max |K| proportional %.2e, max |K+G| lump-sum %.2e, 4-point K = %.17g",
                  worst_prop, worst_lump, k4)};
}

Outcome gini_oracle() {
  std::mt19937_64 gen(99);
  double worst = 0.0;
  for (int t = 0; t < 500; ++t) {
    const auto [x, w] = random_series(gen);
    worst = std::max(worst, rel_err(stats::gini(stats::WeightedSeries(x, w)), testing::pairwise_gini(x, w)));
  }
  return {worst <= 1e-9, fmt("max relative error %.2e over 500 populations", worst)};
}

Outcome hill_recovery() {
  std::mt19937_64 gen(1'500);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> obs(100'000);
  for (auto& v : obs) v = 1e6 * std::pow(1.0 - u(gen), -1.0 / 1.5);
  const double a = correction::fit_pareto(obs, 1e6).alpha;
  return {a >= 1.47 && a <= 1.53, fmt("alpha_hat = %.4f", a)};
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

/// Top share of the untruncated lognormal(mu, sigma) + Pareto(alpha, w_min)
/// mixture with tail mass p, computed in closed form.
double mixture_top_share(const syngen::SynthSpec& s, double top) {
  const double p = s.p_tail;
  const double mu = s.body_mu, sg = s.body_sigma, a = s.tail_alpha, wm = s.tail_w_min;
  auto survival = [&](double q) {
    const double body = 1.0 - normal_cdf((std::log(q) - mu) / sg);
    const double tail = q <= wm ? 1.0 : std::pow(wm / q, a);
    return (1.0 - p) * body + p * tail;
  };
  auto mass_above = [&](double q) {
    const double body = std::exp(mu + 0.5 * sg * sg) * normal_cdf((mu + sg * sg - std::log(q)) / sg);
    const double tail = q <= wm ? a * wm / (a - 1.0) : a * std::pow(wm, a) * std::pow(q, 1.0 - a) / (a - 1.0);
    return (1.0 - p) * body + p * tail;
  };
  double lo = 1.0, hi = 1e12;
  for (int i = 0; i < 200; ++i) {
    const double mid = std::sqrt(lo * hi);
    (survival(mid) > top ? lo : hi) = mid;
  }
  const double mean = (1.0 - p) * std::exp(mu + 0.5 * sg * sg) + p * a * wm / (a - 1.0);
  return mass_above(hi) / mean;
}

double mean_top_share(const MultiImplicateDataset& ds, double top) {
  double s = 0.0;
  for (int k = 1; k <= kImplicateCount; ++k) {
    const auto& p = ds.implicate(k);
    s += stats::top_share(stats::WeightedSeries(p.base_values(WealthBase::Net), p.weights()), top);
  }
  return s / kImplicateCount;
}

Outcome pipeline_restoration() {
  auto spec = syngen::SynthSpec::defaults();
  spec.n_households = 400'000;
  spec.tail_alpha = 2.0;
  spec.tail_w_min = 1e6;
  spec.p_tail = 0.05;
  spec.countries = {"AA", "BB"};
  spec.seed = 11;
  const auto sc = syngen::make_scenario(spec, {});
  correction::PipelineConfig cfg;
  cfg.seed = 11;
  const auto out = correction::run_pipeline(sc.survey, &sc.national_accounts, &sc.rich_list, cfg);
  const double analytic = mixture_top_share(spec, 0.05);
  const double before = mean_top_share(sc.survey, 0.05);
  const double after = mean_top_share(out.dataset, 0.05);
  const bool ok = std::fabs(after - analytic) <= 0.01 && before < after;
  return {ok, fmt("top-5%% share analytic %.4f, uncorrected %.4f, corrected %.4f", analytic, before, after)};
}

Outcome rescaling_exactness() {
  std::mt19937_64 gen(606);
  std::uniform_real_distribution<double> factor(0.5, 2.0);
  double worst = 0.0;
  std::size_t decreased = 0;
  std::size_t negatives = 0;
  for (int t = 0; t < 100; ++t) {
    const auto pop = testing::random_population(gen, 500, 1, {"AA", "BB", "CC"});
    auto na = syngen::national_accounts_of(pop);
    for (auto& [country, row] : na.aggregates) {
      for (auto& v : row) v = *v * factor(gen);
    }
    const auto post = correction::rescale(pop, na);
    for (const auto& [country, row] : na.aggregates) {
      for (std::size_t s = 0; s < correction::kLinkedCategoryCount; ++s) {
        double agg = 0.0;
        for (const auto& r : post.records) {
          if (r.country != country) continue;
          agg += r.weight * (s == correction::kLiabilitiesSlot ? r.liabilities : r.assets.values[s]);
        }
        worst = std::max(worst, rel_err(agg, *row[s]));
      }
    }
    for (std::size_t i = 0; i < pop.size(); ++i) {
      if (pop.records[i].net_wealth() < 0.0) {
        ++negatives;
        if (post.records[i].net_wealth() < pop.records[i].net_wealth()) ++decreased;
      }
    }
  }
  return {worst <= 1e-9 && decreased == 0 && negatives > 0,
          fmt("max relative aggregate error %.2e; %zu of %zu net-negative records decreased", worst,
              decreased, negatives)};
}

Outcome revenue_oracle() {
  double worst = 0.0;
  std::size_t dominance_failures = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto ds = testing::random_dataset(1'000 + seed, 300, {"AA", "BB"});
    std::array<double, 3> m1{}, m2{};
    for (const auto& d : tax::preset_designs()) {
      double brute = 0.0;
      for (int k = 1; k <= kImplicateCount; ++k) {
        const auto& p = ds.implicate(k);
        const auto v = p.base_values(d.base);
        const auto w = p.weights();
        const std::array<double, 3> t = {testing::scan_quantile(v, w, 0.90), testing::scan_quantile(v, w, 0.95),
                                         testing::scan_quantile(v, w, 0.99)};
        for (std::size_t i = 0; i < v.size(); ++i) brute += w[i] * testing::band_tax(v[i], t, d.rates);
      }
      brute /= kImplicateCount;
      const double engine = tax::revenue(ds, d);
      worst = std::max(worst, rel_err(engine, brute));
      const auto b = static_cast<std::size_t>(d.base);
      if (d.label.rfind("model1_", 0) == 0) m1[b] = engine;
      if (d.label.rfind("model2_", 0) == 0) m2[b] = engine;
    }
    for (std::size_t b = 0; b < 3; ++b) dominance_failures += m2[b] < m1[b];
  }
  return {worst <= 1e-9 && dominance_failures == 0,
          fmt("max relative error %.2e over 100 x 12; Model 2 < Model 1 in %zu cases", worst,
              dominance_failures)};
}

Outcome accounting_identity() {
  auto spec = syngen::SynthSpec::defaults();
  spec.n_households = 10'000;
  spec.implicate_noise = 0.05;
  const auto ds = syngen::generate(spec);
  const engine::Snapshot snap(ds, ds);
  double worst = 0.0;
  for (const auto& d : tax::preset_designs()) {
    const auto ev = snap.evaluate(d);
    for (int k = 1; k <= kImplicateCount; ++k) {
      const auto idx = static_cast<std::size_t>(k - 1);
      const auto& pre = ds.implicate(k);
      const auto post = goals::apply_tax(pre, d, ev.schedules[idx]);
      long double delta = 0.0L;
      for (std::size_t i = 0; i < pre.size(); ++i) {
        delta += static_cast<long double>(pre.records[i].weight) *
                 (pre.records[i].net_wealth() - post.records[i].net_wealth());
      }
      worst = std::max(worst, rel_err(static_cast<double>(delta), ev.per_implicate[idx].revenue));
    }
  }
  return {worst <= 1e-9, fmt("max relative error %.2e over 12 presets x 5 implicates", worst)};
}

config::RunConfig small_run(const std::filesystem::path& out) {
  config::RunConfig cfg;
  auto spec = syngen::SynthSpec::defaults();
  spec.n_households = 20'000;
  spec.countries = {"AA", "BB"};
  spec.implicate_noise = 0.02;
  cfg.input.synth = spec;
  cfg.input.scenario = syngen::ScenarioSpec{};
  cfg.set_seed(2'026);
  cfg.output_dir = out;
  return cfg;
}

Outcome determinism() {
  testing::TempDir dir;
  const auto a = report::run(small_run(dir / "a"));
  report::run(small_run(dir / "b"));
  std::size_t differ = 0;
  for (const auto& f : a.files) {
    const auto rel = std::filesystem::relative(f, dir / "a");
    if (testing::read_file(f) != testing::read_file(dir / "b" / rel)) ++differ;
  }
  return {differ == 0 && !a.files.empty(),
          fmt("%zu of %zu output files differ between two runs", differ, a.files.size())};
}

Outcome service_parity() {
  testing::TempDir dir;
  const auto cfg = small_run(dir / "out");
  auto prepared = config::prepare(cfg);
  auto snap = std::make_shared<const engine::Snapshot>(std::move(prepared.snapshot));
  const auto designs = tax::preset_designs();
  report::write_outputs(*snap, designs, cfg.output_dir, cfg.seed);
  const auto summary = json::parse(testing::read_file(cfg.output_dir / "summary.json"));

  service::Service svc;
  svc.publish(snap);
  const int port = svc.bind("127.0.0.1", 0);
  if (port <= 0) return {false, "could not bind a port"};
  std::thread server([&] { svc.serve(); });
  svc.wait_until_listening();
  httplib::Client cli("127.0.0.1", port);
  std::size_t equal = 0;
  for (std::size_t i = 0; i < designs.size(); ++i) {
    const auto res = cli.Post("/api/simulate", json{{"design", json_io::to_json(designs[i])}}.dump(),
                              "application/json");
    if (!res || res->status != 200) continue;
    const auto served = json_io::report_from_json(json::parse(res->body));
    const auto batch = json_io::report_from_json(summary["designs"][i]["report"]);
    equal += served == batch;
  }
  svc.stop();
  server.join();
  return {equal == designs.size(), fmt("%zu of %zu preset reports identical", equal, designs.size())};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"schedule fixture", schedule_fixture},
      {"elasticity consistency", elasticity},
      {"kakwani suite", kakwani_suite},
      {"gini oracle equivalence", gini_oracle},
      {"hill estimator recovery", hill_recovery},
      {"pipeline restoration", pipeline_restoration},
      {"rescaling exactness", rescaling_exactness},
      {"revenue oracle", revenue_oracle},
      {"accounting identity", accounting_identity},
      {"determinism", determinism},
      {"batch/service parity", service_parity},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
