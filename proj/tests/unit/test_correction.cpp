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

#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "support.hpp"
#include "wealthsim/correction.hpp"
#include "wealthsim/error.hpp"
#include "wealthsim/syngen.hpp"

using namespace wealthsim;
using namespace wealthsim::correction;

namespace {

Errc error_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::Io;
}

constexpr std::size_t kDeposits = static_cast<std::size_t>(AssetCategory::Deposits);
constexpr std::size_t kMainResidence = static_cast<std::size_t>(AssetCategory::MainResidence);

double aggregate(const Population& pop, const std::string& country, std::size_t slot) {
  double s = 0.0;
  for (const auto& r : pop.records) {
    if (r.country != country) continue;
    s += r.weight * (slot == kLiabilitiesSlot ? r.liabilities : r.assets.values[slot]);
  }
  return s;
}

}  // namespace

TEST_SUITE("correction") {

TEST_CASE("national accounts CSV with aliases and household counts") {
  std::istringstream in(
      "country,category,aggregate\n"
      "AA,HOUSEHOLDS,1000\n"
      "AA,F2M,60\n"
      "AA,F22,40\n"
      "AA,liabilities,25\n"
      "BB,main_residence,7\n");
  const auto na = parse_national_accounts_csv(in, {{"F2M", "deposits"}, {"F22", "deposits"}});
  CHECK(na.household_count.at("AA") == 1000);
  CHECK(na.aggregate("AA", kDeposits) == 100.0);
  CHECK(na.aggregate("AA", kLiabilitiesSlot) == 25.0);
  CHECK_FALSE(na.aggregate("AA", kMainResidence));
  CHECK(na.aggregate("BB", kMainResidence) == 7.0);
  CHECK_FALSE(na.aggregate("CC", 0));

  std::stringstream out;
  write_national_accounts_csv(out, na);
  const auto back = parse_national_accounts_csv(out);
  CHECK(back.aggregates == na.aggregates);
  CHECK(back.household_count == na.household_count);
}

TEST_CASE("national accounts errors") {
  auto parse = [](const std::string& s) {
    std::istringstream in(s);
    return parse_national_accounts_csv(in);
  };
  CHECK(error_of([&] { parse("country,category\n"); }) == Errc::MissingColumn);
  CHECK(error_of([&] { parse("country,category,aggregate\nAA,land,1\n"); }) ==
        Errc::MissingColumn);
  CHECK(error_of([&] { parse("country,category,aggregate\nAA,deposits,x\n"); }) ==
        Errc::NonNumericValue);
  CHECK(error_of([&] { parse("country,category,aggregate\nAA,deposits,-1\n"); }) ==
        Errc::NegativeAmount);
  CHECK(error_of([&] { parse("country,category,aggregate\nAA,HOUSEHOLDS,0\n"); }) ==
        Errc::NonPositiveWeight);
}

TEST_CASE("Step 1 scales weights to the household count per country") {
  Population pop;
  pop.records = {testing::household("a", 400, 1, 0), testing::household("b", 500, 1, 0),
                 testing::household("c", 10, 1, 0, 0, "BB"),
                 testing::household("d", 30, 1, 0, 0, "BB")};
  NationalAccountsTable na;
  na.household_count = {{"AA", 1000}, {"BB", 40}};
  const auto out = adjust_weights(pop, na);
  CHECK(out.records[0].weight == doctest::Approx(400 * 10.0 / 9));
  CHECK(out.records[1].weight == doctest::Approx(500 * 10.0 / 9));
  CHECK(out.records[2].weight == 10);  // already on target
  CHECK(out.records[3].weight == 30);
  CHECK(aggregate(out, "AA", 0) == doctest::Approx(1000).epsilon(1e-12));

  na.household_count.erase("BB");
  CHECK(error_of([&] { adjust_weights(pop, na); }) == Errc::UnknownCountry);
}

TEST_CASE("Step 2 reports survey aggregates next to targets") {
  Population pop;
  pop.records = {testing::household("a", 2, 10, 100, 5)};
  NationalAccountsTable na;
  na.set_aggregate("AA", kDeposits, 50);
  const auto links = link_categories(pop, na);
  REQUIRE(links.size() == kLinkedCategoryCount);
  CHECK(links[kDeposits].survey_aggregate == 20);
  CHECK(links[kDeposits].target == 50.0);
  CHECK(links[kMainResidence].survey_aggregate == 200);
  CHECK_FALSE(links[kMainResidence].target);
  CHECK(links[kLiabilitiesSlot].survey_aggregate == 10);
}

TEST_CASE("Step 3 raises deposits to the income floor") {
  Population pop;
  auto r = testing::household("a", 1, 1'000, 0);
  r.gross_income = 100'000;
  auto rich = testing::household("b", 1, 9'000, 0);
  rich.gross_income = 100'000;
  auto other = testing::household("c", 1, 0, 0, 0, "BB");
  other.gross_income = 100'000;
  pop.records = {r, rich, other};

  std::vector<DepositAdjustment> log;
  const auto out = correct_deposits(pop, 0.05, &log, {"BB"});
  CHECK(out.records[0].assets[AssetCategory::Deposits] == 5'000);
  CHECK(out.records[1].assets[AssetCategory::Deposits] == 9'000);
  CHECK(out.records[2].assets[AssetCategory::Deposits] == 0);
  REQUIRE(log.size() == 1);
  CHECK(log[0].id == "a");
  CHECK(log[0].before == 1'000);
  CHECK(log[0].after == 5'000);

  CHECK(correct_deposits(pop, 0.0) == pop);
  CHECK(error_of([&] { correct_deposits(pop, 1.5); }) == Errc::InvalidTheta);
  CHECK(error_of([&] { correct_deposits(pop, -0.1); }) == Errc::InvalidTheta);
}

TEST_CASE("Step 4 Pareto fit") {
  const double e = std::exp(1.0);
  const std::vector<double> flat = {1e6 * e, 1e6 * e, 1e6 * e};
  CHECK(fit_pareto(flat, 1e6).alpha == doctest::Approx(1.0));
  const std::vector<double> two = {2e6, 4e6};
  const auto t = fit_pareto(two, 1e6, TailSource::HfcsPlusRichList);
  CHECK(t.alpha == doctest::Approx(2.0 / (std::log(2.0) + std::log(4.0))));
  CHECK(t.alpha == doctest::Approx(0.9618).epsilon(1e-4));
  CHECK(t.n_fit == 2);
  CHECK(t.source == TailSource::HfcsPlusRichList);

  const std::vector<double> one = {2e6};
  const std::vector<double> low = {2e6, 5e5};
  const std::vector<double> at_min = {1e6, 1e6};
  CHECK(error_of([&] { fit_pareto(one, 1e6); }) == Errc::TooFewObservations);
  CHECK(error_of([&] { fit_pareto(low, 1e6); }) == Errc::ObservationBelowThreshold);
  CHECK(error_of([&] { fit_pareto(at_min, 1e6); }) == Errc::TooFewObservations);
}

TEST_CASE("Step 4 Pareto fit recovers alpha on simulated draws") {
  std::mt19937_64 gen(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> obs(20'000);
  for (auto& x : obs) x = 1e6 * std::pow(1.0 - u(gen), -1.0 / 2.5);
  CHECK(fit_pareto(obs, 1e6).alpha == doctest::Approx(2.5).epsilon(0.05));
}

TEST_CASE("Step 4 gap count and sampling") {
  const ParetoTail tail{2.0, 1e6, 0, TailSource::HfcsPlusRichList};
  CHECK(gap_count(tail, 5e6, 5e7, 10'000) == 396);
  CHECK(gap_count(tail, 5e7, 5e7, 10'000) == 0);
  CHECK(sample_gap(tail, 5e6, 5e6, 10'000, 1).empty());
  CHECK(error_of([&] { sample_gap(tail, 5e5, 5e7, 10'000, 1); }) ==
        Errc::ObservationBelowThreshold);
  CHECK(error_of([&] { sample_gap(tail, 6e7, 5e7, 10'000, 1); }) ==
        Errc::ObservationBelowThreshold);

  for (auto mode : {SamplingMode::Random, SamplingMode::QuantileGrid}) {
    const auto s = sample_gap(tail, 5e6, 5e7, 10'000, 42, mode, "AA", 3);
    REQUIRE(s.size() == 396);
    for (const auto& r : s) {
      CHECK(r.net_wealth() > 5e6);
      CHECK(r.net_wealth() <= 5e7);
      CHECK(r.weight == 1.0);
      CHECK(r.synthetic);
      CHECK(r.implicate == 3);
      CHECK(r.country == "AA");
      CHECK(r.assets[AssetCategory::OtherFinancial] == r.net_wealth());
    }
    CHECK(s.front().id == "S-AA-3-0");
    CHECK(sample_gap(tail, 5e6, 5e7, 10'000, 42, mode, "AA", 3) == s);
  }
  // The grid mode is the mid-point quantile of the truncated tail.
  const auto g = sample_gap(tail, 5e6, 5e7, 10'000, 0, SamplingMode::QuantileGrid);
  const double sa = tail.survival(5e6), sb = tail.survival(5e7);
  const double s0 = sa - (0.5 / 396) * (sa - sb);
  CHECK(g[0].net_wealth() == doctest::Approx(1e6 / std::sqrt(s0)));
  // Different seeds give different random draws.
  CHECK(sample_gap(tail, 5e6, 5e7, 10'000, 1) != sample_gap(tail, 5e6, 5e7, 10'000, 2));
}

TEST_CASE("Step 5 portfolio allocation") {
  TopPortfolioModel m;
  m.liability_ratio = 0.05;
  m.allocation_shares[AssetCategory::OtherFinancial] = 0.6;
  m.allocation_shares[AssetCategory::Deposits] = 0.1;
  m.allocation_shares[AssetCategory::InvestmentProperty] = 0.2;
  m.allocation_shares[AssetCategory::BusinessWealth] = 0.1;
  CHECK_NOTHROW(m.validate());
  const auto [a, l] = allocate_portfolio(100e6, m);
  CHECK(a.gross() == doctest::Approx(105e6));
  CHECK(a[AssetCategory::OtherFinancial] == doctest::Approx(63e6));
  CHECK(a[AssetCategory::Deposits] == doctest::Approx(10.5e6));
  CHECK(a[AssetCategory::InvestmentProperty] == doctest::Approx(21e6));
  CHECK(a[AssetCategory::BusinessWealth] == doctest::Approx(10.5e6));
  CHECK(l == doctest::Approx(5e6));
  CHECK(a.gross() - l == doctest::Approx(100e6));

  m.liability_ratio = 0.0;
  const auto [a0, l0] = allocate_portfolio(100e6, m);
  CHECK(l0 == 0.0);
  CHECK(a0[AssetCategory::OtherFinancial] == doctest::Approx(60e6));

  CHECK(error_of([&] { allocate_portfolio(0.0, m); }) == Errc::NonPositiveNetWealth);
  m.allocation_shares[AssetCategory::Bonds] = 0.1;
  CHECK(error_of([&] { m.validate(); }) == Errc::InvalidSpec);
  CHECK_NOTHROW(TopPortfolioModel::defaults().validate());
}

TEST_CASE("Step 6 identity when aggregates already match") {
  std::mt19937_64 gen(3);
  const auto pop = testing::random_population(gen, 30, 1, {"AA", "BB"});
  const auto na = syngen::national_accounts_of(pop);
  const auto out = rescale(pop, na);
  for (std::size_t i = 0; i < pop.size(); ++i) {
    for (std::size_t c = 0; c < kAssetCategoryCount; ++c) {
      CHECK(out.records[i].assets.values[c] ==
            doctest::Approx(pop.records[i].assets.values[c]).epsilon(1e-12));
    }
    CHECK(out.records[i].liabilities == doctest::Approx(pop.records[i].liabilities).epsilon(1e-12));
  }
}

TEST_CASE("Step 6 scales categories proportionally") {
  Population pop;
  pop.records = {testing::household("a", 1, 10, 0), testing::household("b", 1, 40, 0)};
  NationalAccountsTable na;
  na.set_aggregate("AA", kDeposits, 100);
  std::vector<RescaleFactors> rep;
  const auto out = rescale(pop, na, &rep);
  CHECK(out.records[0].assets[AssetCategory::Deposits] == 20);
  CHECK(out.records[1].assets[AssetCategory::Deposits] == 80);
  REQUIRE(rep.size() == 1);
  CHECK(rep[0].factor[kDeposits] == 2.0);
  CHECK(rep[0].factor[kMainResidence] == 1.0);
}

TEST_CASE("Step 6 holds net-negative households and redistributes the remainder") {
  Population pop;
  pop.records = {testing::household("neg", 1, 10, 0, 30), testing::household("pos", 1, 40, 0, 10)};
  NationalAccountsTable na;
  na.set_aggregate("AA", kDeposits, 100);
  na.set_aggregate("AA", kLiabilitiesSlot, 80);
  std::vector<RescaleFactors> rep;
  const auto out = rescale(pop, na, &rep);
  CHECK(out.records[0].liabilities == 30);  // unchanged
  CHECK(out.records[1].liabilities == doctest::Approx(50));
  CHECK(rep[0].redistributed_liability_factor > 2.0);
  CHECK(rep[0].capped_records == 1);
  CHECK(aggregate(out, "AA", kLiabilitiesSlot) == doctest::Approx(80).epsilon(1e-12));
  CHECK(aggregate(out, "AA", kDeposits) == doctest::Approx(100).epsilon(1e-12));
}

TEST_CASE("Step 6 never lowers the net wealth of a net-negative household") {
  Population pop;
  pop.records = {testing::household("neg", 1, 10, 0, 30), testing::household("pos", 1, 90, 0, 10)};
  NationalAccountsTable na;
  na.set_aggregate("AA", kDeposits, 50);          // assets halve
  na.set_aggregate("AA", kLiabilitiesSlot, 40);   // liabilities unchanged in total
  const auto out = rescale(pop, na);
  CHECK(out.records[0].net_wealth() >= pop.records[0].net_wealth());
  CHECK(out.records[0].liabilities == doctest::Approx(25));
  CHECK(aggregate(out, "AA", kLiabilitiesSlot) == doctest::Approx(40).epsilon(1e-12));

  std::mt19937_64 gen(21);
  for (int t = 0; t < 20; ++t) {
    const auto p = testing::random_population(gen, 200, 1, {"AA", "BB"});
    auto target = syngen::national_accounts_of(p);
    std::uniform_real_distribution<double> f(0.5, 2.0);
    for (auto& [country, row] : target.aggregates) {
      for (auto& v : row) v = *v * f(gen);
    }
    const auto q = rescale(p, target);
    for (const auto& [country, row] : target.aggregates) {
      for (std::size_t s = 0; s < kLinkedCategoryCount; ++s) {
        CHECK(aggregate(q, country, s) == doctest::Approx(*row[s]).epsilon(1e-9));
      }
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p.records[i].net_wealth() < 0.0) {
        CHECK(q.records[i].net_wealth() >= p.records[i].net_wealth());
      }
    }
  }
}

TEST_CASE("Step 6 errors on a target without survey mass") {
  Population pop;
  pop.records = {testing::household("a", 1, 10, 0)};
  NationalAccountsTable na;
  na.set_aggregate("AA", static_cast<std::size_t>(AssetCategory::Bonds), 5);
  CHECK(error_of([&] { rescale(pop, na); }) == Errc::ZeroSurveyAggregate);
}

TEST_CASE("pipeline with every step disabled is the identity") {
  const auto ds = testing::random_dataset(4, 100);
  PipelineConfig cfg;
  cfg.steps = StepToggles::none();
  const auto out = run_pipeline(ds, nullptr, nullptr, cfg);
  CHECK(out.dataset == ds);
}

TEST_CASE("pipeline on a truncated scenario") {
  auto spec = syngen::SynthSpec::defaults();
  spec.n_households = 20'000;
  spec.tail_alpha = 2.0;
  spec.p_tail = 0.05;
  spec.countries = {"AA", "BB"};
  spec.seed = 9;
  const auto sc = syngen::make_scenario(spec, {});
  PipelineConfig cfg;
  cfg.seed = 5;
  const auto out = run_pipeline(sc.survey, &sc.national_accounts, &sc.rich_list, cfg);
  for (int k = 1; k <= kImplicateCount; ++k) {
    const auto& rep = out.reports[static_cast<std::size_t>(k - 1)];
    const auto& pop = out.dataset.implicate(k);
    CHECK(rep.implicate == k);
    CHECK(rep.records_in == sc.survey.implicate(k).size());
    CHECK(rep.records_out == pop.size());
    CHECK(pop.size() > sc.survey.implicate(k).size());
    REQUIRE(rep.tails.size() == 2);
    for (const auto& t : rep.tails) {
      CHECK(t.tail.source == TailSource::HfcsPlusRichList);
      CHECK(t.tail.alpha > 1.0);
      CHECK(t.gap_low < t.gap_high);
    }
    std::size_t added = 0;
    for (const auto& r : pop.records) {
      if (r.synthetic) {
        ++added;
        CHECK(r.liabilities > 0.0);  // Step 5 ran
      }
    }
    CHECK(added == rep.tails[0].sampled + rep.tails[1].sampled);
    for (const auto& country : {"AA", "BB"}) {
      for (std::size_t s = 0; s < kLinkedCategoryCount; ++s) {
        const auto target = sc.national_accounts.aggregate(country, s);
        CHECK(aggregate(pop, country, s) == doctest::Approx(*target).epsilon(1e-9));
      }
    }
  }
  CHECK(run_pipeline(sc.survey, &sc.national_accounts, &sc.rich_list, cfg).dataset == out.dataset);

  cfg.skip_tail_countries = {"BB"};
  const auto skipped = run_pipeline(sc.survey, &sc.national_accounts, &sc.rich_list, cfg);
  CHECK(skipped.reports[0].tails.size() == 1);
}

TEST_CASE("pipeline without external data notes the skipped steps") {
  const auto ds = testing::random_dataset(6, 200);
  PipelineConfig cfg;
  const auto out = run_pipeline(ds, nullptr, nullptr, cfg);
  const auto& notes = out.reports[0].notes;
  CHECK(std::count_if(notes.begin(), notes.end(),
                      [](const std::string& n) { return n.find("skipped") != std::string::npos; }) >= 3);
  PipelineConfig bad;
  bad.theta = 2.0;
  CHECK(error_of([&] { run_pipeline(ds, nullptr, nullptr, bad); }) == Errc::InvalidTheta);
}

}
