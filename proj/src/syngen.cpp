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

#include "wealthsim/syngen.hpp"

#include <algorithm>
#include <cmath>

#include "wealthsim/error.hpp"
#include "wealthsim/rng.hpp"
#include "wealthsim/stats.hpp"

namespace wealthsim::syngen {

namespace {

constexpr std::uint64_t kRichListStream = 0x5249434820ULL;
constexpr std::uint64_t kNoiseStream = 0x4e4f495345ULL;

bool is_tail_record(std::size_t i, double p_tail) {
  const auto lo = static_cast<long long>(std::floor(static_cast<double>(i) * p_tail));
  const auto hi = static_cast<long long>(std::floor(static_cast<double>(i + 1) * p_tail));
  return hi > lo;
}

}  // namespace

SynthSpec SynthSpec::defaults() {
  SynthSpec s;
  s.asset_split[AssetCategory::Deposits] = 0.10;
  s.asset_split[AssetCategory::Bonds] = 0.03;
  s.asset_split[AssetCategory::ListedShares] = 0.07;
  s.asset_split[AssetCategory::Funds] = 0.05;
  s.asset_split[AssetCategory::OtherFinancial] = 0.05;
  s.asset_split[AssetCategory::MainResidence] = 0.45;
  s.asset_split[AssetCategory::InvestmentProperty] = 0.15;
  s.asset_split[AssetCategory::BusinessWealth] = 0.07;
  s.asset_split[AssetCategory::VehiclesValuables] = 0.03;
  return s;
}

void SynthSpec::validate() const {
  auto fail = [](const std::string& m) { throw Error(Errc::InvalidSpec, m); };
  if (n_households == 0) fail("n_households must be > 0");
  if (!(body_sigma >= 0.0) || !std::isfinite(body_mu)) fail("body parameters invalid");
  if (!(tail_alpha > 0.0)) fail("tail alpha must be > 0");
  if (!(tail_w_min > 0.0)) fail("tail w_min must be > 0");
  if (!(p_tail >= 0.0 && p_tail < 1.0)) fail("p_tail must lie in [0,1)");
  if (!(liability_ratio >= 0.0 && liability_ratio < 1.0)) fail("liability_ratio must lie in [0,1)");
  if (!(income_ratio >= 0.0) || !(income_sigma >= 0.0)) fail("income parameters invalid");
  if (!(weight > 0.0)) fail("weight must be > 0");
  if (countries.empty()) fail("at least one country is required");
  if (!(implicate_noise >= 0.0 && implicate_noise < 1.0)) fail("implicate_noise must lie in [0,1)");
  double sum = 0.0;
  for (double s : asset_split.values) {
    if (!(s >= 0.0 && s <= 1.0)) fail("asset split share outside [0,1]");
    sum += s;
  }
  if (std::fabs(sum - 1.0) > 1e-12) fail("asset split must sum to 1");
}

double pareto_top_share(double alpha, double top_fraction) {
  return std::pow(top_fraction, 1.0 - 1.0 / alpha);
}

MultiImplicateDataset generate(const SynthSpec& spec) {
  spec.validate();
  MultiImplicateDataset ds;
  ds.provenance = "synthetic: lognormal body + Pareto tail";
  Population& base = ds.implicate(1);
  base.implicate = 1;
  base.reference_year = spec.reference_year;
  base.records.resize(spec.n_households);

  for (std::size_t i = 0; i < spec.n_households; ++i) {
    CounterRng rng(spec.seed, i);
    HouseholdRecord& r = base.records[i];
    r.id = "H" + std::to_string(i);
    r.country = spec.countries[i % spec.countries.size()];
    r.implicate = 1;
    r.weight = spec.weight;
    double net = 0.0;
    if (is_tail_record(i, spec.p_tail)) {
      net = spec.tail_w_min * std::pow(rng.uniform(), -1.0 / spec.tail_alpha);
    } else {
      net = std::exp(spec.body_mu + spec.body_sigma * rng.normal());
    }
    const double gross = net / (1.0 - spec.liability_ratio);
    for (std::size_t c = 0; c < kAssetCategoryCount; ++c) {
      r.assets.values[c] = spec.asset_split.values[c] * gross;
    }
    r.liabilities = spec.liability_ratio * gross;
    const double noise = std::exp(spec.income_sigma * rng.normal() -
                                  0.5 * spec.income_sigma * spec.income_sigma);
    r.gross_income = spec.income_ratio * net * noise;
  }

  for (int k = 2; k <= kImplicateCount; ++k) {
    Population& pop = ds.implicate(k);
    pop = base;
    pop.implicate = k;
    for (std::size_t i = 0; i < pop.records.size(); ++i) {
      HouseholdRecord& r = pop.records[i];
      r.implicate = k;
      if (spec.implicate_noise > 0.0) {
        CounterRng rng(spec.seed ^ kNoiseStream, i * kImplicateCount + static_cast<std::size_t>(k));
        for (double& v : r.assets.values) {
          v *= 1.0 + spec.implicate_noise * (2.0 * rng.uniform() - 1.0);
        }
      }
    }
  }
  return ds;
}

RichList generate_richlist(const ParetoTail& tail, double floor, std::size_t count,
                           std::uint64_t seed, const std::vector<std::string>& countries) {
  if (!(floor > tail.w_min)) {
    throw Error(Errc::InvalidFloor, "rich list floor must exceed the tail's w_min");
  }
  if (countries.empty()) throw Error(Errc::InvalidSpec, "rich list needs at least one country");
  CounterRng rng(seed, kRichListStream);
  RichList list;
  list.entries.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    // Above any level the Pareto tail is again Pareto with the same alpha.
    const double w = floor * std::pow(rng.uniform(), -1.0 / tail.alpha);
    list.entries.push_back({countries[k % countries.size()], w});
  }
  list.normalize();
  return list;
}

correction::NationalAccountsTable national_accounts_of(const Population& truth) {
  correction::NationalAccountsTable na;
  for (const auto& r : truth.records) {
    na.household_count[r.country] += r.weight;
    auto& row = na.aggregates[r.country];
    for (std::size_t c = 0; c < kAssetCategoryCount; ++c) {
      row[c] = row[c].value_or(0.0) + r.weight * r.assets.values[c];
    }
    auto& l = row[correction::kLiabilitiesSlot];
    l = l.value_or(0.0) + r.weight * r.liabilities;
  }
  return na;
}

Scenario make_scenario(const SynthSpec& spec, const ScenarioSpec& scenario) {
  if (!(scenario.truncate_quantile > 0.0 && scenario.truncate_quantile <= 1.0) ||
      !(scenario.richlist_quantile >= scenario.truncate_quantile &&
        scenario.richlist_quantile < 1.0)) {
    throw Error(Errc::InvalidSpec, "need 0 < truncate_quantile <= richlist_quantile < 1");
  }
  Scenario out;
  out.truth = generate(spec);
  const Population& t1 = out.truth.implicate(1);
  const stats::SortedSeries net(stats::WeightedSeries(t1.base_values(WealthBase::Net), t1.weights()));
  const double cut = net.quantile(scenario.truncate_quantile);
  const double floor = net.quantile(scenario.richlist_quantile);

  out.survey.provenance = out.truth.provenance + ", truncated above q" +
                          std::to_string(scenario.truncate_quantile);
  for (int k = 1; k <= kImplicateCount; ++k) {
    const Population& src = out.truth.implicate(k);
    Population& dst = out.survey.implicate(k);
    dst.implicate = k;
    dst.reference_year = src.reference_year;
    for (const auto& r : src.records) {
      if (r.net_wealth() <= cut) dst.records.push_back(r);
    }
  }

  double above = 0.0;
  for (const auto& r : t1.records) {
    if (r.net_wealth() >= floor) above += r.weight;
  }
  ParetoTail tail{spec.tail_alpha, spec.tail_w_min, 0, TailSource::HfcsOnly};
  out.rich_list = generate_richlist(tail, std::max(floor, std::nextafter(tail.w_min, 2 * tail.w_min)),
                                    static_cast<std::size_t>(std::llround(above)),
                                    spec.seed ^ 0xA5A5A5A5ULL, spec.countries);
  out.national_accounts = national_accounts_of(t1);
  return out;
}

}  // namespace wealthsim::syngen
