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

// Synthetic household populations with known distributions: a lognormal body
// and a Pareto upper tail. Used as ground truth for the correction pipeline
// and the evaluators, in place of access-restricted survey data.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wealthsim/correction.hpp"
#include "wealthsim/dataset.hpp"
#include "wealthsim/tail.hpp"

namespace wealthsim::syngen {

struct SynthSpec {
  std::size_t n_households = 10'000;
  /// Lognormal body for net wealth.
  double body_mu = 11.5;
  double body_sigma = 1.0;
  /// Pareto tail; a fraction p_tail of households is drawn from it.
  double tail_alpha = 1.5;
  double tail_w_min = 1e6;
  double p_tail = 0.01;
  /// Shares of gross wealth per asset category; sum to 1.
  AssetVector asset_split;
  /// Liabilities as a fraction of gross wealth, in [0, 1).
  double liability_ratio = 0.1;
  /// Gross income as a fraction of net wealth, with lognormal noise.
  double income_ratio = 0.1;
  double income_sigma = 0.5;
  double weight = 1.0;
  std::vector<std::string> countries = {"AA"};
  int reference_year = 2017;
  /// Relative noise applied to asset values of implicates 2..5; 0 keeps the
  /// five implicates identical.
  double implicate_noise = 0.0;
  std::uint64_t seed = 1;

  static SynthSpec defaults();
  /// Throws InvalidSpec.
  void validate() const;

  bool operator==(const SynthSpec&) const = default;
};

/// Analytic top share p^(1 - 1/alpha) of a pure Pareto(alpha) population.
double pareto_top_share(double alpha, double top_fraction);

MultiImplicateDataset generate(const SynthSpec& spec);

/// `count` i.i.d. Pareto draws from `tail` conditioned to be >= floor, sorted
/// descending. Entries rotate through `countries`.
RichList generate_richlist(const ParetoTail& tail, double floor, std::size_t count,
                           std::uint64_t seed, const std::vector<std::string>& countries = {"AA"});

/// A survey that misses the top of a known population, together with the
/// external data the correction pipeline needs to restore it.
struct Scenario {
  MultiImplicateDataset truth;
  MultiImplicateDataset survey;
  RichList rich_list;
  correction::NationalAccountsTable national_accounts;
};

struct ScenarioSpec {
  /// Survey records above this net-wealth quantile of the truth are dropped.
  double truncate_quantile = 0.999;
  /// Rich list covers the truth above this net-wealth quantile.
  double richlist_quantile = 0.9999;
};

/// National accounts holding the weighted aggregates and household counts of
/// `truth` (implicate 1).
correction::NationalAccountsTable national_accounts_of(const Population& truth);

Scenario make_scenario(const SynthSpec& spec, const ScenarioSpec& scenario);

}  // namespace wealthsim::syngen
