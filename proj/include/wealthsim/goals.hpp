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

// Post-tax populations and the four goal evaluators:
//   1. redistribution    change in top-10% / top-1% net-wealth shares, Kakwani
//   2. extreme wealth    households above EUR 8.9m and above the pre-tax P99
//   3. rent extraction   % change in financial + investment-property wealth
//   4. emissions         inequality-channel CO2 change via the 0.795 elasticity
// plus the radar normalisation used to compare designs.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wealthsim/dataset.hpp"
#include "wealthsim/stats.hpp"
#include "wealthsim/tax.hpp"

namespace wealthsim::goals {

inline constexpr double kAbsoluteExtremeWealthLine = 8.9e6;
inline constexpr double kCo2WealthInequalityElasticity = 0.795;
inline constexpr double kTop10 = 0.10;
inline constexpr double kTop1 = 0.01;

/// Deducts each household's liability from the tax base it was levied on,
/// keeping the composition of that base constant: NET scales every asset,
/// FIP the financial and investment-property assets, PROPERTY the two
/// property categories. Weights are unchanged.
Population apply_tax(const Population& pop, const tax::TaxDesign& design,
                     const tax::BandSchedule& sched);

/// Column form of apply_tax given precomputed liabilities.
WealthColumns apply_tax(const WealthColumns& pre, std::span<const double> liabilities,
                        WealthBase base);

/// Pre-tax statistics shared by every design evaluated on one implicate.
struct Baseline {
  WealthColumns columns;
  stats::SortedSeries net_sorted;
  double top10 = 0.0;
  double top1 = 0.0;
  double gini_net = 0.0;
  double p99 = 0.0;
  double count_abs = 0.0;
  double count_p99 = 0.0;
  double fip_total = 0.0;

  static Baseline from(WealthColumns columns);
};

struct Redistribution {
  double top10_pre = 0.0;
  double top10_post = 0.0;
  double top1_pre = 0.0;
  double top1_post = 0.0;
  /// Percentage-point reductions (positive when the share falls).
  double delta_top10_pp = 0.0;
  double delta_top1_pp = 0.0;
  /// Empty when no tax is raised.
  std::optional<double> kakwani;
};

Redistribution goal1_redistribution(const Baseline& pre, const WealthColumns& post,
                                    std::span<const double> liabilities);

struct ExtremeWealth {
  double p99_threshold = 0.0;
  double count_abs_pre = 0.0;
  double count_abs_post = 0.0;
  double count_p99_pre = 0.0;
  double count_p99_post = 0.0;

  double delta_abs() const { return count_abs_post - count_abs_pre; }
  double delta_p99() const { return count_p99_post - count_p99_pre; }
};

/// Both thresholds are fixed before the tax: EUR 8.9m and the pre-tax P99.
ExtremeWealth goal2_extreme_wealth(const Baseline& pre, const WealthColumns& post);

/// Investment-property share of property wealth per net-wealth decile
/// (slots 0..9) and for the top percentile (slot 10). Slot 9 covers P90..P99.
struct DecileShares {
  std::array<double, 11> investment_share{};
};

/// Computed on uncorrected data.
DecileShares decile_shares(const Population& pop);

struct Rent {
  double fip_pre = 0.0;
  double fip_post = 0.0;
  /// 100 * (fip_post - fip_pre) / fip_pre, never positive.
  double change_pct = 0.0;
};

/// NET base: bookkept per household (liability times its FIP share of gross).
/// FIP base: pre-tax FIP total minus revenue. PROPERTY base: revenue times
/// the investment-property share of corrected property wealth, rebuilt from
/// `shares`; throws MissingDecileShares when they are absent.
Rent goal3_rent(const Baseline& pre, const WealthColumns& post, WealthBase base, double revenue,
                const DecileShares* shares);

/// FIP reduction of one household under a NET-base liability.
double net_base_fip_reduction(double fip, double gross, double liability);

/// -0.795 * relative change of the top-10% share, in percent.
double goal4_emissions(double top10_pre, double top10_post);

struct GoalReport {
  double revenue = 0.0;
  double top10_share_pre = 0.0;
  double top10_share_post = 0.0;
  double top1_share_pre = 0.0;
  double top1_share_post = 0.0;
  double delta_top10_pp = 0.0;
  double delta_top1_pp = 0.0;
  std::optional<double> kakwani;
  double count_above_abs_pre = 0.0;
  double count_above_abs_post = 0.0;
  double count_above_p99_pre = 0.0;
  double count_above_p99_post = 0.0;
  double p99_threshold = 0.0;
  double fip_wealth_pre = 0.0;
  double fip_wealth_post = 0.0;
  double fip_change_pct = 0.0;
  double co2_change = 0.0;

  bool operator==(const GoalReport&) const = default;
};

/// All four goals plus revenue for one implicate.
GoalReport evaluate_implicate(const Baseline& pre, const tax::TaxDesign& design,
                              const tax::BandSchedule& sched, const DecileShares* shares);

/// Field-wise mean. Kakwani is averaged over the implicates where it is
/// defined.
GoalReport average(std::span<const GoalReport> per_implicate);

// Radar

inline constexpr std::size_t kRadarCriteria = 8;
inline constexpr std::size_t kRadarAxes = 5;

/// delta_top10, delta_top1, kakwani, extreme_abs, extreme_p99, fip_change,
/// co2_change, revenue
const std::array<std::string, kRadarCriteria>& radar_criterion_names();
/// redistribution, extreme_wealth, rent_extraction, emissions, revenue
const std::array<std::string, kRadarAxes>& radar_axis_names();

/// Raw criterion values: magnitudes of every effect, Kakwani signed.
std::array<double, kRadarCriteria> radar_criteria(const GoalReport& r);

struct RadarRow {
  std::string label;
  /// Raw criterion values and their 0..100 indices.
  std::array<double, kRadarCriteria> criteria{};
  std::array<double, kRadarCriteria> indices{};
  std::array<double, kRadarAxes> axes{};
};

struct RadarScores {
  std::vector<RadarRow> rows;
  /// Criteria on which no design scores above zero; their indices are 0.
  std::vector<std::string> all_zero_criteria;
};

/// Each criterion is indexed to 100 at the best design (|value| / max |value|;
/// Kakwani as value / max value, floored at 0). A goal with several criteria
/// scores the mean of their indices.
RadarScores radar(std::span<const GoalReport> reports, std::span<const std::string> labels);

}  // namespace wealthsim::goals
