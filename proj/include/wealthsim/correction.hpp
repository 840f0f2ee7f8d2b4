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

// Top-tail and national-accounts correction of survey wealth microdata.
//
// The pipeline runs six steps per implicate:
//   1. adjust_weights     survey weights sum to the household count per country
//   2. link_categories    survey categories are matched to national accounts rows
//   3. correct_deposits   implausibly low deposits are raised to an income floor
//   4. fit_pareto +       the top tail is fitted on survey households above w_min
//      sample_gap         plus rich-list households; the gap between the richest
//                         survey household and the poorest rich-list household
//                         is filled by sampling from the fitted tail
//   5. allocate_portfolio sampled and rich-list households (net wealth only) get
//                         liabilities and an asset split
//   6. rescale            asset categories and liabilities are scaled to the
//                         national accounts aggregates
// Every step can be disabled; steps 3 and 4 can also be skipped per country.

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wealthsim/dataset.hpp"
#include "wealthsim/tail.hpp"

namespace wealthsim::correction {

/// Nine asset categories followed by liabilities.
inline constexpr std::size_t kLinkedCategoryCount = kAssetCategoryCount + 1;
inline constexpr std::size_t kLiabilitiesSlot = kAssetCategoryCount;
inline constexpr std::string_view kLiabilitiesName = "liabilities";
inline constexpr std::string_view kHouseholdsName = "HOUSEHOLDS";

std::string_view linked_category_name(std::size_t slot);

struct NationalAccountsTable {
  using Row = std::array<std::optional<double>, kLinkedCategoryCount>;

  std::map<std::string, Row> aggregates;
  std::map<std::string, double> household_count;

  std::optional<double> aggregate(const std::string& country, std::size_t slot) const;
  void set_aggregate(const std::string& country, std::size_t slot, double value);
};

/// CSV `country,category,aggregate`; household counts use the category
/// HOUSEHOLDS. `aliases` maps external category names onto ours (several
/// external rows mapping to one category are summed).
NationalAccountsTable parse_national_accounts_csv(
    std::istream& in, const std::map<std::string, std::string>& aliases = {},
    std::string_view source = "<stream>");
NationalAccountsTable load_national_accounts(
    const std::filesystem::path& path, const std::map<std::string, std::string>& aliases = {});
void write_national_accounts_csv(std::ostream& out, const NationalAccountsTable& na);

struct TopPortfolioModel {
  /// Liabilities over net wealth for households added in Step 4.
  double liability_ratio = 0.05;
  /// Fractions of gross wealth per asset category; sum to 1.
  AssetVector allocation_shares;

  static TopPortfolioModel defaults();
  /// Throws InvalidSpec when a share is outside [0,1], the shares do not sum
  /// to 1 within 1e-12, or the ratio is negative.
  void validate() const;
};

// Step 1

Population adjust_weights(const Population& pop, const NationalAccountsTable& na);

// Step 2

struct CategoryLink {
  std::string country;
  std::size_t slot = 0;
  double survey_aggregate = 0.0;
  std::optional<double> target;
};

/// Survey aggregates next to their national accounts counterparts.
std::vector<CategoryLink> link_categories(const Population& pop, const NationalAccountsTable& na);

// Step 3

struct DepositAdjustment {
  std::string id;
  double before = 0.0;
  double after = 0.0;
};

/// Raises deposits below theta * gross_income to that floor. Records of
/// countries in `skip` are left alone. Each change is appended to `log`.
Population correct_deposits(const Population& pop, double theta,
                            std::vector<DepositAdjustment>* log = nullptr,
                            const std::set<std::string>& skip = {});

// Step 4

/// Hill / maximum-likelihood estimate alpha = n / sum ln(w_i / w_min).
ParetoTail fit_pareto(std::span<const double> observations, double w_min,
                      TailSource source = TailSource::HfcsOnly);

enum class SamplingMode {
  Random,
  /// Deterministic mid-point quantile grid, for exactly reproducible tests.
  QuantileGrid,
};

/// round(N * [(w_min/a)^alpha - (w_min/b)^alpha]); 0 when a >= b.
std::size_t gap_count(const ParetoTail& tail, double a, double b,
                      double weighted_count_above_wmin);

/// Draws gap_count(...) households from the tail truncated to (a, b] by
/// inverse transform. Records have weight 1, synthetic = true, and hold their
/// whole net wealth as other_financial until Step 5 allocates it.
std::vector<HouseholdRecord> sample_gap(const ParetoTail& tail, double a, double b,
                                        double weighted_count_above_wmin, std::uint64_t seed,
                                        SamplingMode mode = SamplingMode::Random,
                                        std::string_view country = "", int implicate = 1);

// Step 5

/// liabilities = lambda * net; gross = net * (1 + lambda); asset c = share_c * gross.
std::pair<AssetVector, double> allocate_portfolio(double net_wealth,
                                                  const TopPortfolioModel& model);

// Step 6

struct RescaleFactors {
  std::string country;
  std::array<double, kLinkedCategoryCount> factor{};
  /// Liability factor applied to uncapped records after redistribution.
  double redistributed_liability_factor = 1.0;
  std::size_t capped_records = 0;
};

/// Scales each asset category by NA_c / sum(weight * survey_c) per country.
/// Liabilities of households with net wealth >= 0 scale by the liability
/// factor; households with negative net wealth scale by min(factor, 1), and
/// no further than keeps their net wealth from falling. The shortfall is
/// spread proportionally over uncapped households so the liability aggregate
/// is met.
Population rescale(const Population& pop, const NationalAccountsTable& na,
                   std::vector<RescaleFactors>* report = nullptr);

// Whole pipeline

struct StepToggles {
  bool adjust_weights = true;
  bool link = true;
  bool correct_deposits = true;
  bool impute_tail = true;
  bool allocate_portfolio = true;
  bool rescale = true;

  static StepToggles none();
};

struct PipelineConfig {
  StepToggles steps;
  double theta = 0.05;
  double w_min = 1e6;
  TopPortfolioModel portfolio = TopPortfolioModel::defaults();
  std::uint64_t seed = 0;
  SamplingMode sampling = SamplingMode::Random;
  std::set<std::string> skip_deposit_countries;
  std::set<std::string> skip_tail_countries;
};

struct CountryTail {
  std::string country;
  ParetoTail tail;
  double gap_low = 0.0;
  double gap_high = 0.0;
  std::size_t sampled = 0;
  std::size_t rich_list_added = 0;
};

struct ImplicateReport {
  int implicate = 0;
  std::size_t records_in = 0;
  std::size_t records_out = 0;
  std::vector<DepositAdjustment> deposit_adjustments;
  std::vector<CountryTail> tails;
  std::vector<CategoryLink> links;
  std::vector<RescaleFactors> rescale;
  std::vector<std::string> notes;
};

struct PipelineResult {
  MultiImplicateDataset dataset;
  std::array<ImplicateReport, kImplicateCount> reports;
};

/// Runs the enabled steps in order on each implicate (implicates in
/// parallel). `na` may be null, which disables steps 1, 2 and 6; `rich_list`
/// may be null, in which case the tail is fitted on survey data only and no
/// gap is sampled.
PipelineResult run_pipeline(const MultiImplicateDataset& ds, const NationalAccountsTable* na,
                            const RichList* rich_list, const PipelineConfig& config);

}  // namespace wealthsim::correction
