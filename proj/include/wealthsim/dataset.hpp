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

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wealthsim {

/// Fixed asset taxonomy. Survey categories are mapped onto these nine at
/// ingestion through the column map. Land has no category of its own: land
/// under a dwelling lives in the property categories, other land in
/// business_wealth.
enum class AssetCategory : std::size_t {
  Deposits = 0,
  Bonds,
  ListedShares,
  Funds,
  OtherFinancial,
  MainResidence,
  InvestmentProperty,
  BusinessWealth,
  VehiclesValuables,
};

inline constexpr std::size_t kAssetCategoryCount = 9;
inline constexpr int kImplicateCount = 5;

inline constexpr std::array<AssetCategory, kAssetCategoryCount> kAllAssetCategories = {
    AssetCategory::Deposits,          AssetCategory::Bonds,
    AssetCategory::ListedShares,      AssetCategory::Funds,
    AssetCategory::OtherFinancial,    AssetCategory::MainResidence,
    AssetCategory::InvestmentProperty, AssetCategory::BusinessWealth,
    AssetCategory::VehiclesValuables,
};

std::string_view category_name(AssetCategory c);
std::optional<AssetCategory> parse_category(std::string_view name);

struct AssetVector {
  std::array<double, kAssetCategoryCount> values{};

  double& operator[](AssetCategory c) { return values[static_cast<std::size_t>(c)]; }
  double operator[](AssetCategory c) const { return values[static_cast<std::size_t>(c)]; }

  double gross() const;
  double financial() const;
  /// Financial wealth plus investment property.
  double fip() const;
  /// Main residence plus investment property.
  double property() const;

  bool operator==(const AssetVector&) const = default;
};

struct HouseholdRecord {
  std::string id;
  std::string country;
  int implicate = 1;
  double weight = 1.0;
  AssetVector assets;
  double liabilities = 0.0;
  double gross_income = 0.0;
  /// True iff the record was produced by tail sampling.
  bool synthetic = false;

  double gross_wealth() const { return assets.gross(); }
  double net_wealth() const { return assets.gross() - liabilities; }
  double fip_wealth() const { return assets.fip(); }
  double property_wealth() const { return assets.property(); }

  bool operator==(const HouseholdRecord&) const = default;
};

enum class WealthBase { Net, Fip, Property };

inline constexpr std::array<WealthBase, 3> kAllWealthBases = {WealthBase::Net, WealthBase::Fip,
                                                              WealthBase::Property};

std::string_view to_string(WealthBase base);
std::optional<WealthBase> parse_wealth_base(std::string_view name);

/// NET may be negative; FIP and PROPERTY never are.
double wealth_base(const HouseholdRecord& record, WealthBase base);

struct Population {
  int implicate = 1;
  int reference_year = 0;
  std::vector<HouseholdRecord> records;

  std::size_t size() const { return records.size(); }
  bool empty() const { return records.empty(); }
  double total_weight() const;
  std::vector<double> weights() const;
  std::vector<double> base_values(WealthBase base) const;

  bool operator==(const Population&) const = default;
};

struct MultiImplicateDataset {
  std::array<Population, kImplicateCount> implicates;
  std::string provenance;

  Population& implicate(int index) { return implicates.at(static_cast<std::size_t>(index - 1)); }
  const Population& implicate(int index) const {
    return implicates.at(static_cast<std::size_t>(index - 1));
  }

  bool operator==(const MultiImplicateDataset&) const = default;
};

/// Checks the dataset invariants (weights, implicate indices, non-empty
/// populations, nonnegative assets). Throws wealthsim::Error.
void validate_dataset(const MultiImplicateDataset& ds);

/// Canonical column names of the dataset CSV, in file order.
const std::vector<std::string>& canonical_columns();

/// Maps canonical column names to the header names found in a file. Columns
/// not mentioned map to themselves.
struct ColumnMap {
  std::map<std::string, std::string> header_for;

  std::string header(const std::string& canonical) const;
};

/// Parses a dataset CSV. If the file only carries implicate 1, that
/// implicate is replicated to all five; otherwise all five must be present.
MultiImplicateDataset parse_population_csv(std::istream& in, const ColumnMap& map = {},
                                           std::string_view source = "<stream>");

MultiImplicateDataset load_population(const std::filesystem::path& path,
                                      const ColumnMap& map = {});

/// Concatenates several files (for example one per country) per implicate.
MultiImplicateDataset load_population(const std::vector<std::filesystem::path>& paths,
                                      const ColumnMap& map = {});

/// Writes the canonical CSV schema plus a trailing `synthetic` column. Values
/// use shortest round-trip formatting so a reload is value-identical.
void write_population_csv(std::ostream& out, const MultiImplicateDataset& ds);
void save_population(const std::filesystem::path& path, const MultiImplicateDataset& ds);

/// Columnar copy of the fields the tax and goal evaluators read.
struct WealthColumns {
  std::vector<double> weight;
  std::vector<double> net;
  std::vector<double> fip;
  std::vector<double> property;
  std::vector<double> investment_property;
  std::vector<double> gross;

  static WealthColumns from(const Population& pop);

  std::size_t size() const { return weight.size(); }
  const std::vector<double>& base(WealthBase b) const;
};

}  // namespace wealthsim
