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

#include "wealthsim/dataset.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "wealthsim/csv.hpp"
#include "wealthsim/error.hpp"

namespace wealthsim {

namespace {

constexpr std::array<std::string_view, kAssetCategoryCount> kCategoryNames = {
    "deposits",        "bonds",          "listed_shares",
    "funds",           "other_financial", "main_residence",
    "investment_property", "business_wealth", "vehicles_valuables",
};

std::string row_col(std::size_t row, std::string_view col) {
  std::ostringstream os;
  os << "row " << row << ", column '" << col << "'";
  return os.str();
}

}  // namespace

std::string_view category_name(AssetCategory c) {
  return kCategoryNames[static_cast<std::size_t>(c)];
}

std::optional<AssetCategory> parse_category(std::string_view name) {
  for (std::size_t i = 0; i < kCategoryNames.size(); ++i) {
    if (kCategoryNames[i] == name) return static_cast<AssetCategory>(i);
  }
  return std::nullopt;
}

double AssetVector::gross() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

double AssetVector::financial() const {
  return (*this)[AssetCategory::Deposits] + (*this)[AssetCategory::Bonds] +
         (*this)[AssetCategory::ListedShares] + (*this)[AssetCategory::Funds] +
         (*this)[AssetCategory::OtherFinancial];
}

double AssetVector::fip() const { return financial() + (*this)[AssetCategory::InvestmentProperty]; }

double AssetVector::property() const {
  return (*this)[AssetCategory::MainResidence] + (*this)[AssetCategory::InvestmentProperty];
}

std::string_view to_string(WealthBase base) {
  switch (base) {
    case WealthBase::Net: return "net";
    case WealthBase::Fip: return "fip";
    case WealthBase::Property: return "property";
  }
  return "net";
}

std::optional<WealthBase> parse_wealth_base(std::string_view name) {
  if (name == "net") return WealthBase::Net;
  if (name == "fip") return WealthBase::Fip;
  if (name == "property") return WealthBase::Property;
  return std::nullopt;
}

double wealth_base(const HouseholdRecord& record, WealthBase base) {
  switch (base) {
    case WealthBase::Net: return record.net_wealth();
    case WealthBase::Fip: return record.fip_wealth();
    case WealthBase::Property: return record.property_wealth();
  }
  return 0.0;
}

double Population::total_weight() const {
  double s = 0.0;
  for (const auto& r : records) s += r.weight;
  return s;
}

std::vector<double> Population::weights() const {
  std::vector<double> w;
  w.reserve(records.size());
  for (const auto& r : records) w.push_back(r.weight);
  return w;
}

std::vector<double> Population::base_values(WealthBase base) const {
  std::vector<double> v;
  v.reserve(records.size());
  for (const auto& r : records) v.push_back(wealth_base(r, base));
  return v;
}

void validate_dataset(const MultiImplicateDataset& ds) {
  for (int k = 1; k <= kImplicateCount; ++k) {
    const Population& pop = ds.implicate(k);
    if (pop.implicate != k) {
      throw Error(Errc::BadImplicateIndex,
                  "population in slot " + std::to_string(k) + " has implicate " +
                      std::to_string(pop.implicate));
    }
    if (pop.empty()) {
      throw Error(Errc::EmptyPopulation, "implicate " + std::to_string(k) + " has no records");
    }
    for (const auto& r : pop.records) {
      if (r.implicate != k) {
        throw Error(Errc::BadImplicateIndex, "record " + r.id + " tagged with implicate " +
                                                 std::to_string(r.implicate) + " in implicate " +
                                                 std::to_string(k));
      }
      if (!(r.weight > 0.0)) {
        throw Error(Errc::NonPositiveWeight, "record " + r.id);
      }
      for (double v : r.assets.values) {
        if (v < 0.0) throw Error(Errc::NegativeAmount, "record " + r.id + " has a negative asset");
      }
      if (r.liabilities < 0.0 || r.gross_income < 0.0) {
        throw Error(Errc::NegativeAmount, "record " + r.id);
      }
    }
  }
}

const std::vector<std::string>& canonical_columns() {
  static const std::vector<std::string> cols = [] {
    std::vector<std::string> c = {"country", "implicate", "hh_id", "weight", "gross_income"};
    for (auto name : kCategoryNames) c.emplace_back(name);
    c.emplace_back("liabilities");
    return c;
  }();
  return cols;
}

std::string ColumnMap::header(const std::string& canonical) const {
  auto it = header_for.find(canonical);
  return it == header_for.end() ? canonical : it->second;
}

MultiImplicateDataset parse_population_csv(std::istream& in, const ColumnMap& map,
                                           std::string_view source) {
  std::string line;
  if (!csv::next_line(in, line)) {
    throw Error(Errc::MissingColumn, std::string(source) + ": empty file, no header row");
  }
  const auto header = csv::split_line(line);
  auto find_col = [&](const std::string& canonical) -> std::optional<std::size_t> {
    const std::string name = map.header(canonical);
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    return std::nullopt;
  };

  const auto& cols = canonical_columns();
  std::vector<std::size_t> idx(cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    auto pos = find_col(cols[c]);
    if (!pos) {
      throw Error(Errc::MissingColumn,
                  std::string(source) + ": column '" + map.header(cols[c]) + "' not found");
    }
    idx[c] = *pos;
  }
  const auto synthetic_col = find_col("synthetic");

  std::array<std::vector<HouseholdRecord>, kImplicateCount> by_implicate;
  std::size_t row = 0;
  while (csv::next_line(in, line)) {
    ++row;
    const auto fields = csv::split_line(line);
    auto field = [&](std::size_t c) -> const std::string& {
      if (idx[c] >= fields.size()) {
        throw Error(Errc::NonNumericValue, std::string(source) + ": " + row_col(row, cols[c]) +
                                               " is missing");
      }
      return fields[idx[c]];
    };
    auto number = [&](std::size_t c) {
      auto v = csv::parse_double(field(c));
      if (!v) {
        throw Error(Errc::NonNumericValue, std::string(source) + ": " + row_col(row, cols[c]) +
                                               " value '" + field(c) + "'");
      }
      return *v;
    };
    auto amount = [&](std::size_t c) {
      double v = number(c);
      if (v < 0.0) {
        throw Error(Errc::NegativeAmount,
                    std::string(source) + ": " + row_col(row, cols[c]) + " is negative");
      }
      return v;
    };

    HouseholdRecord r;
    r.country = field(0);
    auto imp = csv::parse_int(field(1));
    if (!imp || *imp < 1 || *imp > kImplicateCount) {
      throw Error(Errc::BadImplicateIndex, std::string(source) + ": " + row_col(row, cols[1]) +
                                               " value '" + field(1) + "'");
    }
    r.implicate = static_cast<int>(*imp);
    r.id = field(2);
    r.weight = number(3);
    if (!(r.weight > 0.0)) {
      throw Error(Errc::NonPositiveWeight,
                  std::string(source) + ": " + row_col(row, cols[3]) + " must be > 0");
    }
    r.gross_income = amount(4);
    for (std::size_t a = 0; a < kAssetCategoryCount; ++a) r.assets.values[a] = amount(5 + a);
    r.liabilities = amount(5 + kAssetCategoryCount);
    if (synthetic_col && *synthetic_col < fields.size()) {
      const auto& s = fields[*synthetic_col];
      r.synthetic = (s == "1" || s == "true");
    }
    by_implicate[static_cast<std::size_t>(r.implicate - 1)].push_back(std::move(r));
  }

  std::set<int> present;
  for (int k = 1; k <= kImplicateCount; ++k) {
    if (!by_implicate[static_cast<std::size_t>(k - 1)].empty()) present.insert(k);
  }
  if (present.empty()) {
    throw Error(Errc::EmptyPopulation, std::string(source) + ": no data rows");
  }

  MultiImplicateDataset ds;
  ds.provenance = std::string(source);
  if (present == std::set<int>{1}) {
    for (int k = 1; k <= kImplicateCount; ++k) {
      Population& p = ds.implicate(k);
      p.implicate = k;
      p.records = by_implicate[0];
      for (auto& r : p.records) r.implicate = k;
    }
    ds.provenance += " (implicate 1 replicated)";
  } else if (present.size() == static_cast<std::size_t>(kImplicateCount)) {
    for (int k = 1; k <= kImplicateCount; ++k) {
      Population& p = ds.implicate(k);
      p.implicate = k;
      p.records = std::move(by_implicate[static_cast<std::size_t>(k - 1)]);
    }
  } else {
    throw Error(Errc::BadImplicateIndex,
                std::string(source) + ": file must carry implicate 1 only or all of 1..5");
  }
  return ds;
}

MultiImplicateDataset load_population(const std::filesystem::path& path, const ColumnMap& map) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Io, "cannot open " + path.string());
  return parse_population_csv(in, map, path.string());
}

MultiImplicateDataset load_population(const std::vector<std::filesystem::path>& paths,
                                      const ColumnMap& map) {
  if (paths.empty()) throw Error(Errc::Config, "no input files");
  MultiImplicateDataset out = load_population(paths.front(), map);
  for (std::size_t i = 1; i < paths.size(); ++i) {
    MultiImplicateDataset more = load_population(paths[i], map);
    for (int k = 1; k <= kImplicateCount; ++k) {
      auto& dst = out.implicate(k).records;
      auto& src = more.implicate(k).records;
      dst.insert(dst.end(), std::make_move_iterator(src.begin()),
                 std::make_move_iterator(src.end()));
    }
    out.provenance += "; " + more.provenance;
  }
  return out;
}

void write_population_csv(std::ostream& out, const MultiImplicateDataset& ds) {
  const auto& cols = canonical_columns();
  for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << cols[c];
  out << ",synthetic\n";
  for (const auto& pop : ds.implicates) {
    for (const auto& r : pop.records) {
      out << csv::escape(r.country) << ',' << r.implicate << ',' << csv::escape(r.id) << ','
          << csv::format_double(r.weight) << ',' << csv::format_double(r.gross_income);
      for (double v : r.assets.values) out << ',' << csv::format_double(v);
      out << ',' << csv::format_double(r.liabilities) << ',' << (r.synthetic ? 1 : 0) << '\n';
    }
  }
}

void save_population(const std::filesystem::path& path, const MultiImplicateDataset& ds) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::Io, "cannot write " + path.string());
  write_population_csv(out, ds);
  if (!out) throw Error(Errc::Io, "write failed for " + path.string());
}

WealthColumns WealthColumns::from(const Population& pop) {
  WealthColumns c;
  const std::size_t n = pop.size();
  c.weight.reserve(n);
  c.net.reserve(n);
  c.fip.reserve(n);
  c.property.reserve(n);
  c.investment_property.reserve(n);
  c.gross.reserve(n);
  for (const auto& r : pop.records) {
    c.weight.push_back(r.weight);
    c.net.push_back(r.net_wealth());
    c.fip.push_back(r.fip_wealth());
    c.property.push_back(r.property_wealth());
    c.investment_property.push_back(r.assets[AssetCategory::InvestmentProperty]);
    c.gross.push_back(r.gross_wealth());
  }
  return c;
}

const std::vector<double>& WealthColumns::base(WealthBase b) const {
  switch (b) {
    case WealthBase::Net: return net;
    case WealthBase::Fip: return fip;
    case WealthBase::Property: return property;
  }
  return net;
}

}  // namespace wealthsim
