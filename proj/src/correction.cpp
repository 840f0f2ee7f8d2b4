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

#include "wealthsim/correction.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <sstream>

#include "wealthsim/csv.hpp"
#include "wealthsim/error.hpp"
#include "wealthsim/rng.hpp"

namespace wealthsim::correction {

namespace {

std::optional<std::size_t> parse_linked_category(std::string_view name) {
  if (name == kLiabilitiesName) return kLiabilitiesSlot;
  if (auto c = parse_category(name)) return static_cast<std::size_t>(*c);
  return std::nullopt;
}

double linked_value(const HouseholdRecord& r, std::size_t slot) {
  return slot == kLiabilitiesSlot ? r.liabilities : r.assets.values[slot];
}

std::vector<std::string> countries_of(const Population& pop) {
  std::set<std::string> s;
  for (const auto& r : pop.records) s.insert(r.country);
  return {s.begin(), s.end()};
}

std::uint64_t stream_id(std::string_view country, int implicate) {
  return mix64(hash_string(country) ^ (static_cast<std::uint64_t>(implicate) << 32));
}

}  // namespace

std::string_view linked_category_name(std::size_t slot) {
  if (slot == kLiabilitiesSlot) return kLiabilitiesName;
  return category_name(static_cast<AssetCategory>(slot));
}

std::optional<double> NationalAccountsTable::aggregate(const std::string& country,
                                                       std::size_t slot) const {
  auto it = aggregates.find(country);
  if (it == aggregates.end()) return std::nullopt;
  return it->second.at(slot);
}

void NationalAccountsTable::set_aggregate(const std::string& country, std::size_t slot,
                                          double value) {
  aggregates[country].at(slot) = value;
}

NationalAccountsTable parse_national_accounts_csv(std::istream& in,
                                                  const std::map<std::string, std::string>& aliases,
                                                  std::string_view source) {
  const std::string src(source);
  std::string line;
  if (!csv::next_line(in, line)) throw Error(Errc::MissingColumn, src + ": empty");
  const auto header = csv::split_line(line);
  auto col = [&](std::string_view name) -> std::size_t {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw Error(Errc::MissingColumn, src + ": column '" + std::string(name) + "'");
  };
  const std::size_t c_country = col("country");
  const std::size_t c_category = col("category");
  const std::size_t c_value = col("aggregate");

  NationalAccountsTable na;
  std::size_t row = 0;
  while (csv::next_line(in, line)) {
    ++row;
    const auto f = csv::split_line(line);
    const std::string where = src + ": row " + std::to_string(row);
    if (std::max({c_country, c_category, c_value}) >= f.size()) {
      throw Error(Errc::NonNumericValue, where + " has too few fields");
    }
    const auto value = csv::parse_double(f[c_value]);
    if (!value) throw Error(Errc::NonNumericValue, where + " aggregate '" + f[c_value] + "'");
    std::string category = f[c_category];
    if (auto it = aliases.find(category); it != aliases.end()) category = it->second;
    if (category == kHouseholdsName) {
      if (!(*value > 0.0)) throw Error(Errc::NonPositiveWeight, where + " household count");
      na.household_count[f[c_country]] = *value;
      continue;
    }
    const auto slot = parse_linked_category(category);
    if (!slot) throw Error(Errc::MissingColumn, where + " unknown category '" + category + "'");
    if (*value < 0.0) throw Error(Errc::NegativeAmount, where + " aggregate is negative");
    auto& cell = na.aggregates[f[c_country]].at(*slot);
    cell = cell.value_or(0.0) + *value;
  }
  return na;
}

NationalAccountsTable load_national_accounts(const std::filesystem::path& path,
                                             const std::map<std::string, std::string>& aliases) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Io, "cannot open " + path.string());
  return parse_national_accounts_csv(in, aliases, path.string());
}

void write_national_accounts_csv(std::ostream& out, const NationalAccountsTable& na) {
  out << "country,category,aggregate\n";
  for (const auto& [country, count] : na.household_count) {
    out << csv::escape(country) << ',' << kHouseholdsName << ',' << csv::format_double(count)
        << '\n';
  }
  for (const auto& [country, row] : na.aggregates) {
    for (std::size_t s = 0; s < kLinkedCategoryCount; ++s) {
      if (!row[s]) continue;
      out << csv::escape(country) << ',' << linked_category_name(s) << ','
          << csv::format_double(*row[s]) << '\n';
    }
  }
}

TopPortfolioModel TopPortfolioModel::defaults() {
  TopPortfolioModel m;
  m.liability_ratio = 0.05;
  m.allocation_shares[AssetCategory::Deposits] = 0.05;
  m.allocation_shares[AssetCategory::Bonds] = 0.03;
  m.allocation_shares[AssetCategory::ListedShares] = 0.22;
  m.allocation_shares[AssetCategory::Funds] = 0.08;
  m.allocation_shares[AssetCategory::OtherFinancial] = 0.07;
  m.allocation_shares[AssetCategory::MainResidence] = 0.08;
  m.allocation_shares[AssetCategory::InvestmentProperty] = 0.12;
  m.allocation_shares[AssetCategory::BusinessWealth] = 0.33;
  m.allocation_shares[AssetCategory::VehiclesValuables] = 0.02;
  return m;
}

void TopPortfolioModel::validate() const {
  if (!(liability_ratio >= 0.0) || !std::isfinite(liability_ratio)) {
    throw Error(Errc::InvalidSpec, "liability_ratio must be >= 0");
  }
  double sum = 0.0;
  for (double s : allocation_shares.values) {
    if (!(s >= 0.0 && s <= 1.0)) throw Error(Errc::InvalidSpec, "allocation share outside [0,1]");
    sum += s;
  }
  if (std::fabs(sum - 1.0) > 1e-12) {
    throw Error(Errc::InvalidSpec, "allocation shares must sum to 1");
  }
}

Population adjust_weights(const Population& pop, const NationalAccountsTable& na) {
  std::map<std::string, double> current;
  for (const auto& r : pop.records) current[r.country] += r.weight;
  std::map<std::string, double> factor;
  for (const auto& [country, sum] : current) {
    auto it = na.household_count.find(country);
    if (it == na.household_count.end()) {
      throw Error(Errc::UnknownCountry, "no household count for country '" + country + "'");
    }
    factor[country] = it->second / sum;
  }
  Population out = pop;
  for (auto& r : out.records) r.weight *= factor[r.country];
  return out;
}

std::vector<CategoryLink> link_categories(const Population& pop, const NationalAccountsTable& na) {
  std::map<std::string, std::array<double, kLinkedCategoryCount>> survey;
  for (const auto& r : pop.records) {
    auto& row = survey[r.country];
    for (std::size_t s = 0; s < kLinkedCategoryCount; ++s) row[s] += r.weight * linked_value(r, s);
  }
  std::vector<CategoryLink> out;
  for (const auto& [country, row] : survey) {
    for (std::size_t s = 0; s < kLinkedCategoryCount; ++s) {
      out.push_back({country, s, row[s], na.aggregate(country, s)});
    }
  }
  return out;
}

Population correct_deposits(const Population& pop, double theta,
                            std::vector<DepositAdjustment>* log,
                            const std::set<std::string>& skip) {
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw Error(Errc::InvalidTheta, "theta must lie in [0,1]");
  }
  Population out = pop;
  for (auto& r : out.records) {
    if (skip.count(r.country) != 0) continue;
    const double floor = theta * r.gross_income;
    double& deposits = r.assets[AssetCategory::Deposits];
    if (deposits < floor) {
      if (log != nullptr) log->push_back({r.id, deposits, floor});
      deposits = floor;
    }
  }
  return out;
}

ParetoTail fit_pareto(std::span<const double> observations, double w_min, TailSource source) {
  if (!(w_min > 0.0)) throw Error(Errc::ObservationBelowThreshold, "w_min must be > 0");
  if (observations.size() < 2) {
    throw Error(Errc::TooFewObservations,
                "need at least 2 observations, got " + std::to_string(observations.size()));
  }
  double log_sum = 0.0;
  for (double w : observations) {
    if (!(w >= w_min)) {
      throw Error(Errc::ObservationBelowThreshold, "observation below w_min");
    }
    log_sum += std::log(w / w_min);
  }
  if (!(log_sum > 0.0)) {
    throw Error(Errc::TooFewObservations, "all observations equal w_min; alpha is unbounded");
  }
  ParetoTail tail;
  tail.alpha = static_cast<double>(observations.size()) / log_sum;
  tail.w_min = w_min;
  tail.n_fit = observations.size();
  tail.source = source;
  return tail;
}

std::size_t gap_count(const ParetoTail& tail, double a, double b,
                      double weighted_count_above_wmin) {
  if (!(a < b)) return 0;
  const double mass = tail.survival(a) - tail.survival(b);
  const double expected = weighted_count_above_wmin * mass;
  return expected > 0.0 ? static_cast<std::size_t>(std::llround(expected)) : 0;
}

std::vector<HouseholdRecord> sample_gap(const ParetoTail& tail, double a, double b,
                                        double weighted_count_above_wmin, std::uint64_t seed,
                                        SamplingMode mode, std::string_view country,
                                        int implicate) {
  if (a == b) return {};
  if (!(tail.w_min <= a && a < b)) {
    throw Error(Errc::ObservationBelowThreshold, "gap must satisfy w_min <= a < b");
  }
  const std::size_t n = gap_count(tail, a, b, weighted_count_above_wmin);
  const double s_a = tail.survival(a);
  const double s_b = tail.survival(b);
  CounterRng rng(seed, stream_id(country, implicate));
  std::vector<HouseholdRecord> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double u = mode == SamplingMode::Random
                         ? rng.uniform()
                         : (static_cast<double>(k) + 0.5) / static_cast<double>(n);
    // Survival runs from s_a at a down to s_b at b.
    const double s = s_a - u * (s_a - s_b);
    double w = tail.w_min * std::pow(s, -1.0 / tail.alpha);
    if (w <= a) w = std::nextafter(a, b);
    if (w > b) w = b;
    HouseholdRecord r;
    r.id = "S-" + std::string(country) + "-" + std::to_string(implicate) + "-" + std::to_string(k);
    r.country = std::string(country);
    r.implicate = implicate;
    r.weight = 1.0;
    r.assets[AssetCategory::OtherFinancial] = w;
    r.synthetic = true;
    out.push_back(std::move(r));
  }
  return out;
}

std::pair<AssetVector, double> allocate_portfolio(double net_wealth,
                                                  const TopPortfolioModel& model) {
  if (!(net_wealth > 0.0)) {
    throw Error(Errc::NonPositiveNetWealth, "portfolio allocation needs net wealth > 0");
  }
  const double liabilities = model.liability_ratio * net_wealth;
  const double gross = net_wealth + liabilities;
  AssetVector assets;
  for (std::size_t c = 0; c < kAssetCategoryCount; ++c) {
    assets.values[c] = model.allocation_shares.values[c] * gross;
  }
  return {assets, liabilities};
}

Population rescale(const Population& pop, const NationalAccountsTable& na,
                   std::vector<RescaleFactors>* report) {
  Population out = pop;
  std::map<std::string, std::vector<std::size_t>> by_country;
  for (std::size_t i = 0; i < out.records.size(); ++i) {
    by_country[out.records[i].country].push_back(i);
  }

  for (const auto& [country, members] : by_country) {
    auto na_row = na.aggregates.find(country);
    if (na_row == na.aggregates.end()) continue;

    RescaleFactors rf;
    rf.country = country;
    rf.factor.fill(1.0);

    std::array<double, kLinkedCategoryCount> survey{};
    for (std::size_t i : members) {
      const auto& r = out.records[i];
      for (std::size_t s = 0; s < kLinkedCategoryCount; ++s) survey[s] += r.weight * linked_value(r, s);
    }
    for (std::size_t s = 0; s < kLinkedCategoryCount; ++s) {
      const auto& target = na_row->second[s];
      if (!target) continue;
      if (survey[s] == 0.0) {
        if (*target > 0.0) {
          throw Error(Errc::ZeroSurveyAggregate, "country '" + country + "' category '" +
                                                     std::string(linked_category_name(s)) + "'");
        }
        continue;
      }
      rf.factor[s] = *target / survey[s];
    }

    // Assets first, remembering each record's net wealth and asset change.
    std::vector<double> net_before(members.size());
    std::vector<double> asset_delta(members.size());
    for (std::size_t m = 0; m < members.size(); ++m) {
      auto& r = out.records[members[m]];
      net_before[m] = r.net_wealth();
      const double gross_before = r.gross_wealth();
      for (std::size_t c = 0; c < kAssetCategoryCount; ++c) r.assets.values[c] *= rf.factor[c];
      asset_delta[m] = r.gross_wealth() - gross_before;
    }

    const auto& liab_target = na_row->second[kLiabilitiesSlot];
    if (liab_target && survey[kLiabilitiesSlot] > 0.0) {
      const double f = rf.factor[kLiabilitiesSlot];
      std::vector<char> capped(members.size(), 0);
      double capped_sum = 0.0;
      double free_sum = 0.0;
      for (std::size_t m = 0; m < members.size(); ++m) {
        auto& r = out.records[members[m]];
        if (net_before[m] < 0.0) {
          double l = std::min(f, 1.0) * r.liabilities;
          // Shrinking assets must not push a negative household further down.
          if (asset_delta[m] < 0.0) l = std::min(l, r.liabilities + asset_delta[m]);
          const double gross = r.gross_wealth();
          while (l > 0.0 && gross - l < net_before[m]) l = std::nextafter(l, 0.0);
          // Held fixed: taking part in the redistribution could raise l again.
          r.liabilities = l;
          capped[m] = 1;
          capped_sum += r.weight * l;
          ++rf.capped_records;
          continue;
        }
        free_sum += r.weight * r.liabilities;
      }
      double f_free = f;
      if (free_sum > 0.0) f_free = (*liab_target - capped_sum) / free_sum;
      rf.redistributed_liability_factor = f_free;
      for (std::size_t m = 0; m < members.size(); ++m) {
        if (!capped[m]) out.records[members[m]].liabilities *= f_free;
      }
    }
    if (report != nullptr) report->push_back(rf);
  }
  return out;
}

StepToggles StepToggles::none() {
  return {false, false, false, false, false, false};
}

namespace {

Population run_implicate(const Population& input, const NationalAccountsTable* na,
                         const RichList* rich_list, const PipelineConfig& cfg,
                         ImplicateReport& rep) {
  rep.implicate = input.implicate;
  rep.records_in = input.size();
  Population pop = input;

  if (cfg.steps.adjust_weights) {
    if (na != nullptr) {
      pop = adjust_weights(pop, *na);
    } else {
      rep.notes.push_back("step 1 skipped: no national accounts table");
    }
  }
  if (cfg.steps.link) {
    if (na != nullptr) {
      rep.links = link_categories(pop, *na);
      for (const auto& l : rep.links) {
        if (!l.target && l.survey_aggregate > 0.0) {
          rep.notes.push_back("step 2: no national accounts row for " + l.country + "/" +
                              std::string(linked_category_name(l.slot)));
        }
      }
    } else {
      rep.notes.push_back("step 2 skipped: no national accounts table");
    }
  }
  if (cfg.steps.correct_deposits) {
    pop = correct_deposits(pop, cfg.theta, &rep.deposit_adjustments, cfg.skip_deposit_countries);
  }

  std::vector<std::size_t> added;
  if (cfg.steps.impute_tail) {
    for (const auto& country : countries_of(pop)) {
      if (cfg.skip_tail_countries.count(country) != 0) continue;
      std::vector<double> obs;
      double survey_max = cfg.w_min;
      double weighted_above = 0.0;
      for (const auto& r : pop.records) {
        if (r.country != country) continue;
        const double nw = r.net_wealth();
        if (nw >= cfg.w_min) {
          obs.push_back(nw);
          weighted_above += r.weight;
          survey_max = std::max(survey_max, nw);
        }
      }
      std::vector<RichListEntry> rl;
      if (rich_list != nullptr) {
        for (const auto& e : rich_list->for_country(country)) {
          if (e.net_wealth >= cfg.w_min) {
            rl.push_back(e);
          } else {
            rep.notes.push_back("step 4: rich list entry below w_min dropped for " + country);
          }
        }
      }
      for (const auto& e : rl) obs.push_back(e.net_wealth);
      if (obs.size() < 2) {
        rep.notes.push_back("step 4 skipped for " + country + ": fewer than 2 observations");
        continue;
      }
      CountryTail ct;
      ct.country = country;
      ct.tail = fit_pareto(obs, cfg.w_min,
                           rl.empty() ? TailSource::HfcsOnly : TailSource::HfcsPlusRichList);
      if (!rl.empty()) {
        ct.gap_low = survey_max;
        ct.gap_high = rl.back().net_wealth;  // poorest rich-list household
        if (ct.gap_low < ct.gap_high) {
          auto sampled = sample_gap(ct.tail, ct.gap_low, ct.gap_high, weighted_above, cfg.seed,
                                    cfg.sampling, country, pop.implicate);
          ct.sampled = sampled.size();
          for (auto& r : sampled) {
            added.push_back(pop.records.size());
            pop.records.push_back(std::move(r));
          }
        }
        for (std::size_t k = 0; k < rl.size(); ++k) {
          HouseholdRecord r;
          r.id = "RL-" + country + "-" + std::to_string(k);
          r.country = country;
          r.implicate = pop.implicate;
          r.weight = 1.0;
          r.assets[AssetCategory::OtherFinancial] = rl[k].net_wealth;
          added.push_back(pop.records.size());
          pop.records.push_back(std::move(r));
          ++ct.rich_list_added;
        }
      }
      rep.tails.push_back(ct);
    }
  }

  if (cfg.steps.allocate_portfolio) {
    cfg.portfolio.validate();
    for (std::size_t i : added) {
      auto& r = pop.records[i];
      auto [assets, liabilities] = allocate_portfolio(r.net_wealth(), cfg.portfolio);
      r.assets = assets;
      r.liabilities = liabilities;
    }
  }

  if (cfg.steps.rescale) {
    if (na != nullptr) {
      pop = rescale(pop, *na, &rep.rescale);
    } else {
      rep.notes.push_back("step 6 skipped: no national accounts table");
    }
  }
  rep.records_out = pop.size();
  return pop;
}

}  // namespace

PipelineResult run_pipeline(const MultiImplicateDataset& ds, const NationalAccountsTable* na,
                            const RichList* rich_list, const PipelineConfig& config) {
  if (config.steps.correct_deposits && !(config.theta >= 0.0 && config.theta <= 1.0)) {
    throw Error(Errc::InvalidTheta, "theta must lie in [0,1]");
  }
  PipelineResult result;
  result.dataset.provenance = ds.provenance;
  std::array<std::future<Population>, kImplicateCount> jobs;
  for (int k = 1; k <= kImplicateCount; ++k) {
    auto& rep = result.reports[static_cast<std::size_t>(k - 1)];
    jobs[static_cast<std::size_t>(k - 1)] =
        std::async(std::launch::async, [&ds, na, rich_list, &config, &rep, k] {
          return run_implicate(ds.implicate(k), na, rich_list, config, rep);
        });
  }
  for (int k = 1; k <= kImplicateCount; ++k) {
    result.dataset.implicate(k) = jobs[static_cast<std::size_t>(k - 1)].get();
  }
  return result;
}

}  // namespace wealthsim::correction
