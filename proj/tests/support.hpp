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

// Shared fixtures and independent oracles for the test binaries. Nothing here
// calls into the library's statistics or tax code.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <unistd.h>

#include "wealthsim/dataset.hpp"

namespace testing {

class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("wealthsim-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

  std::filesystem::path write(const std::string& name, const std::string& content) const {
    const auto p = path_ / name;
    std::filesystem::create_directories(p.parent_path());
    std::ofstream(p, std::ios::binary) << content;
    return p;
  }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Oracles

/// Gini by the pairwise mean absolute difference, O(n^2).
inline double pairwise_gini(const std::vector<double>& x, const std::vector<double>& w) {
  long double num = 0.0L;
  long double wsum = 0.0L;
  long double xsum = 0.0L;
  for (std::size_t i = 0; i < x.size(); ++i) {
    wsum += w[i];
    xsum += static_cast<long double>(w[i]) * x[i];
    for (std::size_t j = 0; j < x.size(); ++j) {
      num += static_cast<long double>(w[i]) * w[j] * std::fabs(x[i] - x[j]);
    }
  }
  const long double mu = xsum / wsum;
  return static_cast<double>(num / (2.0L * wsum * wsum * mu));
}

/// Concentration index by the covariance form with mid-point fractional
/// ranks: C = sum w_i y_i (2 F_i - 1) / sum w_i y_i, where F_i is the weight
/// below record i plus half its own, over W. Ties in `rank` keep input order.
inline double covariance_concentration(const std::vector<double>& y, const std::vector<double>& w,
                                       const std::vector<double>& rank) {
  std::vector<std::size_t> order(y.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return rank[a] < rank[b]; });
  long double wsum = 0.0L;
  long double ysum = 0.0L;
  for (std::size_t i = 0; i < y.size(); ++i) {
    wsum += w[i];
    ysum += static_cast<long double>(w[i]) * y[i];
  }
  long double acc = 0.0L;
  long double before = 0.0L;
  for (std::size_t i : order) {
    const long double f = (before + w[i] / 2.0L) / wsum;
    acc += static_cast<long double>(w[i]) * y[i] * (2.0L * f - 1.0L);
    before += w[i];
  }
  return static_cast<double>(acc / ysum);
}

/// Smallest value whose cumulative weight reaches p * W, by a direct scan.
inline double scan_quantile(const std::vector<double>& x, const std::vector<double>& w, double p) {
  std::vector<std::pair<double, double>> v;
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    v.emplace_back(x[i], w[i]);
    total += w[i];
  }
  std::sort(v.begin(), v.end());
  double cum = 0.0;
  for (const auto& [value, weight] : v) {
    cum += weight;
    if (cum >= p * total * (1.0 - 1e-12)) return value;
  }
  return v.back().first;
}

/// Share of the total held by the top f of the weight, walking down from the
/// richest record and splitting the boundary record.
inline double walk_top_share(const std::vector<double>& x, const std::vector<double>& w,
                             double f) {
  std::vector<std::pair<double, double>> v;
  double total_w = 0.0;
  double total_x = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    v.emplace_back(x[i], w[i]);
    total_w += w[i];
    total_x += w[i] * x[i];
  }
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  double need = f * total_w;
  double held = 0.0;
  for (const auto& [value, weight] : v) {
    const double take = std::min(weight, need);
    held += take * value;
    need -= take;
    if (need <= 0.0) break;
  }
  return held / total_x;
}

/// Marginal band tax: integrate the rate over [0, v] band by band.
inline double band_tax(double v, const std::array<double, 3>& t, const std::array<double, 3>& r) {
  const std::array<double, 4> edges = {t[0], t[1], t[2], INFINITY};
  double tax = 0.0;
  for (std::size_t b = 0; b < 3; ++b) {
    const double lo = edges[b];
    const double hi = edges[b + 1];
    if (v > lo) tax += r[b] * (std::min(v, hi) - lo);
  }
  return tax;
}

// Fixtures

/// Canonical CSV header of the dataset schema.
inline std::string dataset_header() {
  return "country,implicate,hh_id,weight,gross_income,deposits,bonds,listed_shares,funds,"
         "other_financial,main_residence,investment_property,business_wealth,"
         "vehicles_valuables,liabilities";
}

inline wealthsim::HouseholdRecord household(std::string id, double weight, double deposits,
                                            double main_residence, double liabilities = 0.0,
                                            std::string country = "AA") {
  wealthsim::HouseholdRecord r;
  r.id = std::move(id);
  r.country = std::move(country);
  r.weight = weight;
  r.assets[wealthsim::AssetCategory::Deposits] = deposits;
  r.assets[wealthsim::AssetCategory::MainResidence] = main_residence;
  r.liabilities = liabilities;
  return r;
}

/// A population with lognormal wealth spread over all categories, a few
/// indebted households and random weights. Uses std::mt19937_64, not the
/// library generator.
inline wealthsim::Population random_population(std::mt19937_64& gen, std::size_t n,
                                               int implicate = 1,
                                               std::vector<std::string> countries = {"AA"}) {
  std::lognormal_distribution<double> wealth(11.0, 1.6);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> weight(0.5, 3.0);
  wealthsim::Population pop;
  pop.implicate = implicate;
  for (std::size_t i = 0; i < n; ++i) {
    wealthsim::HouseholdRecord r;
    r.id = "h" + std::to_string(i);
    r.country = countries[i % countries.size()];
    r.implicate = implicate;
    r.weight = weight(gen);
    const double gross = wealth(gen);
    std::array<double, wealthsim::kAssetCategoryCount> mix{};
    double s = 0.0;
    for (double& m : mix) {
      m = unit(gen) < 0.3 ? 0.0 : unit(gen);
      s += m;
    }
    if (s == 0.0) {
      mix[0] = 1.0;
      s = 1.0;
    }
    for (std::size_t c = 0; c < mix.size(); ++c) r.assets.values[c] = gross * mix[c] / s;
    const double u = unit(gen);
    r.liabilities = u < 0.05 ? gross * (1.0 + unit(gen)) : gross * 0.4 * unit(gen);
    r.gross_income = 0.1 * gross * (0.5 + unit(gen));
    pop.records.push_back(std::move(r));
  }
  return pop;
}

inline wealthsim::MultiImplicateDataset replicate(const wealthsim::Population& pop) {
  wealthsim::MultiImplicateDataset ds;
  for (int k = 1; k <= wealthsim::kImplicateCount; ++k) {
    ds.implicate(k) = pop;
    ds.implicate(k).implicate = k;
    for (auto& r : ds.implicate(k).records) r.implicate = k;
  }
  return ds;
}

inline wealthsim::MultiImplicateDataset random_dataset(std::uint64_t seed, std::size_t n,
                                                       std::vector<std::string> countries = {
                                                           "AA"}) {
  std::mt19937_64 gen(seed);
  wealthsim::MultiImplicateDataset ds;
  for (int k = 1; k <= wealthsim::kImplicateCount; ++k) {
    ds.implicate(k) = random_population(gen, n, k, countries);
  }
  return ds;
}

}  // namespace testing
