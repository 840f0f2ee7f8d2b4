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

#include "wealthsim/tax.hpp"

#include <cmath>

#include "wealthsim/stats.hpp"

namespace wealthsim::tax {

namespace {

constexpr std::array<double, 3> kBandPercentiles = {0.90, 0.95, 0.99};

struct ModelRow {
  int exemption;
  std::array<double, 3> rates;
};

// Lower/higher threshold x lower/higher rates.
constexpr std::array<ModelRow, 4> kModels = {{
    {90, {0.01, 0.02, 0.03}},
    {90, {0.01, 0.03, 0.05}},
    {95, {0.00, 0.02, 0.03}},
    {95, {0.00, 0.03, 0.05}},
}};

}  // namespace

kernels::Bands BandSchedule::bands() const {
  return {thresholds[0], thresholds[1], thresholds[2], rates[0], rates[1], rates[2]};
}

std::vector<Diagnostic> check_design(const TaxDesign& d, const std::string& path) {
  std::vector<Diagnostic> out;
  auto at = [&](const std::string& field) { return path.empty() ? field : path + "." + field; };
  if (d.exemption_percentile != 90 && d.exemption_percentile != 95) {
    out.push_back({Severity::Error, at("exemption_percentile"),
                   "exemption_percentile must be 90 or 95"});
  }
  bool in_range = true;
  for (std::size_t i = 0; i < 3; ++i) {
    if (!(d.rates[i] >= 0.0 && d.rates[i] <= 1.0)) {
      out.push_back({Severity::Error, at("rates[" + std::to_string(i) + "]"),
                     "rates must lie in [0, 1]"});
      in_range = false;
    }
  }
  if (in_range && !(d.rates[0] <= d.rates[1] && d.rates[1] <= d.rates[2])) {
    out.push_back({Severity::Error, at("rates"), "rates must be nondecreasing"});
  }
  if (d.exemption_percentile == 95 && d.rates[0] != 0.0) {
    out.push_back({Severity::Error, at("rates[0]"),
                   "rate r1 must be 0 when exemption_percentile is 95"});
  }
  for (std::size_t i = 0; i < 3; ++i) {
    if (d.rates[i] > 0.10 && d.rates[i] <= 1.0) {
      out.push_back({Severity::Warning, at("rates[" + std::to_string(i) + "]"),
                     "rate above 10% is outside the explored design space"});
    }
  }
  return out;
}

void require_valid(const TaxDesign& design) {
  for (const auto& d : check_design(design)) {
    if (d.severity == Severity::Error) throw Error(Errc::InvalidDesign, d.message);
  }
}

TaxDesign model(int index, WealthBase base) {
  if (index < 1 || index > 4) throw Error(Errc::InvalidDesign, "model index must be 1..4");
  const auto& row = kModels[static_cast<std::size_t>(index - 1)];
  TaxDesign d;
  d.label = "model" + std::to_string(index) + "_" + std::string(to_string(base));
  d.base = base;
  d.exemption_percentile = row.exemption;
  d.rates = row.rates;
  return d;
}

std::vector<TaxDesign> preset_designs() {
  std::vector<TaxDesign> out;
  for (WealthBase b : kAllWealthBases) {
    for (int m = 1; m <= 4; ++m) out.push_back(model(m, b));
  }
  return out;
}

BandSchedule resolve(const TaxDesign& design, std::span<const double> base_values,
                     std::span<const double> weights) {
  if (base_values.empty()) throw Error(Errc::EmptyPopulation, "cannot resolve thresholds");
  const auto t = stats::weighted_quantiles(stats::WeightedSeries::of(base_values, weights),
                                           kBandPercentiles);
  BandSchedule s;
  s.thresholds = {t[0], t[1], t[2]};
  s.rates = design.rates;
  return s;
}

BandSchedule resolve(const TaxDesign& design, const Population& pop) {
  if (pop.empty()) throw Error(Errc::EmptyPopulation, "cannot resolve thresholds");
  const auto v = pop.base_values(design.base);
  const auto w = pop.weights();
  return resolve(design, v, w);
}

double liability(double v, const BandSchedule& s) {
  const auto& [t90, t95, t99] = s.thresholds;
  const auto& [r1, r2, r3] = s.rates;
  return r1 * std::max(0.0, std::min(v, t95) - t90) + r2 * std::max(0.0, std::min(v, t99) - t95) +
         r3 * std::max(0.0, v - t99);
}

std::vector<double> liabilities(std::span<const double> base_values, const BandSchedule& sched) {
  return kernels::band_liability(base_values, sched.bands());
}

double implicate_revenue(const Population& pop, const BandSchedule& sched, WealthBase base) {
  const auto v = pop.base_values(base);
  const auto w = pop.weights();
  return kernels::weighted_sum(liabilities(v, sched), w);
}

RevenueResult revenue_detail(const MultiImplicateDataset& ds, const TaxDesign& design,
                             ThresholdMode mode) {
  RevenueResult out;
  const BandSchedule shared =
      mode == ThresholdMode::Shared ? resolve(design, ds.implicate(1)) : BandSchedule{};
  double sum = 0.0;
  for (int k = 1; k <= kImplicateCount; ++k) {
    const auto idx = static_cast<std::size_t>(k - 1);
    const Population& pop = ds.implicate(k);
    out.schedules[idx] = mode == ThresholdMode::Shared ? shared : resolve(design, pop);
    out.per_implicate[idx] = implicate_revenue(pop, out.schedules[idx], design.base);
    sum += out.per_implicate[idx];
  }
  out.mean = sum / kImplicateCount;
  return out;
}

double revenue(const MultiImplicateDataset& ds, const TaxDesign& design, ThresholdMode mode) {
  return revenue_detail(ds, design, mode).mean;
}

}  // namespace wealthsim::tax
