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
#include <span>
#include <string>
#include <vector>

#include "wealthsim/dataset.hpp"
#include "wealthsim/error.hpp"
#include "wealthsim/kernels.hpp"

namespace wealthsim::tax {

/// Three-band marginal design: r1 on P90..P95, r2 on P95..P99, r3 above P99,
/// percentiles taken over the design's own wealth base. An exemption at P95
/// forces r1 = 0.
struct TaxDesign {
  std::string label;
  WealthBase base = WealthBase::Net;
  int exemption_percentile = 90;
  std::array<double, 3> rates{0.0, 0.0, 0.0};

  bool operator==(const TaxDesign&) const = default;
};

struct BandSchedule {
  std::array<double, 3> thresholds{0.0, 0.0, 0.0};  // t90, t95, t99
  std::array<double, 3> rates{0.0, 0.0, 0.0};

  kernels::Bands bands() const;
  bool operator==(const BandSchedule&) const = default;
};

enum class ThresholdMode {
  /// Each implicate resolves its own thresholds.
  PerImplicate,
  /// Thresholds from implicate 1 are used for all implicates (diagnostic).
  Shared,
};

/// Design rules shared by config validation and the HTTP service. `path`
/// prefixes the diagnostic paths, e.g. "designs[3]".
std::vector<Diagnostic> check_design(const TaxDesign& design, const std::string& path = "");

/// Throws InvalidDesign with the first error message.
void require_valid(const TaxDesign& design);

/// The twelve reference designs: four rate/threshold models on each of the
/// three bases.
std::vector<TaxDesign> preset_designs();
/// Rates and exemption of Model 1..4.
TaxDesign model(int index, WealthBase base);

/// Thresholds are the lower weighted quantiles of the base at 0.90, 0.95 and
/// 0.99 over the whole pooled population.
BandSchedule resolve(const TaxDesign& design, const Population& pop);
BandSchedule resolve(const TaxDesign& design, std::span<const double> base_values,
                     std::span<const double> weights);

/// Marginal tax on one base value; 0 at or below the exemption threshold and
/// for negative values.
double liability(double base_value, const BandSchedule& sched);

/// Vectorised liability over a column of base values.
std::vector<double> liabilities(std::span<const double> base_values, const BandSchedule& sched);

/// sum_i weight_i * liability(base_i) for one implicate.
double implicate_revenue(const Population& pop, const BandSchedule& sched, WealthBase base);

struct RevenueResult {
  double mean = 0.0;
  std::array<double, kImplicateCount> per_implicate{};
  std::array<BandSchedule, kImplicateCount> schedules{};
};

RevenueResult revenue_detail(const MultiImplicateDataset& ds, const TaxDesign& design,
                             ThresholdMode mode = ThresholdMode::PerImplicate);

/// Mean over the five implicates of the weighted revenue.
double revenue(const MultiImplicateDataset& ds, const TaxDesign& design,
               ThresholdMode mode = ThresholdMode::PerImplicate);

}  // namespace wealthsim::tax
