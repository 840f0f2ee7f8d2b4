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

// Immutable evaluation snapshot: the uncorrected and corrected datasets plus
// everything every design evaluation reuses (per-implicate baselines and the
// property decile shares). Built once; all member functions are const and
// safe to call from many threads.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "wealthsim/correction.hpp"
#include "wealthsim/dataset.hpp"
#include "wealthsim/goals.hpp"
#include "wealthsim/tax.hpp"

namespace wealthsim::engine {

inline constexpr std::array<double, 5> kSummaryPercentiles = {0.50, 0.75, 0.90, 0.95, 0.99};
inline constexpr std::array<double, 3> kSummaryTopShares = {0.10, 0.05, 0.01};

struct BaseSummary {
  WealthBase base = WealthBase::Net;
  std::array<double, kSummaryPercentiles.size()> percentiles{};
  double gini = 0.0;
  std::array<double, kSummaryTopShares.size()> top_shares{};
};

/// Statistics of each base, averaged over the implicates.
struct DatasetSummary {
  std::array<BaseSummary, 3> bases{};

  const BaseSummary& of(WealthBase b) const { return bases[static_cast<std::size_t>(b)]; }
};

DatasetSummary summarize(const MultiImplicateDataset& ds);

/// Lorenz ordinates of one base on `points` evenly spaced population shares,
/// averaged over the implicates.
std::vector<double> mean_lorenz(const MultiImplicateDataset& ds, WealthBase base,
                                std::size_t points);

struct DesignEvaluation {
  tax::TaxDesign design;
  std::array<tax::BandSchedule, kImplicateCount> schedules{};
  std::array<goals::GoalReport, kImplicateCount> per_implicate{};
  goals::GoalReport report;
};

class Snapshot {
 public:
  /// `uncorrected` feeds the property decile shares and the pre-correction
  /// top shares; designs are evaluated on `corrected`.
  Snapshot(MultiImplicateDataset uncorrected, MultiImplicateDataset corrected,
           tax::ThresholdMode mode = tax::ThresholdMode::PerImplicate);

  const MultiImplicateDataset& uncorrected() const { return uncorrected_; }
  const MultiImplicateDataset& corrected() const { return corrected_; }
  tax::ThresholdMode threshold_mode() const { return mode_; }
  const DatasetSummary& summary() const { return summary_; }
  const DatasetSummary& uncorrected_summary() const { return uncorrected_summary_; }

  /// Throws InvalidDesign for a design that fails the design rules.
  DesignEvaluation evaluate(const tax::TaxDesign& design) const;
  DesignEvaluation evaluate(const tax::TaxDesign& design, tax::ThresholdMode mode) const;

  /// Evaluates designs concurrently; results keep the input order.
  std::vector<DesignEvaluation> evaluate_all(std::span<const tax::TaxDesign> designs) const;

 private:
  MultiImplicateDataset uncorrected_;
  MultiImplicateDataset corrected_;
  tax::ThresholdMode mode_;
  std::vector<goals::Baseline> baselines_;
  std::array<goals::DecileShares, kImplicateCount> shares_{};
  DatasetSummary summary_;
  DatasetSummary uncorrected_summary_;
};

}  // namespace wealthsim::engine
