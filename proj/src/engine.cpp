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

#include "wealthsim/engine.hpp"

#include <future>

#include "wealthsim/stats.hpp"

namespace wealthsim::engine {

DatasetSummary summarize(const MultiImplicateDataset& ds) {
  DatasetSummary out;
  for (WealthBase b : kAllWealthBases) {
    BaseSummary& s = out.bases[static_cast<std::size_t>(b)];
    s.base = b;
    for (int k = 1; k <= kImplicateCount; ++k) {
      const Population& pop = ds.implicate(k);
      const stats::SortedSeries sorted(stats::WeightedSeries(pop.base_values(b), pop.weights()));
      for (std::size_t i = 0; i < kSummaryPercentiles.size(); ++i) {
        s.percentiles[i] += sorted.quantile(kSummaryPercentiles[i]);
      }
      s.gini += sorted.gini();
      for (std::size_t i = 0; i < kSummaryTopShares.size(); ++i) {
        s.top_shares[i] += sorted.top_share(kSummaryTopShares[i]);
      }
    }
    for (double& v : s.percentiles) v /= kImplicateCount;
    s.gini /= kImplicateCount;
    for (double& v : s.top_shares) v /= kImplicateCount;
  }
  return out;
}

std::vector<double> mean_lorenz(const MultiImplicateDataset& ds, WealthBase base,
                                std::size_t points) {
  std::vector<double> sum(points, 0.0);
  for (int k = 1; k <= kImplicateCount; ++k) {
    const Population& pop = ds.implicate(k);
    const auto grid =
        stats::lorenz_on_grid(stats::WeightedSeries(pop.base_values(base), pop.weights()), points);
    for (std::size_t i = 0; i < points; ++i) sum[i] += grid[i];
  }
  for (double& v : sum) v /= kImplicateCount;
  return sum;
}

Snapshot::Snapshot(MultiImplicateDataset uncorrected, MultiImplicateDataset corrected,
                   tax::ThresholdMode mode)
    : uncorrected_(std::move(uncorrected)), corrected_(std::move(corrected)), mode_(mode) {
  validate_dataset(uncorrected_);
  validate_dataset(corrected_);
  baselines_.reserve(kImplicateCount);
  for (int k = 1; k <= kImplicateCount; ++k) {
    baselines_.push_back(goals::Baseline::from(WealthColumns::from(corrected_.implicate(k))));
    shares_[static_cast<std::size_t>(k - 1)] = goals::decile_shares(uncorrected_.implicate(k));
  }
  summary_ = summarize(corrected_);
  uncorrected_summary_ = summarize(uncorrected_);
}

DesignEvaluation Snapshot::evaluate(const tax::TaxDesign& design) const {
  return evaluate(design, mode_);
}

DesignEvaluation Snapshot::evaluate(const tax::TaxDesign& design, tax::ThresholdMode mode) const {
  tax::require_valid(design);
  DesignEvaluation out;
  out.design = design;
  const auto& first = baselines_.front().columns;
  const tax::BandSchedule shared = tax::resolve(design, first.base(design.base), first.weight);
  for (std::size_t i = 0; i < baselines_.size(); ++i) {
    const auto& cols = baselines_[i].columns;
    out.schedules[i] = mode == tax::ThresholdMode::Shared
                           ? shared
                           : tax::resolve(design, cols.base(design.base), cols.weight);
    out.per_implicate[i] =
        goals::evaluate_implicate(baselines_[i], design, out.schedules[i], &shares_[i]);
  }
  out.report = goals::average(out.per_implicate);
  return out;
}

std::vector<DesignEvaluation> Snapshot::evaluate_all(
    std::span<const tax::TaxDesign> designs) const {
  std::vector<std::future<DesignEvaluation>> pending;
  pending.reserve(designs.size());
  for (const auto& d : designs) {
    pending.push_back(std::async(std::launch::async, [this, &d] { return evaluate(d); }));
  }
  std::vector<DesignEvaluation> out;
  out.reserve(designs.size());
  for (auto& f : pending) out.push_back(f.get());
  return out;
}

}  // namespace wealthsim::engine
