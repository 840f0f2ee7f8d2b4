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

// Weighted inequality statistics.
//
// Gini and concentration indices both use the piecewise-linear (trapezoid)
// Lorenz curve, so the two terms of the Kakwani index are measured the same
// way. For a discrete weighted distribution this equals the pairwise mean
// difference form sum_ij w_i w_j |x_i - x_j| / (2 W^2 mu).
//
// Negative values are admitted (net wealth can be negative); the Gini of such
// a series may exceed 1 and is reported as is.

#include <cstddef>
#include <span>
#include <vector>

namespace wealthsim::stats {

class WeightedSeries {
 public:
  WeightedSeries() = default;
  /// Throws LengthMismatch on size mismatch and NonPositiveWeight on a weight
  /// <= 0. An empty series can be built; every statistic rejects it.
  WeightedSeries(std::vector<double> values, std::vector<double> weights);
  static WeightedSeries unweighted(std::vector<double> values);
  static WeightedSeries of(std::span<const double> values, std::span<const double> weights);

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  std::span<const double> values() const { return values_; }
  std::span<const double> weights() const { return weights_; }

 private:
  std::vector<double> values_;
  std::vector<double> weights_;
};

struct LorenzCurve {
  /// Both start at 0 and end at 1.
  std::vector<double> population_share;
  std::vector<double> value_share;

  /// Linear interpolation of the value share at population share p.
  double at(double p) const;
};

/// A series sorted ascending by value, with cumulative sums. Build once when
/// several statistics are needed from the same data.
class SortedSeries {
 public:
  explicit SortedSeries(const WeightedSeries& s);

  std::size_t size() const { return values_.size(); }
  double total_weight() const { return total_weight_; }
  double total_value() const { return total_value_; }

  /// Lower weighted quantile: smallest v with W(x <= v) >= p * W.
  double quantile(double p) const;
  double gini() const;
  double top_share(double top_fraction) const;
  LorenzCurve lorenz() const;

 private:
  std::vector<double> values_;
  std::vector<double> weights_;
  std::vector<double> cum_weight_;  // inclusive
  double total_weight_ = 0.0;
  double total_value_ = 0.0;
};

double weighted_quantile(const WeightedSeries& s, double p);
std::vector<double> weighted_quantiles(const WeightedSeries& s, std::span<const double> ps);

double gini(const WeightedSeries& s);

LorenzCurve lorenz_curve(const WeightedSeries& s);

/// Lorenz curve sampled at `points` evenly spaced population shares in [0,1].
std::vector<double> lorenz_on_grid(const WeightedSeries& s, std::size_t points);

/// Concentration index of `payments` with records ordered by `ranking`
/// ascending; ties in ranking keep record order.
double concentration_index(const WeightedSeries& payments, std::span<const double> ranking);

/// Kakwani progressivity index: concentration index of tax ranked by wealth
/// minus the Gini of wealth. Positive means progressive. Weights are taken
/// from `wealth`; `tax` must carry the same weights.
double kakwani(const WeightedSeries& tax, const WeightedSeries& wealth);

/// Share of total value held by the top `top_fraction` of total weight. The
/// boundary record contributes the fraction of its weight needed to make the
/// counted weight exactly top_fraction * W.
double top_share(const WeightedSeries& s, double top_fraction);

}  // namespace wealthsim::stats
