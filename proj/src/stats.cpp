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

#include "wealthsim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wealthsim/error.hpp"

namespace wealthsim::stats {

namespace {

// Cumulative-weight comparisons tolerate this much relative rounding so that
// e.g. the 0.9 quantile of 1..100 with unit weights is 90, not 91.
constexpr double kQuantileSlack = 1e-12;

void require_nonempty(std::size_t n) {
  if (n == 0) throw Error(Errc::EmptySeries, "statistic of an empty series");
}

double trapezoid_index(std::span<const double> values_in_order,
                       std::span<const double> weights_in_order) {
  double total_w = 0.0;
  double total_v = 0.0;
  for (std::size_t i = 0; i < values_in_order.size(); ++i) {
    total_w += weights_in_order[i];
    total_v += weights_in_order[i] * values_in_order[i];
  }
  if (total_v == 0.0) throw Error(Errc::ZeroTotal, "series sums to zero");
  // 1 - 2 * area, area = sum_i dp_i * (L_i + L_{i-1}) / 2.
  double twice_area = 0.0;
  double cum_v = 0.0;
  double prev_l = 0.0;
  for (std::size_t i = 0; i < values_in_order.size(); ++i) {
    cum_v += weights_in_order[i] * values_in_order[i];
    const double l = cum_v / total_v;
    twice_area += (weights_in_order[i] / total_w) * (l + prev_l);
    prev_l = l;
  }
  return 1.0 - twice_area;
}

}  // namespace

WeightedSeries::WeightedSeries(std::vector<double> values, std::vector<double> weights)
    : values_(std::move(values)), weights_(std::move(weights)) {
  if (values_.size() != weights_.size()) {
    throw Error(Errc::LengthMismatch, "values and weights differ in length");
  }
  for (double w : weights_) {
    if (!(w > 0.0)) throw Error(Errc::NonPositiveWeight, "series weight must be > 0");
  }
}

WeightedSeries WeightedSeries::unweighted(std::vector<double> values) {
  std::vector<double> w(values.size(), 1.0);
  return WeightedSeries(std::move(values), std::move(w));
}

WeightedSeries WeightedSeries::of(std::span<const double> values,
                                  std::span<const double> weights) {
  return WeightedSeries(std::vector<double>(values.begin(), values.end()),
                        std::vector<double>(weights.begin(), weights.end()));
}

double LorenzCurve::at(double p) const {
  if (population_share.empty()) return 0.0;
  if (p <= 0.0) return value_share.front();
  if (p >= 1.0) return value_share.back();
  auto it = std::lower_bound(population_share.begin(), population_share.end(), p);
  const auto hi = static_cast<std::size_t>(it - population_share.begin());
  if (population_share[hi] == p) return value_share[hi];
  const std::size_t lo = hi - 1;
  const double t = (p - population_share[lo]) / (population_share[hi] - population_share[lo]);
  return value_share[lo] + t * (value_share[hi] - value_share[lo]);
}

SortedSeries::SortedSeries(const WeightedSeries& s) {
  require_nonempty(s.size());
  std::vector<std::size_t> order(s.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto v = s.values();
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  values_.reserve(s.size());
  weights_.reserve(s.size());
  cum_weight_.reserve(s.size());
  double cw = 0.0;
  for (std::size_t i : order) {
    values_.push_back(v[i]);
    weights_.push_back(s.weights()[i]);
    cw += s.weights()[i];
    cum_weight_.push_back(cw);
    total_value_ += s.weights()[i] * v[i];
  }
  total_weight_ = cw;
}

double SortedSeries::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(Errc::BadProbability, "p must lie in [0,1]");
  const double target = p * total_weight_ - kQuantileSlack * total_weight_;
  auto it = std::lower_bound(cum_weight_.begin(), cum_weight_.end(), target);
  if (it == cum_weight_.end()) return values_.back();
  return values_[static_cast<std::size_t>(it - cum_weight_.begin())];
}

double SortedSeries::gini() const { return trapezoid_index(values_, weights_); }

double SortedSeries::top_share(double top_fraction) const {
  if (!(top_fraction > 0.0 && top_fraction <= 1.0)) {
    throw Error(Errc::BadProbability, "top fraction must lie in (0,1]");
  }
  if (total_value_ == 0.0) throw Error(Errc::ZeroTotal, "series sums to zero");
  if (top_fraction == 1.0) return 1.0;
  double budget = top_fraction * total_weight_;
  double held = 0.0;
  for (std::size_t i = values_.size(); i-- > 0 && budget > 0.0;) {
    const double take = std::min(weights_[i], budget);
    held += take * values_[i];
    budget -= take;
  }
  return held / total_value_;
}

LorenzCurve SortedSeries::lorenz() const {
  if (total_value_ == 0.0) throw Error(Errc::ZeroTotal, "series sums to zero");
  LorenzCurve c;
  c.population_share.reserve(values_.size() + 1);
  c.value_share.reserve(values_.size() + 1);
  c.population_share.push_back(0.0);
  c.value_share.push_back(0.0);
  double cum_v = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    cum_v += weights_[i] * values_[i];
    c.population_share.push_back(cum_weight_[i] / total_weight_);
    c.value_share.push_back(cum_v / total_value_);
  }
  c.population_share.back() = 1.0;
  c.value_share.back() = 1.0;
  return c;
}

double weighted_quantile(const WeightedSeries& s, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(Errc::BadProbability, "p must lie in [0,1]");
  return SortedSeries(s).quantile(p);
}

std::vector<double> weighted_quantiles(const WeightedSeries& s, std::span<const double> ps) {
  const SortedSeries sorted(s);
  std::vector<double> out;
  out.reserve(ps.size());
  for (double p : ps) out.push_back(sorted.quantile(p));
  return out;
}

double gini(const WeightedSeries& s) { return SortedSeries(s).gini(); }

LorenzCurve lorenz_curve(const WeightedSeries& s) { return SortedSeries(s).lorenz(); }

std::vector<double> lorenz_on_grid(const WeightedSeries& s, std::size_t points) {
  if (points < 2) throw Error(Errc::BadProbability, "Lorenz grid needs at least 2 points");
  const LorenzCurve c = lorenz_curve(s);
  std::vector<double> out(points);
  for (std::size_t i = 0; i < points; ++i) {
    out[i] = c.at(static_cast<double>(i) / static_cast<double>(points - 1));
  }
  return out;
}

double concentration_index(const WeightedSeries& payments, std::span<const double> ranking) {
  require_nonempty(payments.size());
  if (ranking.size() != payments.size()) {
    throw Error(Errc::LengthMismatch, "payments and ranking differ in length");
  }
  std::vector<std::size_t> order(payments.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return ranking[a] < ranking[b]; });
  std::vector<double> v;
  std::vector<double> w;
  v.reserve(order.size());
  w.reserve(order.size());
  double total = 0.0;
  for (std::size_t i : order) {
    v.push_back(payments.values()[i]);
    w.push_back(payments.weights()[i]);
    total += payments.weights()[i] * payments.values()[i];
  }
  if (!(total > 0.0)) throw Error(Errc::ZeroTotalPayments, "payments must sum to > 0");
  return trapezoid_index(v, w);
}

double kakwani(const WeightedSeries& tax, const WeightedSeries& wealth) {
  if (tax.size() != wealth.size()) {
    throw Error(Errc::LengthMismatch, "tax and wealth differ in length");
  }
  return concentration_index(tax, wealth.values()) - gini(wealth);
}

double top_share(const WeightedSeries& s, double top_fraction) {
  if (!(top_fraction > 0.0 && top_fraction <= 1.0)) {
    throw Error(Errc::BadProbability, "top fraction must lie in (0,1]");
  }
  return SortedSeries(s).top_share(top_fraction);
}

}  // namespace wealthsim::stats
