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

#include "wealthsim/goals.hpp"

#include <algorithm>
#include <cmath>

#include "wealthsim/error.hpp"
#include "wealthsim/kernels.hpp"

namespace wealthsim::goals {

namespace {

constexpr std::array<AssetCategory, 6> kFipCategories = {
    AssetCategory::Deposits, AssetCategory::Bonds,          AssetCategory::ListedShares,
    AssetCategory::Funds,    AssetCategory::OtherFinancial, AssetCategory::InvestmentProperty,
};
constexpr std::array<AssetCategory, 2> kPropertyCategories = {AssetCategory::MainResidence,
                                                              AssetCategory::InvestmentProperty};

template <std::size_t N>
void scale_categories(AssetVector& a, const std::array<AssetCategory, N>& cats, double base,
                      double cut, double& liabilities) {
  if (base > 0.0) {
    const double keep = 1.0 - cut / base;
    for (AssetCategory c : cats) a[c] *= keep;
  } else {
    // Nothing to deduct from; the tax is financed by borrowing.
    liabilities += cut;
  }
}

std::size_t wealth_group(double v, const std::array<double, 10>& q) {
  for (std::size_t d = 0; d < 9; ++d) {
    if (v <= q[d]) return d;
  }
  return v > q[9] ? 10 : 9;
}

std::array<double, 10> group_bounds(const stats::SortedSeries& s) {
  std::array<double, 10> q{};
  for (std::size_t d = 0; d < 9; ++d) q[d] = s.quantile(static_cast<double>(d + 1) / 10.0);
  q[9] = s.quantile(0.99);
  return q;
}

double mean_of(std::span<const GoalReport> r, double GoalReport::*field) {
  double s = 0.0;
  for (const auto& x : r) s += x.*field;
  return s / static_cast<double>(r.size());
}

}  // namespace

Population apply_tax(const Population& pop, const tax::TaxDesign& design,
                     const tax::BandSchedule& sched) {
  Population out = pop;
  for (auto& r : out.records) {
    const double l = tax::liability(wealth_base(r, design.base), sched);
    if (l == 0.0) continue;
    switch (design.base) {
      case WealthBase::Net: {
        const double gross = r.gross_wealth();
        scale_categories(r.assets, kAllAssetCategories, gross, l, r.liabilities);
        break;
      }
      case WealthBase::Fip:
        scale_categories(r.assets, kFipCategories, r.fip_wealth(), l, r.liabilities);
        break;
      case WealthBase::Property:
        scale_categories(r.assets, kPropertyCategories, r.property_wealth(), l, r.liabilities);
        break;
    }
  }
  return out;
}

WealthColumns apply_tax(const WealthColumns& pre, std::span<const double> liab, WealthBase base) {
  if (liab.size() != pre.size()) throw Error(Errc::LengthMismatch, "liabilities vs population");
  WealthColumns post;
  post.weight = pre.weight;
  post.net = kernels::subtract(pre.net, liab);
  post.gross = kernels::subtract(pre.gross, liab);
  switch (base) {
    case WealthBase::Net:
      post.fip = kernels::proportional_cut(pre.fip, liab, pre.gross);
      post.property = kernels::proportional_cut(pre.property, liab, pre.gross);
      post.investment_property = kernels::proportional_cut(pre.investment_property, liab, pre.gross);
      break;
    case WealthBase::Fip: {
      post.fip = kernels::subtract(pre.fip, liab);
      post.investment_property = kernels::proportional_cut(pre.investment_property, liab, pre.fip);
      post.property = kernels::subtract(
          pre.property, kernels::subtract(pre.investment_property, post.investment_property));
      break;
    }
    case WealthBase::Property: {
      post.property = kernels::subtract(pre.property, liab);
      post.investment_property =
          kernels::proportional_cut(pre.investment_property, liab, pre.property);
      post.fip = kernels::subtract(
          pre.fip, kernels::subtract(pre.investment_property, post.investment_property));
      break;
    }
  }
  return post;
}

Baseline Baseline::from(WealthColumns columns) {
  stats::SortedSeries sorted(stats::WeightedSeries::of(columns.net, columns.weight));
  Baseline b{std::move(columns), std::move(sorted)};
  b.top10 = b.net_sorted.top_share(kTop10);
  b.top1 = b.net_sorted.top_share(kTop1);
  b.gini_net = b.net_sorted.gini();
  b.p99 = b.net_sorted.quantile(0.99);
  b.count_abs = kernels::weighted_count_above(b.columns.net, b.columns.weight,
                                              kAbsoluteExtremeWealthLine);
  b.count_p99 = kernels::weighted_count_above(b.columns.net, b.columns.weight, b.p99);
  b.fip_total = kernels::weighted_sum(b.columns.fip, b.columns.weight);
  return b;
}

Redistribution goal1_redistribution(const Baseline& pre, const WealthColumns& post,
                                    std::span<const double> liab) {
  const stats::SortedSeries post_sorted(stats::WeightedSeries::of(post.net, post.weight));
  Redistribution r;
  r.top10_pre = pre.top10;
  r.top1_pre = pre.top1;
  r.top10_post = post_sorted.top_share(kTop10);
  r.top1_post = post_sorted.top_share(kTop1);
  r.delta_top10_pp = 100.0 * (r.top10_pre - r.top10_post);
  r.delta_top1_pp = 100.0 * (r.top1_pre - r.top1_post);
  if (kernels::weighted_sum(liab, pre.columns.weight) > 0.0) {
    const auto payments = stats::WeightedSeries::of(liab, pre.columns.weight);
    r.kakwani = stats::concentration_index(payments, pre.columns.net) - pre.gini_net;
  }
  return r;
}

ExtremeWealth goal2_extreme_wealth(const Baseline& pre, const WealthColumns& post) {
  ExtremeWealth e;
  e.p99_threshold = pre.p99;
  e.count_abs_pre = pre.count_abs;
  e.count_p99_pre = pre.count_p99;
  e.count_abs_post =
      kernels::weighted_count_above(post.net, post.weight, kAbsoluteExtremeWealthLine);
  e.count_p99_post = kernels::weighted_count_above(post.net, post.weight, pre.p99);
  return e;
}

DecileShares decile_shares(const Population& pop) {
  if (pop.empty()) throw Error(Errc::EmptyPopulation, "decile shares of an empty population");
  const stats::SortedSeries net(stats::WeightedSeries(pop.base_values(WealthBase::Net), pop.weights()));
  const auto q = group_bounds(net);
  std::array<double, 11> inv{};
  std::array<double, 11> prop{};
  for (const auto& r : pop.records) {
    const std::size_t g = wealth_group(r.net_wealth(), q);
    inv[g] += r.weight * r.assets[AssetCategory::InvestmentProperty];
    prop[g] += r.weight * r.property_wealth();
  }
  DecileShares out;
  for (std::size_t g = 0; g < 11; ++g) out.investment_share[g] = prop[g] > 0.0 ? inv[g] / prop[g] : 0.0;
  return out;
}

double net_base_fip_reduction(double fip, double gross, double liability) {
  return gross > 0.0 ? liability * (fip / gross) : 0.0;
}

Rent goal3_rent(const Baseline& pre, const WealthColumns& post, WealthBase base, double revenue,
                const DecileShares* shares) {
  Rent out;
  out.fip_pre = pre.fip_total;
  switch (base) {
    case WealthBase::Net:
      out.fip_post = kernels::weighted_sum(post.fip, post.weight);
      break;
    case WealthBase::Fip:
      out.fip_post = out.fip_pre - revenue;
      break;
    case WealthBase::Property: {
      if (shares == nullptr) {
        throw Error(Errc::MissingDecileShares, "property base needs investment-property shares");
      }
      const auto q = group_bounds(pre.net_sorted);
      double rebuilt_inv = 0.0;
      double total_prop = 0.0;
      const auto& c = pre.columns;
      for (std::size_t i = 0; i < c.size(); ++i) {
        const double p = c.weight[i] * c.property[i];
        rebuilt_inv += shares->investment_share[wealth_group(c.net[i], q)] * p;
        total_prop += p;
      }
      const double share = total_prop > 0.0 ? rebuilt_inv / total_prop : 0.0;
      out.fip_post = out.fip_pre - revenue * share;
      break;
    }
  }
  if (out.fip_pre > 0.0) {
    out.change_pct = base == WealthBase::Fip ? -100.0 * revenue / out.fip_pre
                                             : 100.0 * (out.fip_post - out.fip_pre) / out.fip_pre;
  }
  out.change_pct += 0.0;  // normalise -0
  return out;
}

double goal4_emissions(double top10_pre, double top10_post) {
  if (!(top10_pre > 0.0)) throw Error(Errc::NonPositiveShare, "top-10% share must be > 0");
  const double relative = 100.0 * (top10_pre - top10_post) / top10_pre;
  return -kCo2WealthInequalityElasticity * relative + 0.0;
}

GoalReport evaluate_implicate(const Baseline& pre, const tax::TaxDesign& design,
                              const tax::BandSchedule& sched, const DecileShares* shares) {
  const auto& cols = pre.columns;
  const auto liab = tax::liabilities(cols.base(design.base), sched);
  const WealthColumns post = apply_tax(cols, liab, design.base);

  GoalReport r;
  r.revenue = kernels::weighted_sum(liab, cols.weight);
  const Redistribution g1 = goal1_redistribution(pre, post, liab);
  r.top10_share_pre = g1.top10_pre;
  r.top10_share_post = g1.top10_post;
  r.top1_share_pre = g1.top1_pre;
  r.top1_share_post = g1.top1_post;
  r.delta_top10_pp = g1.delta_top10_pp;
  r.delta_top1_pp = g1.delta_top1_pp;
  r.kakwani = g1.kakwani;

  const ExtremeWealth g2 = goal2_extreme_wealth(pre, post);
  r.count_above_abs_pre = g2.count_abs_pre;
  r.count_above_abs_post = g2.count_abs_post;
  r.count_above_p99_pre = g2.count_p99_pre;
  r.count_above_p99_post = g2.count_p99_post;
  r.p99_threshold = g2.p99_threshold;

  const Rent g3 = goal3_rent(pre, post, design.base, r.revenue, shares);
  r.fip_wealth_pre = g3.fip_pre;
  r.fip_wealth_post = g3.fip_post;
  r.fip_change_pct = g3.change_pct;

  r.co2_change = goal4_emissions(g1.top10_pre, g1.top10_post);
  return r;
}

GoalReport average(std::span<const GoalReport> per) {
  if (per.empty()) throw Error(Errc::EmptySeries, "no implicate results to average");
  GoalReport m;
  m.revenue = mean_of(per, &GoalReport::revenue);
  m.top10_share_pre = mean_of(per, &GoalReport::top10_share_pre);
  m.top10_share_post = mean_of(per, &GoalReport::top10_share_post);
  m.top1_share_pre = mean_of(per, &GoalReport::top1_share_pre);
  m.top1_share_post = mean_of(per, &GoalReport::top1_share_post);
  m.delta_top10_pp = mean_of(per, &GoalReport::delta_top10_pp);
  m.delta_top1_pp = mean_of(per, &GoalReport::delta_top1_pp);
  m.count_above_abs_pre = mean_of(per, &GoalReport::count_above_abs_pre);
  m.count_above_abs_post = mean_of(per, &GoalReport::count_above_abs_post);
  m.count_above_p99_pre = mean_of(per, &GoalReport::count_above_p99_pre);
  m.count_above_p99_post = mean_of(per, &GoalReport::count_above_p99_post);
  m.p99_threshold = mean_of(per, &GoalReport::p99_threshold);
  m.fip_wealth_pre = mean_of(per, &GoalReport::fip_wealth_pre);
  m.fip_wealth_post = mean_of(per, &GoalReport::fip_wealth_post);
  m.fip_change_pct = mean_of(per, &GoalReport::fip_change_pct);
  m.co2_change = mean_of(per, &GoalReport::co2_change);
  double k = 0.0;
  int n = 0;
  for (const auto& r : per) {
    if (r.kakwani) {
      k += *r.kakwani;
      ++n;
    }
  }
  if (n > 0) m.kakwani = k / n;
  return m;
}

const std::array<std::string, kRadarCriteria>& radar_criterion_names() {
  static const std::array<std::string, kRadarCriteria> names = {
      "delta_top10", "delta_top1", "kakwani",    "extreme_abs",
      "extreme_p99", "fip_change", "co2_change", "revenue",
  };
  return names;
}

const std::array<std::string, kRadarAxes>& radar_axis_names() {
  static const std::array<std::string, kRadarAxes> names = {
      "redistribution", "extreme_wealth", "rent_extraction", "emissions", "revenue",
  };
  return names;
}

std::array<double, kRadarCriteria> radar_criteria(const GoalReport& r) {
  return {
      std::fabs(r.delta_top10_pp),
      std::fabs(r.delta_top1_pp),
      r.kakwani.value_or(0.0),
      std::fabs(r.count_above_abs_pre - r.count_above_abs_post),
      std::fabs(r.count_above_p99_pre - r.count_above_p99_post),
      std::fabs(r.fip_change_pct),
      std::fabs(r.co2_change),
      std::fabs(r.revenue),
  };
}

RadarScores radar(std::span<const GoalReport> reports, std::span<const std::string> labels) {
  if (reports.empty()) throw Error(Errc::EmptySeries, "radar needs at least one design");
  if (labels.size() != reports.size()) throw Error(Errc::LengthMismatch, "labels vs reports");
  RadarScores out;
  out.rows.resize(reports.size());
  std::array<double, kRadarCriteria> best{};
  for (std::size_t d = 0; d < reports.size(); ++d) {
    out.rows[d].label = labels[d];
    out.rows[d].criteria = radar_criteria(reports[d]);
    for (std::size_t c = 0; c < kRadarCriteria; ++c) best[c] = std::max(best[c], out.rows[d].criteria[c]);
  }
  for (std::size_t c = 0; c < kRadarCriteria; ++c) {
    if (!(best[c] > 0.0)) out.all_zero_criteria.push_back(radar_criterion_names()[c]);
  }
  for (auto& row : out.rows) {
    auto& idx = row.indices;
    for (std::size_t c = 0; c < kRadarCriteria; ++c) {
      idx[c] = best[c] > 0.0 ? std::max(0.0, 100.0 * row.criteria[c] / best[c]) : 0.0;
    }
    row.axes[0] = (idx[0] + idx[1] + idx[2]) / 3.0;
    row.axes[1] = (idx[3] + idx[4]) / 2.0;
    row.axes[2] = idx[5];
    row.axes[3] = idx[6];
    row.axes[4] = idx[7];
  }
  return out;
}

}  // namespace wealthsim::goals
