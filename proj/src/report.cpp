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

#include "wealthsim/report.hpp"

#include <fstream>
#include <sstream>

#include "wealthsim/csv.hpp"
#include "wealthsim/error.hpp"
#include "wealthsim/json_io.hpp"

namespace wealthsim::report {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr std::array<const char*, 5> kPercentileNames = {"p50", "p75", "p90", "p95", "p99"};
constexpr std::array<const char*, 3> kTopShareNames = {"top10", "top5", "top1"};

std::string money(double v) { return csv::format_money(v); }
std::string num(double v) { return csv::format_double(v); }

class Writer {
 public:
  explicit Writer(fs::path dir) : dir_(std::move(dir)) {}

  void write(const fs::path& rel, const std::string& content) {
    const fs::path p = dir_ / rel;
    std::error_code ec;
    fs::create_directories(p.parent_path(), ec);
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::Io, "cannot write " + p.string());
    out << content;
    out.close();
    if (!out) throw Error(Errc::Io, "failed writing " + p.string());
    files_.push_back(p);
  }

  std::vector<fs::path> files() const { return files_; }

 private:
  fs::path dir_;
  std::vector<fs::path> files_;
};

std::string design_prefix(const tax::TaxDesign& d) {
  return csv::escape(d.label) + ',' + std::string(to_string(d.base)) + ',' +
         std::to_string(d.exemption_percentile) + ',' + num(d.rates[0]) + ',' + num(d.rates[1]) +
         ',' + num(d.rates[2]);
}

using Cells = std::vector<std::string>;

std::string figure(const std::vector<engine::DesignEvaluation>& evs, const std::string& columns,
                   Cells (*row)(const goals::GoalReport&)) {
  std::ostringstream out;
  out << "label,base,exemption_percentile,r1,r2,r3," << columns << '\n';
  for (const auto& e : evs) {
    out << design_prefix(e.design);
    for (const auto& c : row(e.report)) out << ',' << c;
    out << '\n';
  }
  return out.str();
}

std::string percentiles_csv(const engine::DatasetSummary& s) {
  std::ostringstream out;
  out << "base";
  for (const char* n : kPercentileNames) out << ',' << n;
  out << ",gini\n";
  for (const auto& b : s.bases) {
    out << to_string(b.base);
    for (double v : b.percentiles) out << ',' << money(v);
    out << ',' << num(b.gini) << '\n';
  }
  return out.str();
}

std::string topshares_csv(const engine::DatasetSummary& pre, const engine::DatasetSummary& post) {
  std::ostringstream out;
  out << "base,group,uncorrected,corrected\n";
  for (std::size_t b = 0; b < pre.bases.size(); ++b) {
    for (std::size_t i = 0; i < kTopShareNames.size(); ++i) {
      out << to_string(pre.bases[b].base) << ',' << kTopShareNames[i] << ','
          << num(pre.bases[b].top_shares[i]) << ',' << num(post.bases[b].top_shares[i]) << '\n';
    }
  }
  return out.str();
}

std::string lorenz_csv(const MultiImplicateDataset& ds) {
  std::array<std::vector<double>, 3> curves;
  for (WealthBase b : kAllWealthBases) {
    curves[static_cast<std::size_t>(b)] = engine::mean_lorenz(ds, b, kLorenzPoints);
  }
  std::ostringstream out;
  out << "population_share,net,fip,property\n";
  for (std::size_t i = 0; i < kLorenzPoints; ++i) {
    out << num(static_cast<double>(i) / static_cast<double>(kLorenzPoints - 1));
    for (const auto& c : curves) out << ',' << num(c[i]);
    out << '\n';
  }
  return out.str();
}

std::string radar_csv(const goals::RadarScores& r) {
  std::ostringstream out;
  out << "label";
  for (const auto& a : goals::radar_axis_names()) out << ',' << a;
  for (const auto& c : goals::radar_criterion_names()) out << ",index_" << c;
  out << '\n';
  for (const auto& row : r.rows) {
    out << csv::escape(row.label);
    for (double v : row.axes) out << ',' << num(v);
    for (double v : row.indices) out << ',' << num(v);
    out << '\n';
  }
  return out.str();
}

goals::RadarScores radar_of(const std::vector<engine::DesignEvaluation>& evs) {
  std::vector<goals::GoalReport> reports;
  std::vector<std::string> labels;
  for (const auto& e : evs) {
    reports.push_back(e.report);
    labels.push_back(e.design.label);
  }
  return goals::radar(reports, labels);
}

}  // namespace

json to_json(const engine::DatasetSummary& s) {
  json out = json::object();
  for (const auto& b : s.bases) {
    json stats;
    for (std::size_t i = 0; i < kPercentileNames.size(); ++i) {
      stats[kPercentileNames[i]] = b.percentiles[i];
    }
    stats["gini"] = b.gini;
    json top;
    for (std::size_t i = 0; i < kTopShareNames.size(); ++i) top[kTopShareNames[i]] = b.top_shares[i];
    out[std::string(to_string(b.base))] = {{"statistics", stats}, {"top_shares", top}};
  }
  return out;
}

json summary_json(const engine::Snapshot& snap,
                  const std::vector<engine::DesignEvaluation>& evs, std::uint64_t seed) {
  json designs = json::array();
  for (const auto& e : evs) {
    json schedules = json::array();
    for (const auto& s : e.schedules) schedules.push_back(json_io::to_json(s));
    designs.push_back({{"design", json_io::to_json(e.design)},
                       {"schedules", schedules},
                       {"report", json_io::to_json(e.report)}});
  }
  return json{
      {"seed", seed},
      {"threshold_mode",
       snap.threshold_mode() == tax::ThresholdMode::Shared ? "shared" : "per_implicate"},
      {"dataset", {{"uncorrected", to_json(snap.uncorrected_summary())},
                   {"corrected", to_json(snap.summary())}}},
      {"designs", designs},
      {"radar", json_io::to_json(radar_of(evs))}};
}

RunOutput write_outputs(const engine::Snapshot& snap, const std::vector<tax::TaxDesign>& designs,
                        const fs::path& dir, std::uint64_t seed) {
  RunOutput out;
  out.evaluations = snap.evaluate_all(designs);
  const auto& evs = out.evaluations;

  Writer w(dir);
  w.write("summary.json", summary_json(snap, evs, seed).dump(2) + "\n");
  w.write("percentiles.csv", percentiles_csv(snap.summary()));
  w.write("topshares.csv", topshares_csv(snap.uncorrected_summary(), snap.summary()));
  w.write("lorenz.csv", lorenz_csv(snap.corrected()));
  w.write("radar.csv", radar_csv(radar_of(evs)));

  w.write("figures/fig2_revenue.csv", figure(evs, "revenue", [](const goals::GoalReport& r) {
            return Cells{money(r.revenue)};
          }));
  w.write("figures/fig3_top10.csv",
          figure(evs, "top10_share_pre,top10_share_post,delta_top10_pp",
                 [](const goals::GoalReport& r) {
                   return Cells{num(r.top10_share_pre), num(r.top10_share_post),
                                num(r.delta_top10_pp)};
                 }));
  w.write("figures/fig4_top1.csv",
          figure(evs, "top1_share_pre,top1_share_post,delta_top1_pp",
                 [](const goals::GoalReport& r) {
                   return Cells{num(r.top1_share_pre), num(r.top1_share_post),
                                num(r.delta_top1_pp)};
                 }));
  w.write("figures/fig5_kakwani.csv", figure(evs, "kakwani", [](const goals::GoalReport& r) {
            return Cells{r.kakwani ? num(*r.kakwani) : std::string()};
          }));
  w.write("figures/fig6_extreme_abs.csv",
          figure(evs, "count_above_abs_pre,count_above_abs_post,change",
                 [](const goals::GoalReport& r) {
                   return Cells{num(r.count_above_abs_pre), num(r.count_above_abs_post),
                                num(r.count_above_abs_post - r.count_above_abs_pre)};
                 }));
  w.write("figures/fig7_extreme_p99.csv",
          figure(evs, "p99_threshold,count_above_p99_pre,count_above_p99_post,change",
                 [](const goals::GoalReport& r) {
                   return Cells{money(r.p99_threshold), num(r.count_above_p99_pre),
                                num(r.count_above_p99_post),
                                num(r.count_above_p99_post - r.count_above_p99_pre)};
                 }));
  w.write("figures/fig8_fip.csv",
          figure(evs, "fip_wealth_pre,fip_wealth_post,fip_change_pct",
                 [](const goals::GoalReport& r) {
                   return Cells{money(r.fip_wealth_pre), money(r.fip_wealth_post),
                                num(r.fip_change_pct)};
                 }));
  w.write("figures/fig9_co2.csv", figure(evs, "co2_change", [](const goals::GoalReport& r) {
            return Cells{num(r.co2_change)};
          }));
  out.files = w.files();
  return out;
}

json correction_json(const correction::PipelineResult& result) {
  json implicates = json::array();
  for (const auto& rep : result.reports) {
    json tails = json::array();
    for (const auto& t : rep.tails) {
      tails.push_back({{"country", t.country},
                       {"alpha", t.tail.alpha},
                       {"w_min", t.tail.w_min},
                       {"n_fit", t.tail.n_fit},
                       {"source", std::string(to_string(t.tail.source))},
                       {"gap_low", t.gap_low},
                       {"gap_high", t.gap_high},
                       {"sampled", t.sampled},
                       {"rich_list_added", t.rich_list_added}});
    }
    json rescale = json::array();
    for (const auto& f : rep.rescale) {
      json factors;
      for (std::size_t s = 0; s < correction::kLinkedCategoryCount; ++s) {
        factors[std::string(correction::linked_category_name(s))] = f.factor[s];
      }
      rescale.push_back({{"country", f.country},
                         {"factors", factors},
                         {"redistributed_liability_factor", f.redistributed_liability_factor},
                         {"capped_records", f.capped_records}});
    }
    implicates.push_back({{"implicate", rep.implicate},
                          {"records_in", rep.records_in},
                          {"records_out", rep.records_out},
                          {"deposit_adjustments", rep.deposit_adjustments.size()},
                          {"tails", tails},
                          {"rescale", rescale},
                          {"notes", rep.notes}});
  }
  return json{{"implicates", implicates}};
}

RunOutput run(const config::RunConfig& cfg) {
  const auto prepared = config::prepare(cfg);
  RunOutput out = write_outputs(prepared.snapshot, cfg.designs, cfg.output_dir, cfg.seed);
  Writer w(cfg.output_dir);
  w.write("correction.json", correction_json(prepared.pipeline).dump(2) + "\n");
  for (auto& f : w.files()) out.files.push_back(f);
  return out;
}

}  // namespace wealthsim::report
