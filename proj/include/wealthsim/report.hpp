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

// Batch outputs. Files written by run(), all CSVs with a header row:
//
//   summary.json      designs (design, per-implicate schedules, GoalReport),
//                     radar scores, dataset summaries before/after correction
//   percentiles.csv   base,p50,p75,p90,p95,p99,gini          (corrected data)
//   topshares.csv     base,group,uncorrected,corrected        (top10/top5/top1)
//   lorenz.csv        population_share,net,fip,property       (1,001 rows)
//   radar.csv         label, five axes, eight criteria
//   correction.json   per-implicate correction log (tail fits, rescale factors)
//   figures/
//     fig2_revenue.csv      revenue
//     fig3_top10.csv        top10_share_pre,top10_share_post,delta_top10_pp
//     fig4_top1.csv         top1_share_pre,top1_share_post,delta_top1_pp
//     fig5_kakwani.csv      kakwani (empty when no tax is raised)
//     fig6_extreme_abs.csv  count_above_abs_pre,count_above_abs_post,change
//     fig7_extreme_p99.csv  p99_threshold,count_above_p99_pre,count_above_p99_post,change
//     fig8_fip.csv          fip_wealth_pre,fip_wealth_post,fip_change_pct
//     fig9_co2.csv          co2_change
//
// Every figure file starts with label,base,exemption_percentile,r1,r2,r3 and
// has one row per design. Money is printed with two decimals; shares,
// indices and counts use the shortest round-trip representation.

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "wealthsim/config.hpp"
#include "wealthsim/engine.hpp"

namespace wealthsim::report {

inline constexpr std::size_t kLorenzPoints = 1001;

struct RunOutput {
  std::vector<engine::DesignEvaluation> evaluations;
  std::vector<std::filesystem::path> files;
};

/// Prepares the snapshot from `cfg`, evaluates every design and writes the
/// outputs into cfg.output_dir.
RunOutput run(const config::RunConfig& cfg);

/// Evaluates `designs` on an existing snapshot and writes the outputs.
RunOutput write_outputs(const engine::Snapshot& snap, const std::vector<tax::TaxDesign>& designs,
                        const std::filesystem::path& dir, std::uint64_t seed);

nlohmann::json summary_json(const engine::Snapshot& snap,
                            const std::vector<engine::DesignEvaluation>& evaluations,
                            std::uint64_t seed);

nlohmann::json to_json(const engine::DatasetSummary& s);
nlohmann::json correction_json(const correction::PipelineResult& result);

}  // namespace wealthsim::report
