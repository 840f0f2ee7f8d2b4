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

#include "wealthsim/json_io.hpp"

namespace wealthsim::json_io {

namespace {

std::string join(const std::string& path, const std::string& field) {
  return path.empty() ? field : path + "." + field;
}

void error(std::vector<Diagnostic>& diags, const std::string& path, const std::string& msg) {
  diags.push_back({Severity::Error, path, msg});
}

template <typename T>
void read_number(const json& j, const char* key, T& out, const std::string& path,
                 std::vector<Diagnostic>& diags) {
  if (!j.contains(key)) return;
  const json& v = j.at(key);
  if (!v.is_number()) {
    error(diags, join(path, key), "must be a number");
    return;
  }
  out = v.get<T>();
}

}  // namespace

json to_json(const tax::TaxDesign& d) {
  return json{{"label", d.label},
              {"base", std::string(to_string(d.base))},
              {"exemption_percentile", d.exemption_percentile},
              {"rates", {d.rates[0], d.rates[1], d.rates[2]}}};
}

json to_json(const tax::BandSchedule& s) {
  return json{{"t90", s.thresholds[0]},
              {"t95", s.thresholds[1]},
              {"t99", s.thresholds[2]},
              {"rates", {s.rates[0], s.rates[1], s.rates[2]}}};
}

json to_json(const goals::GoalReport& r) {
  json j;
  j["revenue"] = r.revenue;
  j["top10_share_pre"] = r.top10_share_pre;
  j["top10_share_post"] = r.top10_share_post;
  j["top1_share_pre"] = r.top1_share_pre;
  j["top1_share_post"] = r.top1_share_post;
  j["delta_top10_pp"] = r.delta_top10_pp;
  j["delta_top1_pp"] = r.delta_top1_pp;
  j["kakwani"] = r.kakwani ? json(*r.kakwani) : json(nullptr);
  j["count_above_abs_pre"] = r.count_above_abs_pre;
  j["count_above_abs_post"] = r.count_above_abs_post;
  j["count_above_p99_pre"] = r.count_above_p99_pre;
  j["count_above_p99_post"] = r.count_above_p99_post;
  j["p99_threshold"] = r.p99_threshold;
  j["fip_wealth_pre"] = r.fip_wealth_pre;
  j["fip_wealth_post"] = r.fip_wealth_post;
  j["fip_change_pct"] = r.fip_change_pct;
  j["co2_change"] = r.co2_change;
  return j;
}

goals::GoalReport report_from_json(const json& j) {
  goals::GoalReport r;
  r.revenue = j.at("revenue").get<double>();
  r.top10_share_pre = j.at("top10_share_pre").get<double>();
  r.top10_share_post = j.at("top10_share_post").get<double>();
  r.top1_share_pre = j.at("top1_share_pre").get<double>();
  r.top1_share_post = j.at("top1_share_post").get<double>();
  r.delta_top10_pp = j.at("delta_top10_pp").get<double>();
  r.delta_top1_pp = j.at("delta_top1_pp").get<double>();
  if (!j.at("kakwani").is_null()) r.kakwani = j.at("kakwani").get<double>();
  r.count_above_abs_pre = j.at("count_above_abs_pre").get<double>();
  r.count_above_abs_post = j.at("count_above_abs_post").get<double>();
  r.count_above_p99_pre = j.at("count_above_p99_pre").get<double>();
  r.count_above_p99_post = j.at("count_above_p99_post").get<double>();
  r.p99_threshold = j.at("p99_threshold").get<double>();
  r.fip_wealth_pre = j.at("fip_wealth_pre").get<double>();
  r.fip_wealth_post = j.at("fip_wealth_post").get<double>();
  r.fip_change_pct = j.at("fip_change_pct").get<double>();
  r.co2_change = j.at("co2_change").get<double>();
  return r;
}

json to_json(const goals::RadarScores& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json axes;
    for (std::size_t a = 0; a < goals::kRadarAxes; ++a) axes[goals::radar_axis_names()[a]] = row.axes[a];
    json crit;
    json idx;
    for (std::size_t c = 0; c < goals::kRadarCriteria; ++c) {
      crit[goals::radar_criterion_names()[c]] = row.criteria[c];
      idx[goals::radar_criterion_names()[c]] = row.indices[c];
    }
    rows.push_back({{"label", row.label}, {"axes", axes}, {"criteria", crit}, {"indices", idx}});
  }
  return json{{"rows", rows}, {"all_zero_criteria", r.all_zero_criteria}};
}

json to_json(const std::vector<Diagnostic>& diags) {
  json out = json::array();
  for (const auto& d : diags) {
    out.push_back({{"severity", std::string(to_string(d.severity))},
                   {"path", d.path},
                   {"message", d.message}});
  }
  return out;
}

tax::TaxDesign design_from_json(const json& j, const std::string& path,
                                std::vector<Diagnostic>& diags) {
  tax::TaxDesign d;
  if (!j.is_object()) {
    error(diags, path, "design must be an object");
    return d;
  }
  const std::size_t before = diags.size();
  if (j.contains("label")) {
    if (j["label"].is_string()) {
      d.label = j["label"].get<std::string>();
    } else {
      error(diags, join(path, "label"), "must be a string");
    }
  }
  if (!j.contains("base") || !j["base"].is_string()) {
    error(diags, join(path, "base"), "base must be one of net, fip, property");
  } else if (auto b = parse_wealth_base(j["base"].get<std::string>())) {
    d.base = *b;
  } else {
    error(diags, join(path, "base"), "base must be one of net, fip, property");
  }
  if (!j.contains("exemption_percentile") || !j["exemption_percentile"].is_number_integer()) {
    error(diags, join(path, "exemption_percentile"), "exemption_percentile must be 90 or 95");
  } else {
    d.exemption_percentile = j["exemption_percentile"].get<int>();
  }
  const json* rates = j.contains("rates") ? &j["rates"] : nullptr;
  if (rates == nullptr || !rates->is_array() || rates->size() != 3) {
    error(diags, join(path, "rates"), "rates must be an array of 3 numbers");
  } else {
    for (std::size_t i = 0; i < 3; ++i) {
      if (!(*rates)[i].is_number()) {
        error(diags, join(path, "rates[" + std::to_string(i) + "]"), "must be a number");
      } else {
        d.rates[i] = (*rates)[i].get<double>();
      }
    }
  }
  if (diags.size() == before) {
    auto rule_diags = tax::check_design(d, path);
    diags.insert(diags.end(), rule_diags.begin(), rule_diags.end());
  }
  if (d.label.empty()) {
    d.label = std::string(to_string(d.base)) + "_p" + std::to_string(d.exemption_percentile);
  }
  return d;
}

tax::TaxDesign design_from_json(const json& j) {
  std::vector<Diagnostic> diags;
  auto d = design_from_json(j, "", diags);
  for (const auto& x : diags) {
    if (x.severity == Severity::Error) throw Error(Errc::InvalidDesign, x.message);
  }
  return d;
}

syngen::SynthSpec synth_spec_from_json(const json& j, std::vector<Diagnostic>& diags,
                                       const std::string& path) {
  syngen::SynthSpec s = syngen::SynthSpec::defaults();
  if (!j.is_object()) {
    error(diags, path, "must be an object");
    return s;
  }
  read_number(j, "n_households", s.n_households, path, diags);
  if (j.contains("body")) {
    read_number(j["body"], "mu", s.body_mu, join(path, "body"), diags);
    read_number(j["body"], "sigma", s.body_sigma, join(path, "body"), diags);
  }
  if (j.contains("tail")) {
    read_number(j["tail"], "alpha", s.tail_alpha, join(path, "tail"), diags);
    read_number(j["tail"], "w_min", s.tail_w_min, join(path, "tail"), diags);
    read_number(j["tail"], "p_tail", s.p_tail, join(path, "tail"), diags);
  }
  if (j.contains("asset_split")) {
    const json& split = j["asset_split"];
    if (!split.is_object()) {
      error(diags, join(path, "asset_split"), "must be an object keyed by asset category");
    } else {
      s.asset_split = AssetVector{};
      for (auto it = split.begin(); it != split.end(); ++it) {
        auto c = parse_category(it.key());
        if (!c) {
          error(diags, join(path, "asset_split." + it.key()), "unknown asset category");
        } else if (!it.value().is_number()) {
          error(diags, join(path, "asset_split." + it.key()), "must be a number");
        } else {
          s.asset_split[*c] = it.value().get<double>();
        }
      }
    }
  }
  read_number(j, "liability_ratio", s.liability_ratio, path, diags);
  read_number(j, "income_ratio", s.income_ratio, path, diags);
  read_number(j, "income_sigma", s.income_sigma, path, diags);
  read_number(j, "weight", s.weight, path, diags);
  read_number(j, "reference_year", s.reference_year, path, diags);
  read_number(j, "implicate_noise", s.implicate_noise, path, diags);
  read_number(j, "seed", s.seed, path, diags);
  if (j.contains("countries")) {
    if (!j["countries"].is_array()) {
      error(diags, join(path, "countries"), "must be an array of strings");
    } else {
      s.countries.clear();
      for (const auto& c : j["countries"]) {
        if (c.is_string()) s.countries.push_back(c.get<std::string>());
        else error(diags, join(path, "countries"), "must be an array of strings");
      }
    }
  }
  try {
    s.validate();
  } catch (const Error& e) {
    error(diags, path, e.what());
  }
  return s;
}

syngen::SynthSpec synth_spec_from_json(const json& j) {
  std::vector<Diagnostic> diags;
  auto s = synth_spec_from_json(j, diags);
  for (const auto& d : diags) {
    if (d.severity == Severity::Error) throw Error(Errc::InvalidSpec, d.path + ": " + d.message);
  }
  return s;
}

json to_json(const syngen::SynthSpec& s) {
  json split;
  for (AssetCategory c : kAllAssetCategories) split[std::string(category_name(c))] = s.asset_split[c];
  return json{{"n_households", s.n_households},
              {"body", {{"mu", s.body_mu}, {"sigma", s.body_sigma}}},
              {"tail", {{"alpha", s.tail_alpha}, {"w_min", s.tail_w_min}, {"p_tail", s.p_tail}}},
              {"asset_split", split},
              {"liability_ratio", s.liability_ratio},
              {"income_ratio", s.income_ratio},
              {"income_sigma", s.income_sigma},
              {"weight", s.weight},
              {"countries", s.countries},
              {"reference_year", s.reference_year},
              {"implicate_noise", s.implicate_noise},
              {"seed", s.seed}};
}

}  // namespace wealthsim::json_io
