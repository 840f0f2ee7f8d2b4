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

#include "wealthsim/tail.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "wealthsim/csv.hpp"
#include "wealthsim/error.hpp"

namespace wealthsim {

std::string_view to_string(TailSource s) {
  return s == TailSource::HfcsOnly ? "hfcs_only" : "hfcs_plus_richlist";
}

double ParetoTail::survival(double w) const {
  if (w <= w_min) return 1.0;
  return std::pow(w_min / w, alpha);
}

double ParetoTail::quantile(double u) const { return w_min * std::pow(1.0 - u, -1.0 / alpha); }

void RichList::normalize() {
  for (const auto& e : entries) {
    if (!(e.net_wealth > 0.0)) {
      throw Error(Errc::NegativeAmount, "rich list entry for " + e.country + " must be > 0");
    }
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const RichListEntry& a, const RichListEntry& b) {
                     return a.net_wealth > b.net_wealth;
                   });
}

std::vector<RichListEntry> RichList::for_country(std::string_view country) const {
  std::vector<RichListEntry> out;
  for (const auto& e : entries) {
    if (e.country == country) out.push_back(e);
  }
  return out;
}

RichList parse_rich_list_csv(std::istream& in, std::string_view source) {
  std::string line;
  if (!csv::next_line(in, line)) throw Error(Errc::MissingColumn, std::string(source) + ": empty");
  const auto header = csv::split_line(line);
  auto col = [&](std::string_view name) -> std::size_t {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw Error(Errc::MissingColumn, std::string(source) + ": column '" + std::string(name) + "'");
  };
  const std::size_t c_country = col("country");
  const std::size_t c_wealth = col("net_wealth");
  RichList list;
  std::size_t row = 0;
  while (csv::next_line(in, line)) {
    ++row;
    const auto f = csv::split_line(line);
    const auto v = c_wealth < f.size() ? csv::parse_double(f[c_wealth]) : std::nullopt;
    if (c_country >= f.size() || !v) {
      throw Error(Errc::NonNumericValue, std::string(source) + ": row " + std::to_string(row));
    }
    list.entries.push_back({f[c_country], *v});
  }
  list.normalize();
  return list;
}

RichList load_rich_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Io, "cannot open " + path.string());
  return parse_rich_list_csv(in, path.string());
}

void write_rich_list_csv(std::ostream& out, const RichList& list) {
  out << "country,net_wealth\n";
  for (const auto& e : list.entries) {
    out << csv::escape(e.country) << ',' << csv::format_double(e.net_wealth) << '\n';
  }
}

}  // namespace wealthsim
