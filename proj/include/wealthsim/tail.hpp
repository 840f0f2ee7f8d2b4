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

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace wealthsim {

enum class TailSource { HfcsOnly, HfcsPlusRichList };

std::string_view to_string(TailSource s);

/// Pareto upper tail, P(W > w) = (w_min / w)^alpha for w >= w_min.
struct ParetoTail {
  double alpha = 1.0;
  double w_min = 1.0;
  std::size_t n_fit = 0;
  TailSource source = TailSource::HfcsOnly;

  /// P(W > w | W >= w_min).
  double survival(double w) const;
  /// Inverse of the conditional CDF: the w with survival(w) = 1 - u.
  double quantile(double u) const;
};

struct RichListEntry {
  std::string country;
  double net_wealth = 0.0;

  bool operator==(const RichListEntry&) const = default;
};

/// External ranking of the wealthiest households. Entries are kept sorted by
/// net wealth, descending.
struct RichList {
  std::vector<RichListEntry> entries;

  /// Sorts and checks that every value is > 0. Throws wealthsim::Error.
  void normalize();
  std::vector<RichListEntry> for_country(std::string_view country) const;

  bool operator==(const RichList&) const = default;
};

/// CSV with header `country,net_wealth`.
RichList parse_rich_list_csv(std::istream& in, std::string_view source = "<stream>");
RichList load_rich_list(const std::filesystem::path& path);
void write_rich_list_csv(std::ostream& out, const RichList& list);

}  // namespace wealthsim
