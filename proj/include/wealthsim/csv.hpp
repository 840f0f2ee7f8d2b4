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

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wealthsim::csv {

/// Splits one CSV line on commas. Double-quoted fields may contain commas and
/// "" escapes. A trailing CR is dropped.
std::vector<std::string> split_line(std::string_view line);

/// Reads the next non-empty line; returns false at end of input.
bool next_line(std::istream& in, std::string& line);

/// Full-field decimal parse; leading/trailing blanks are rejected.
std::optional<double> parse_double(std::string_view text);
std::optional<long long> parse_int(std::string_view text);

/// Shortest representation that round-trips to the same double.
std::string format_double(double v);

/// Fixed two-decimal formatting used for money columns.
std::string format_money(double v);

/// Quotes a field if it contains a comma, quote or newline.
std::string escape(std::string_view field);

}  // namespace wealthsim::csv
