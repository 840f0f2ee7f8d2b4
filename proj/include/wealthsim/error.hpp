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

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wealthsim {

enum class Errc {
  // dataset
  MissingColumn,
  NonNumericValue,
  NonPositiveWeight,
  BadImplicateIndex,
  NegativeAmount,
  // syngen
  InvalidSpec,
  InvalidFloor,
  // correction
  UnknownCountry,
  InvalidTheta,
  TooFewObservations,
  ObservationBelowThreshold,
  NonPositiveNetWealth,
  ZeroSurveyAggregate,
  // stats
  EmptySeries,
  BadProbability,
  ZeroTotal,
  ZeroTotalPayments,
  LengthMismatch,
  // tax / goals
  EmptyPopulation,
  MissingDecileShares,
  NonPositiveShare,
  InvalidDesign,
  // plumbing
  Config,
  Io,
};

std::string_view to_string(Errc code);

/// Returns true for error codes that stem from a bad configuration rather
/// than from bad data. The CLI maps these to exit code 2.
bool is_config_error(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

enum class Severity { Error, Warning };

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string path;
  std::string message;
};

std::string_view to_string(Severity s);

inline bool has_errors(const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags) {
    if (d.severity == Severity::Error) return true;
  }
  return false;
}

}  // namespace wealthsim
