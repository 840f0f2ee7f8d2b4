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

#include "wealthsim/error.hpp"

namespace wealthsim {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::MissingColumn: return "MissingColumn";
    case Errc::NonNumericValue: return "NonNumericValue";
    case Errc::NonPositiveWeight: return "NonPositiveWeight";
    case Errc::BadImplicateIndex: return "BadImplicateIndex";
    case Errc::NegativeAmount: return "NegativeAmount";
    case Errc::InvalidSpec: return "InvalidSpec";
    case Errc::InvalidFloor: return "InvalidFloor";
    case Errc::UnknownCountry: return "UnknownCountry";
    case Errc::InvalidTheta: return "InvalidTheta";
    case Errc::TooFewObservations: return "TooFewObservations";
    case Errc::ObservationBelowThreshold: return "ObservationBelowThreshold";
    case Errc::NonPositiveNetWealth: return "NonPositiveNetWealth";
    case Errc::ZeroSurveyAggregate: return "ZeroSurveyAggregate";
    case Errc::EmptySeries: return "EmptySeries";
    case Errc::BadProbability: return "BadProbability";
    case Errc::ZeroTotal: return "ZeroTotal";
    case Errc::ZeroTotalPayments: return "ZeroTotalPayments";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::EmptyPopulation: return "EmptyPopulation";
    case Errc::MissingDecileShares: return "MissingDecileShares";
    case Errc::NonPositiveShare: return "NonPositiveShare";
    case Errc::InvalidDesign: return "InvalidDesign";
    case Errc::Config: return "Config";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

bool is_config_error(Errc code) {
  switch (code) {
    case Errc::InvalidSpec:
    case Errc::InvalidFloor:
    case Errc::InvalidTheta:
    case Errc::InvalidDesign:
    case Errc::Config:
      return true;
    default:
      return false;
  }
}

std::string_view to_string(Severity s) {
  return s == Severity::Error ? "error" : "warning";
}

}  // namespace wealthsim
