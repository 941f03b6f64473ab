// Copyright 2026 The usdq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// JSON interchange documents. State vectors are written with 17 significant
// digits so they parse back bit-exactly.

#include <string>

#include "json.hpp"

#include "usdq/analysis.hpp"
#include "usdq/experiment.hpp"
#include "usdq/states.hpp"

namespace usdq {

/// "%.17g"; non-finite values become null.
std::string format_double(double x);

/// {"dim", "theta_rad", "vectors"}.
std::string to_json_text(const StateFamily &family);
std::string to_json_text(const DiscriminationBasis &basis);

/// The `usdq build` document: family, basis, OAM map and residuals.
std::string build_document(const StateFamily &family,
                           const DiscriminationBasis &basis, const OamMap &oam,
                           const BasisResiduals &residuals);

StateFamily state_family_from_json(const nlohmann::json &j);
DiscriminationBasis basis_from_json(const nlohmann::json &j);

nlohmann::json to_json(const ExperimentConfig &config);
/// Missing keys keep the defaults of `base`.
ExperimentConfig config_from_json(const nlohmann::json &j,
                                  ExperimentConfig base = {});

nlohmann::json to_json(const CountsRecord &record);
CountsRecord counts_record_from_json(const nlohmann::json &j);

nlohmann::json to_json(const OutcomeTable &table);
nlohmann::json to_json(const ErrorSummary &summary);

nlohmann::json matrix_json(const RealMatrix &m);

}  // namespace usdq
