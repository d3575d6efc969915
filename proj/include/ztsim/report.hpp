// Copyright 2026 The ztnetsim Authors
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
//
// JSON report schemas for decisions, matrices, and lint findings. Field
// names are frozen for golden tests.

#ifndef ZTSIM_REPORT_HPP
#define ZTSIM_REPORT_HPP

#include <nlohmann/json.hpp>

#include "ztsim/engine.hpp"

namespace ztsim {

nlohmann::ordered_json decision_to_json(const Decision& d);
Decision decision_from_json(const nlohmann::json& j);

nlohmann::ordered_json matrix_to_json(const ReachabilityMatrix& m);
nlohmann::ordered_json lint_to_json(const std::vector<LintFinding>& findings);

}  // namespace ztsim

#endif  // ZTSIM_REPORT_HPP
