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
// Scenario document loading: one declarative JSON document with top-level
// keys `topology`, `policies`, `perimeter`, `requests`. Strict mode
// rejects unknown keys.

#ifndef ZTSIM_LOADER_HPP
#define ZTSIM_LOADER_HPP

#include <map>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "ztsim/engine.hpp"
#include "ztsim/topology.hpp"

namespace ztsim {

// Structural problem in the document, reported with a path into it.
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct Scenario {
  Topology topology;
  PolicySet policies;
  std::map<std::string, ConnectionRequest> requests;
};

// Throws ScenarioError on schema violations; data-level invariants are
// checked separately via validate_topology.
Scenario load_scenario(const nlohmann::json& document, bool strict = true);
Scenario load_scenario_text(const std::string& text, bool strict = true);
Scenario load_scenario_file(const std::string& path, bool strict = true);

// Loader that enforces all invariants: throws ScenarioError carrying the
// first violation when validate_topology is non-empty.
Scenario load_scenario_checked(const nlohmann::json& document,
                               bool strict = true);

// Inverse of load_scenario; load(serialize(s)) yields an identical
// scenario (round-trip stability).
nlohmann::ordered_json serialize_scenario(const Scenario& s);

}  // namespace ztsim

#endif  // ZTSIM_LOADER_HPP
