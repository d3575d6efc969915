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

#include "support/fixtures.hpp"

namespace ztsim::test {

std::string fixture_path(const std::string& name) {
  return std::string(ZTSIM_FIXTURE_DIR) + "/" + name;
}

Scenario load_fixture(const std::string& name) {
  return load_scenario_file(fixture_path(name));
}

}  // namespace ztsim::test
