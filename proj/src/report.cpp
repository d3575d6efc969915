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

#include "ztsim/report.hpp"

namespace ztsim {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json decision_to_json(const Decision& d) {
  ordered_json j;
  j["verdict"] = to_string(d.verdict);
  j["status"] = d.status;
  j["channel"] = to_string(d.channel);
  ordered_json trace = ordered_json::array();
  for (const auto& event : d.trace) {
    trace.push_back({{"stage", event.stage},
                     {"subject", event.subject},
                     {"outcome", event.outcome},
                     {"detail", event.detail}});
  }
  j["trace"] = trace;
  return j;
}

namespace {

Verdict verdict_from_string(const std::string& s) {
  if (s == "ALLOWED") return Verdict::kAllowed;
  if (s == "DENIED_L3L4") return Verdict::kDeniedL3L4;
  if (s == "DENIED_PERIMETER") return Verdict::kDeniedPerimeter;
  if (s == "DENIED_AUTHN") return Verdict::kDeniedAuthn;
  if (s == "DENIED_AUTHZ") return Verdict::kDeniedAuthz;
  if (s == "UNREACHABLE") return Verdict::kUnreachable;
  throw std::runtime_error("invalid verdict '" + s + "'");
}

DecisionChannel channel_from_string(const std::string& s) {
  if (s == "MTLS") return DecisionChannel::kMtls;
  if (s == "PLAINTEXT") return DecisionChannel::kPlaintext;
  if (s == "none") return DecisionChannel::kNone;
  throw std::runtime_error("invalid channel '" + s + "'");
}

}  // namespace

Decision decision_from_json(const json& j) {
  Decision d;
  d.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  d.status = j.at("status").get<int>();
  d.channel = channel_from_string(j.at("channel").get<std::string>());
  for (const auto& e : j.at("trace")) {
    d.trace.push_back({e.at("stage").get<std::string>(),
                       e.at("subject").get<std::string>(),
                       e.at("outcome").get<std::string>(),
                       e.at("detail").get<std::string>()});
  }
  return d;
}

ordered_json matrix_to_json(const ReachabilityMatrix& m) {
  ordered_json j;
  j["port"] = m.port;
  j["protocol"] = to_string(m.protocol);
  j["rows"] = m.rows;
  j["cols"] = m.cols;
  ordered_json cells = ordered_json::array();
  for (const auto& row : m.cells) {
    ordered_json row_json = ordered_json::array();
    for (const auto& cell : row) {
      row_json.push_back({{"verdict", to_string(cell.verdict)},
                          {"status", cell.status},
                          {"channel", to_string(cell.channel)}});
    }
    cells.push_back(row_json);
  }
  j["cells"] = cells;
  return j;
}

ordered_json lint_to_json(const std::vector<LintFinding>& findings) {
  ordered_json j;
  ordered_json arr = ordered_json::array();
  for (const auto& f : findings) {
    arr.push_back({{"rule", f.rule},
                   {"severity", to_string(f.severity)},
                   {"path", f.path},
                   {"message", f.message}});
  }
  j["findings"] = arr;
  return j;
}

}  // namespace ztsim
