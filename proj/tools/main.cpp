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
// Command-line surface: validate scenarios, simulate single connections,
// compute reachability matrices, audit zero-trust posture, and re-render
// stored decisions. Exit codes: 0 pass, 1 policy-negative, 2 input error.

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ztsim/engine.hpp"
#include "ztsim/loader.hpp"
#include "ztsim/report.hpp"

namespace {

using ztsim::Decision;
using ztsim::Timestamp;

constexpr Timestamp kDefaultNow = 1767225600;  // 2026-01-01T00:00:00Z

bool use_color() {
  if (std::getenv("NO_COLOR")) return false;
  return isatty(fileno(stdout));
}

std::string colorize(const std::string& text, bool good) {
  if (!use_color()) return text;
  return (good ? "\033[32m" : "\033[31m") + text + "\033[0m";
}

std::optional<Timestamp> parse_iso8601(const std::string& text) {
  std::tm tm{};
  if (std::sscanf(text.c_str(), "%d-%d-%dT%d:%d:%dZ", &tm.tm_year, &tm.tm_mon,
                  &tm.tm_mday, &tm.tm_hour, &tm.tm_min, &tm.tm_sec) != 6) {
    return std::nullopt;
  }
  tm.tm_year -= 1900;
  tm.tm_mon -= 1;
  return static_cast<Timestamp>(timegm(&tm));
}

std::string status_line(int status) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "%03d", status);
  return buf;
}

std::string channel_label(ztsim::DecisionChannel c) {
  switch (c) {
    case ztsim::DecisionChannel::kMtls: return "mTLS";
    case ztsim::DecisionChannel::kPlaintext: return "plain";
    case ztsim::DecisionChannel::kNone: return "-";
  }
  return "-";
}

struct GlobalOptions {
  std::string scenario;
  std::string output = "table";
  bool lax = false;
  std::string now_text;
  Timestamp now = kDefaultNow;
};

int load_or_exit(const GlobalOptions& opts, ztsim::Scenario& out) {
  std::ifstream probe(opts.scenario);
  if (!probe) {
    std::cerr << "error: cannot read scenario file '" << opts.scenario << "'\n";
    return 2;
  }
  try {
    out = ztsim::load_scenario_file(opts.scenario, !opts.lax);
  } catch (const ztsim::ScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  const auto violations = ztsim::validate_topology(out.topology);
  if (!violations.empty()) {
    std::cerr << "error: scenario has " << violations.size()
              << " validation violation(s); run `ztnetsim validate`\n";
    return 2;
  }
  return 0;
}

int cmd_validate(const GlobalOptions& opts) {
  std::ifstream probe(opts.scenario);
  if (!probe) {
    std::cerr << "error: cannot read scenario file '" << opts.scenario << "'\n";
    return 2;
  }
  ztsim::Scenario scenario;
  try {
    scenario = ztsim::load_scenario_file(opts.scenario, !opts.lax);
  } catch (const ztsim::ScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  const auto violations = ztsim::validate_topology(scenario.topology);
  if (opts.output == "json") {
    nlohmann::ordered_json j;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& v : violations) {
      arr.push_back({{"rule", v.rule}, {"path", v.path}, {"message", v.message}});
    }
    j["violations"] = arr;
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& v : violations) {
      std::cout << v.rule << " " << v.path << " " << v.message << "\n";
    }
  }
  return violations.empty() ? 0 : 1;
}

int cmd_simulate(const GlobalOptions& opts, const std::string& request_name,
                 const std::string& from, const std::string& to, int port,
                 const std::string& method, const std::string& path,
                 const std::string& protocol) {
  ztsim::Scenario scenario;
  if (int rc = load_or_exit(opts, scenario)) return rc;

  ztsim::ConnectionRequest req;
  if (!request_name.empty()) {
    auto it = scenario.requests.find(request_name);
    if (it == scenario.requests.end()) {
      std::cerr << "error: no request named '" << request_name
                << "' in scenario\n";
      return 2;
    }
    req = it->second;
  } else {
    if (from.empty() || to.empty() || port == 0) {
      std::cerr << "error: need a request name or --from/--to/--port\n";
      return 2;
    }
    if (from == "internet") {
      req.origin = ztsim::ConnectionRequest::Origin::kInternet;
    } else {
      auto slash = from.find('/');
      if (slash == std::string::npos) {
        std::cerr << "error: --from must be namespace/workload or internet\n";
        return 2;
      }
      req.source_ns = from.substr(0, slash);
      req.source_workload = from.substr(slash + 1);
    }
    auto slash = to.find('/');
    if (slash != std::string::npos &&
        (scenario.topology.find_namespace(to.substr(0, slash)) ||
         to.substr(0, slash) == scenario.topology.mesh_root_namespace)) {
      req.dest_ns = to.substr(0, slash);
      req.dest_service = to.substr(slash + 1);
    } else {
      req.dest_literal = to;
    }
    req.port = port;
    auto proto = ztsim::protocol_from_string(protocol);
    if (!proto) {
      std::cerr << "error: invalid protocol '" << protocol << "'\n";
      return 2;
    }
    req.protocol = *proto;
    if (req.protocol == ztsim::Protocol::kHttp) {
      req.method = method.empty() ? "GET" : method;
      req.path = path.empty() ? "/" : path;
    }
  }

  Decision decision;
  try {
    decision = ztsim::evaluate_connection(scenario.topology, scenario.policies,
                                          req, opts.now);
  } catch (const ztsim::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  if (opts.output == "json") {
    std::cout << ztsim::decision_to_json(decision).dump(2) << "\n";
  } else {
    std::cout << colorize(status_line(decision.status),
                          decision.verdict == ztsim::Verdict::kAllowed)
              << "\n";
    std::cout << ztsim::explain(decision) << "\n";
  }
  return decision.verdict == ztsim::Verdict::kAllowed ? 0 : 1;
}

int cmd_matrix(const GlobalOptions& opts, int port,
               const std::string& protocol, bool parallel) {
  ztsim::Scenario scenario;
  if (int rc = load_or_exit(opts, scenario)) return rc;
  auto proto = ztsim::protocol_from_string(protocol);
  if (!proto) {
    std::cerr << "error: invalid protocol '" << protocol << "'\n";
    return 2;
  }
  bool exposed = false;
  for (const auto& w : scenario.topology.workloads) {
    if (w.ports.count(port)) exposed = true;
  }
  if (!exposed) {
    std::cerr << "error: no workload exposes port " << port << "\n";
    return 2;
  }
  const ztsim::ReachabilityMatrix m = ztsim::connection_matrix(
      scenario.topology, scenario.policies, port, *proto, opts.now, parallel);

  if (opts.output == "json") {
    std::cout << ztsim::matrix_to_json(m).dump(2) << "\n";
    return 0;
  }

  size_t row_width = 6;
  for (const auto& r : m.rows) row_width = std::max(row_width, r.size());
  std::cout << std::string(row_width, ' ');
  for (const auto& c : m.cols) std::cout << "  " << c;
  std::cout << "\n";
  for (size_t i = 0; i < m.rows.size(); ++i) {
    std::cout << m.rows[i]
              << std::string(row_width - m.rows[i].size(), ' ');
    for (size_t j = 0; j < m.cols.size(); ++j) {
      const auto& cell = m.cells[i][j];
      const std::string text =
          status_line(cell.status) + "/" + channel_label(cell.channel);
      std::string padded = text;
      if (m.cols[j].size() + 2 > padded.size()) {
        padded += std::string(m.cols[j].size() + 2 - padded.size(), ' ');
      } else {
        padded += "  ";
      }
      std::cout << "  "
                << colorize(padded, cell.verdict == ztsim::Verdict::kAllowed);
    }
    std::cout << "\n";
  }
  return 0;
}

int cmd_lint(const GlobalOptions& opts, const std::string& threshold) {
  ztsim::Scenario scenario;
  if (int rc = load_or_exit(opts, scenario)) return rc;
  const auto findings = ztsim::lint(scenario.topology, scenario.policies);

  ztsim::Severity min_severity = ztsim::Severity::kWarning;
  if (threshold == "info") {
    min_severity = ztsim::Severity::kInfo;
  } else if (threshold == "warning") {
    min_severity = ztsim::Severity::kWarning;
  } else if (threshold == "error") {
    min_severity = ztsim::Severity::kError;
  } else {
    std::cerr << "error: invalid threshold '" << threshold << "'\n";
    return 2;
  }

  if (opts.output == "json") {
    std::cout << ztsim::lint_to_json(findings).dump(2) << "\n";
  } else {
    for (const auto& f : findings) {
      std::cout << f.rule << " [" << ztsim::to_string(f.severity) << "] "
                << f.path << ": " << f.message << "\n";
    }
  }
  for (const auto& f : findings) {
    if (f.severity >= min_severity) return 1;
  }
  return 0;
}

int cmd_explain(const GlobalOptions& opts, const std::string& decision_path) {
  std::ifstream in(decision_path);
  if (!in) {
    std::cerr << "error: cannot read decision file '" << decision_path << "'\n";
    return 2;
  }
  nlohmann::json j;
  try {
    in >> j;
    const Decision d = ztsim::decision_from_json(j);
    std::cout << status_line(d.status) << "\n" << ztsim::explain(d) << "\n";
    return d.verdict == ztsim::Verdict::kAllowed ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: invalid decision document: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zero-trust micro-segmentation policy simulator"};
  app.require_subcommand(1);

  GlobalOptions opts;
  app.add_option("--scenario", opts.scenario, "scenario document path");
  app.add_option("--output", opts.output, "output format: table or json")
      ->check(CLI::IsMember({"table", "json"}));
  app.add_flag("--lax", opts.lax, "accept unknown keys in the document");
  app.add_option("--now", opts.now_text, "evaluation time, ISO8601 UTC");

  auto* validate = app.add_subcommand("validate", "check scenario invariants");

  std::string request_name, from, to, method, http_path, protocol = "HTTP";
  int port = 0;
  auto* simulate = app.add_subcommand("simulate", "evaluate one connection");
  simulate->add_option("request", request_name, "named request from scenario");
  simulate->add_option("--from", from, "source: namespace/workload or internet");
  simulate->add_option("--to", to, "destination: namespace/service or host");
  simulate->add_option("--port", port, "destination port");
  simulate->add_option("--method", method, "HTTP method");
  simulate->add_option("--path", http_path, "HTTP path");
  simulate->add_option("--protocol", protocol, "TCP or HTTP");

  int matrix_port = 0;
  std::string matrix_protocol = "HTTP";
  bool parallel = false;
  auto* matrix = app.add_subcommand("matrix", "all-pairs reachability");
  matrix->add_option("--port", matrix_port, "service port")->required();
  matrix->add_option("--protocol", matrix_protocol, "TCP or HTTP");
  matrix->add_flag("--parallel", parallel, "evaluate cells in parallel");

  std::string threshold = "warning";
  auto* lint = app.add_subcommand("lint", "zero-trust posture audit");
  lint->add_option("--threshold", threshold,
                   "failing severity: info, warning, error");

  std::string decision_path;
  auto* explain = app.add_subcommand("explain", "re-render a stored decision");
  explain->add_option("decision", decision_path, "decision JSON path")
      ->required();

  CLI11_PARSE(app, argc, argv);

  if (!opts.now_text.empty()) {
    auto parsed = parse_iso8601(opts.now_text);
    if (!parsed) {
      std::cerr << "error: invalid --now timestamp '" << opts.now_text << "'\n";
      return 2;
    }
    opts.now = *parsed;
  }

  if (explain->parsed()) return cmd_explain(opts, decision_path);

  if (opts.scenario.empty()) {
    std::cerr << "error: --scenario is required\n";
    return 2;
  }
  if (validate->parsed()) return cmd_validate(opts);
  if (simulate->parsed()) {
    return cmd_simulate(opts, request_name, from, to, port, method, http_path,
                        protocol);
  }
  if (matrix->parsed()) {
    return cmd_matrix(opts, matrix_port, matrix_protocol, parallel);
  }
  if (lint->parsed()) return cmd_lint(opts, threshold);
  return 2;
}
