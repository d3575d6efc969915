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
// Connection-evaluation pipeline across all layers, the all-pairs
// reachability matrix, and the zero-trust posture lint.
//
// Stage order is fixed and observable in traces: routing, egress-l3l4,
// perimeter (iff crossed), ingress-l3l4, handshake, authz (iff the
// destination has a sidecar), final. The first failure short-circuits.

#ifndef ZTSIM_ENGINE_HPP
#define ZTSIM_ENGINE_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ztsim/identity.hpp"
#include "ztsim/meshpol.hpp"
#include "ztsim/netpol.hpp"
#include "ztsim/perimeter.hpp"
#include "ztsim/topology.hpp"

namespace ztsim {

struct PolicySet {
  std::vector<NetworkPolicyL34> l3l4;
  std::vector<PeerAuthPolicy> peer_auth;
  std::vector<AuthorizationPolicy> authz;
};

struct ConnectionRequest {
  enum class Origin { kInternal, kInternet };
  Origin origin = Origin::kInternal;
  std::string source_ns;        // empty for internet origin
  std::string source_workload;
  // Destination: either an in-mesh service (ns + name) or a literal
  // external host / address.
  std::string dest_ns;
  std::string dest_service;
  std::string dest_literal;
  int port = 0;
  Protocol protocol = Protocol::kHttp;
  std::optional<std::string> method;
  std::optional<std::string> path;
};

enum class Verdict {
  kAllowed,
  kDeniedL3L4,
  kDeniedPerimeter,
  kDeniedAuthn,
  kDeniedAuthz,
  kUnreachable,
};

std::string to_string(Verdict v);
int status_of(Verdict v);  // 200, 403, or 000

enum class DecisionChannel { kMtls, kPlaintext, kNone };

std::string to_string(DecisionChannel c);

struct TraceEvent {
  std::string stage;    // routing, egress-l3l4, perimeter, ingress-l3l4,
                        // handshake, authz, final
  std::string subject;  // policy/rule/gateway id or "default"
  std::string outcome;  // pass, fail, skip
  std::string detail;
};

struct Decision {
  Verdict verdict = Verdict::kAllowed;
  int status = 200;
  DecisionChannel channel = DecisionChannel::kNone;
  std::vector<TraceEvent> trace;
};

struct MatrixCell {
  Verdict verdict = Verdict::kAllowed;
  int status = 200;
  DecisionChannel channel = DecisionChannel::kNone;
};

struct ReachabilityMatrix {
  int port = 0;
  Protocol protocol = Protocol::kHttp;
  std::vector<std::string> rows;  // "namespace/workload"
  std::vector<std::string> cols;  // "namespace/service"
  std::vector<std::vector<MatrixCell>> cells;
};

enum class Severity { kInfo, kWarning, kError };

std::string to_string(Severity s);

struct LintFinding {
  std::string rule;  // ZT-001 ... ZT-005
  Severity severity = Severity::kInfo;
  std::string path;
  std::string message;
};

// Unresolvable request references; distinct from kUnreachable, which is a
// topology verdict.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Engine {
 public:
  // Certificates for every sidecar workload are issued deterministically
  // (sorted workload order) at construction time.
  Engine(const Topology& topology, const PolicySet& policies, Timestamp now);

  Decision evaluate(const ConnectionRequest& req) const;

  // Every ordered (workload, service) pair under the port/protocol
  // template. Cell evaluation may run in parallel; the result is
  // independent of evaluation order.
  ReachabilityMatrix matrix(int port, Protocol protocol,
                            bool parallel = false) const;

  std::vector<LintFinding> lint() const;

  const Topology& topology() const { return topo_; }
  const PolicySet& policies() const { return policies_; }

 private:
  const Topology& topo_;
  const PolicySet& policies_;
  Timestamp now_;
  std::map<const Workload*, Certificate> certs_;
};

// Convenience single-shot forms.
Decision evaluate_connection(const Topology& t, const PolicySet& p,
                             const ConnectionRequest& req, Timestamp now);
ReachabilityMatrix connection_matrix(const Topology& t, const PolicySet& p,
                                     int port, Protocol protocol,
                                     Timestamp now, bool parallel = false);
std::vector<LintFinding> lint(const Topology& t, const PolicySet& p);

// One line per trace event, stable wording, suitable for golden files.
std::string explain(const Decision& d);

}  // namespace ztsim

#endif  // ZTSIM_ENGINE_HPP
