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
// L7 mesh policy engine: effective peer-authentication mode per
// (workload, port) and ALLOW/DENY authorization evaluation at mesh,
// namespace, and workload scope.

#ifndef ZTSIM_MESHPOL_HPP
#define ZTSIM_MESHPOL_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ztsim/identity.hpp"
#include "ztsim/labels.hpp"
#include "ztsim/topology.hpp"

namespace ztsim {

struct PeerAuthPolicy {
  std::string name;
  std::string ns;
  // Absent selector covers the whole namespace; in the mesh root
  // namespace an absent selector covers the whole mesh.
  std::optional<LabelSelector> selector;
  PeerAuthMode mode = PeerAuthMode::kPermissive;
  std::map<int, PeerAuthMode> port_overrides;
};

struct AuthzRule {
  // Omitted clause matches anything; present-but-empty matches nothing.
  std::optional<std::set<std::string>> from_principals;  // '*' globs allowed
  std::optional<std::set<std::string>> from_namespaces;
  std::optional<std::set<int>> to_ports;
  std::optional<std::set<std::string>> to_methods;
  std::optional<std::set<std::string>> to_paths;  // exact or trailing '*'
};

struct AuthorizationPolicy {
  enum class Action { kAllow, kDeny };
  std::string name;
  std::string ns;
  std::optional<LabelSelector> selector;
  Action action = Action::kAllow;
  std::vector<AuthzRule> rules;  // empty list matches no request
};

struct RequestContext {
  const Workload* destination = nullptr;
  int port = 0;
  Protocol protocol = Protocol::kTcp;
  std::optional<Identity> peer_identity;  // present iff channel was mTLS
  std::optional<std::string> source_namespace;
  std::optional<std::string> method;
  std::optional<std::string> path;
};

struct EffectivePeerAuth {
  PeerAuthMode mode = PeerAuthMode::kPermissive;
  const PeerAuthPolicy* policy = nullptr;  // null ⇒ built-in default
  bool tie = false;  // another policy at the same specificity also matched
};

// Most specific wins: workload selector > namespace default > mesh-wide >
// built-in PERMISSIVE. Port overrides on the winning policy take
// precedence; ties break to the lexicographically smallest name.
EffectivePeerAuth effective_peer_auth(
    const std::vector<PeerAuthPolicy>& policies, const Workload& w, int port,
    const std::string& mesh_root);

enum class AuthzVerdict { kAllow, kDeny };

struct AuthzResult {
  AuthzVerdict verdict = AuthzVerdict::kAllow;
  const AuthorizationPolicy* policy = nullptr;  // null ⇒ "default"
  int rule_index = -1;
};

// Evaluation order: matching DENY wins; with no ALLOW policy in scope the
// default is Allow; a matching ALLOW allows; otherwise Deny.
AuthzResult evaluate_authz(const std::vector<AuthorizationPolicy>& policies,
                           const RequestContext& ctx,
                           const std::string& mesh_root);

// Scope check shared with lint: mesh-wide, destination-namespace default,
// or selector match on the destination workload.
bool authz_in_scope(const AuthorizationPolicy& policy, const Workload& dst,
                    const std::string& mesh_root);

bool authz_rule_matches(const AuthzRule& rule, const RequestContext& ctx);

}  // namespace ztsim

#endif  // ZTSIM_MESHPOL_HPP
