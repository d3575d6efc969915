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
// Layer 3/4 policy engine: ordered selector-based allow/deny rules,
// namespaced and global scopes, first-match semantics with implicit deny
// once a workload is selected.

#ifndef ZTSIM_NETPOL_HPP
#define ZTSIM_NETPOL_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ztsim/labels.hpp"
#include "ztsim/net.hpp"
#include "ztsim/topology.hpp"

namespace ztsim {

enum class Direction { kIngress, kEgress };

std::string to_string(Direction d);

struct PortRange {
  int lo = 0;
  int hi = 0;  // inclusive; lo == hi for a single port

  bool contains(int port) const { return lo <= port && port <= hi; }
};

// The other end of the flow: source for ingress rules, destination for
// egress rules. Omitted fields match anything.
struct PeerMatch {
  std::optional<Cidr> cidr;
  std::optional<LabelSelector> selector;
  std::optional<std::set<std::string>> namespaces;
};

struct L34Rule {
  enum class Action { kAllow, kDeny };
  Action action = Action::kAllow;
  std::optional<Protocol> protocol;
  std::optional<std::vector<PortRange>> ports;
  PeerMatch peer;
};

struct NetworkPolicyL34 {
  std::string name;
  // empty ⇒ global scope, otherwise the namespace the policy lives in.
  std::string ns;
  double order = 1000.0;  // lower evaluates first
  LabelSelector selector;
  // Present-but-empty lists make the policy direction-relevant (implicit
  // deny); absent lists leave the direction untouched.
  std::optional<std::vector<L34Rule>> ingress_rules;
  std::optional<std::vector<L34Rule>> egress_rules;

  bool global() const { return ns.empty(); }
  const std::optional<std::vector<L34Rule>>& rules(Direction d) const {
    return d == Direction::kIngress ? ingress_rules : egress_rules;
  }
};

// The peer endpoint of an L3/L4 evaluation, possibly off-topology
// (internet) in which case workload-based clauses never match.
struct L34Peer {
  std::optional<Ipv4Addr> address;
  std::optional<LabelMap> labels;      // absent off-topology
  std::optional<std::string> ns;
};

struct L34Flow {
  L34Peer peer;      // the remote end relative to `endpoint`
  int port = 0;      // destination port of the connection
  Protocol protocol = Protocol::kTcp;
};

// Policies whose selector and scope cover `w` and that are relevant for
// `direction`, sorted by (order, name) ascending.
std::vector<const NetworkPolicyL34*> select_policies(
    const std::vector<NetworkPolicyL34>& policies, const Workload& w,
    Direction direction);

enum class L34Verdict { kAllow, kDeny, kNoPolicy };

std::string to_string(L34Verdict v);

struct L34Result {
  L34Verdict verdict = L34Verdict::kNoPolicy;
  const NetworkPolicyL34* policy = nullptr;  // matched policy, if any
  int rule_index = -1;                       // -1 ⇒ implicit deny / no policy
};

// First matching rule across the selected, ordered policies decides. A
// selected workload with no matching rule is denied; an unselected
// workload yields kNoPolicy (treated as Allow by the engine).
L34Result evaluate_l3l4(const std::vector<NetworkPolicyL34>& policies,
                        const L34Flow& flow, const Workload& endpoint,
                        Direction direction);

}  // namespace ztsim

#endif  // ZTSIM_NETPOL_HPP
