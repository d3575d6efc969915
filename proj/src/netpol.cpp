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

#include "ztsim/netpol.hpp"

#include <algorithm>

namespace ztsim {

std::string to_string(Direction d) {
  return d == Direction::kIngress ? "ingress" : "egress";
}

std::string to_string(L34Verdict v) {
  switch (v) {
    case L34Verdict::kAllow: return "Allow";
    case L34Verdict::kDeny: return "Deny";
    case L34Verdict::kNoPolicy: return "NoPolicy";
  }
  return "NoPolicy";
}

std::vector<const NetworkPolicyL34*> select_policies(
    const std::vector<NetworkPolicyL34>& policies, const Workload& w,
    Direction direction) {
  std::vector<const NetworkPolicyL34*> out;
  for (const auto& p : policies) {
    if (!p.global() && p.ns != w.ns) continue;
    if (!p.selector.matches(w.labels)) continue;
    if (!p.rules(direction).has_value()) continue;
    out.push_back(&p);
  }
  std::sort(out.begin(), out.end(),
            [](const NetworkPolicyL34* a, const NetworkPolicyL34* b) {
              if (a->order != b->order) return a->order < b->order;
              return a->name < b->name;
            });
  return out;
}

namespace {

bool peer_matches(const PeerMatch& match, const L34Peer& peer) {
  if (match.cidr) {
    if (!peer.address || !match.cidr->contains(*peer.address)) return false;
  }
  if (match.selector) {
    if (!peer.labels || !match.selector->matches(*peer.labels)) return false;
  }
  if (match.namespaces) {
    if (!peer.ns || !match.namespaces->count(*peer.ns)) return false;
  }
  return true;
}

bool rule_matches(const L34Rule& rule, const L34Flow& flow) {
  // L4 sees only TCP; an HTTP protocol clause matches as TCP, so with the
  // two supported protocols a protocol clause is always satisfied.
  (void)flow.protocol;
  if (rule.ports) {
    bool any = false;
    for (const auto& range : *rule.ports) {
      if (range.contains(flow.port)) any = true;
    }
    if (!any) return false;
  }
  return peer_matches(rule.peer, flow.peer);
}

}  // namespace

L34Result evaluate_l3l4(const std::vector<NetworkPolicyL34>& policies,
                        const L34Flow& flow, const Workload& endpoint,
                        Direction direction) {
  const auto selected = select_policies(policies, endpoint, direction);
  if (selected.empty()) return {L34Verdict::kNoPolicy, nullptr, -1};
  for (const NetworkPolicyL34* policy : selected) {
    const auto& rules = *policy->rules(direction);
    for (size_t i = 0; i < rules.size(); ++i) {
      if (rule_matches(rules[i], flow)) {
        return {rules[i].action == L34Rule::Action::kAllow ? L34Verdict::kAllow
                                                           : L34Verdict::kDeny,
                policy, static_cast<int>(i)};
      }
    }
  }
  // Selected but nothing matched: implicit deny.
  return {L34Verdict::kDeny, nullptr, -1};
}

}  // namespace ztsim
