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

#include "ztsim/meshpol.hpp"

#include <algorithm>

namespace ztsim {

namespace {

enum Specificity { kNone = 0, kMeshWide = 1, kNamespaceWide = 2, kWorkload = 3 };

Specificity peer_auth_specificity(const PeerAuthPolicy& p, const Workload& w,
                                  const std::string& mesh_root) {
  if (p.selector) {
    if (p.ns == w.ns && p.selector->matches(w.labels)) return kWorkload;
    return kNone;
  }
  if (p.ns == w.ns) return kNamespaceWide;
  if (p.ns == mesh_root) return kMeshWide;
  return kNone;
}

}  // namespace

EffectivePeerAuth effective_peer_auth(
    const std::vector<PeerAuthPolicy>& policies, const Workload& w, int port,
    const std::string& mesh_root) {
  const PeerAuthPolicy* best = nullptr;
  Specificity best_spec = kNone;
  bool tie = false;
  for (const auto& p : policies) {
    const Specificity spec = peer_auth_specificity(p, w, mesh_root);
    if (spec == kNone) continue;
    if (spec > best_spec) {
      best = &p;
      best_spec = spec;
      tie = false;
    } else if (spec == best_spec) {
      tie = true;
      if (p.name < best->name) best = &p;
    }
  }
  if (!best) return {PeerAuthMode::kPermissive, nullptr, false};
  PeerAuthMode mode = best->mode;
  auto override_it = best->port_overrides.find(port);
  if (override_it != best->port_overrides.end()) mode = override_it->second;
  return {mode, best, tie};
}

bool authz_in_scope(const AuthorizationPolicy& policy, const Workload& dst,
                    const std::string& mesh_root) {
  if (!policy.selector) return policy.ns == mesh_root || policy.ns == dst.ns;
  return policy.ns == dst.ns && policy.selector->matches(dst.labels);
}

namespace {

bool any_glob(const std::set<std::string>& patterns, const std::string& text) {
  return std::any_of(patterns.begin(), patterns.end(),
                     [&](const std::string& p) { return glob_match(p, text); });
}

}  // namespace

bool authz_rule_matches(const AuthzRule& rule, const RequestContext& ctx) {
  if (rule.from_principals) {
    // Plaintext carries no principal; a principal clause can never match.
    if (!ctx.peer_identity) return false;
    if (!any_glob(*rule.from_principals, ctx.peer_identity->str())) return false;
  }
  if (rule.from_namespaces) {
    if (!ctx.source_namespace) return false;
    if (!rule.from_namespaces->count(*ctx.source_namespace)) return false;
  }
  if (rule.to_ports) {
    if (!rule.to_ports->count(ctx.port)) return false;
  }
  if (rule.to_methods) {
    if (!ctx.method) return false;
    if (!rule.to_methods->count(*ctx.method)) return false;
  }
  if (rule.to_paths) {
    if (!ctx.path) return false;
    if (!any_glob(*rule.to_paths, *ctx.path)) return false;
  }
  return true;
}

AuthzResult evaluate_authz(const std::vector<AuthorizationPolicy>& policies,
                           const RequestContext& ctx,
                           const std::string& mesh_root) {
  const Workload& dst = *ctx.destination;

  for (const auto& p : policies) {
    if (p.action != AuthorizationPolicy::Action::kDeny) continue;
    if (!authz_in_scope(p, dst, mesh_root)) continue;
    for (size_t i = 0; i < p.rules.size(); ++i) {
      if (authz_rule_matches(p.rules[i], ctx)) {
        return {AuthzVerdict::kDeny, &p, static_cast<int>(i)};
      }
    }
  }

  bool any_allow_in_scope = false;
  for (const auto& p : policies) {
    if (p.action != AuthorizationPolicy::Action::kAllow) continue;
    if (!authz_in_scope(p, dst, mesh_root)) continue;
    any_allow_in_scope = true;
    for (size_t i = 0; i < p.rules.size(); ++i) {
      if (authz_rule_matches(p.rules[i], ctx)) {
        return {AuthzVerdict::kAllow, &p, static_cast<int>(i)};
      }
    }
  }

  if (!any_allow_in_scope) return {AuthzVerdict::kAllow, nullptr, -1};
  return {AuthzVerdict::kDeny, nullptr, -1};
}

}  // namespace ztsim
