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

#include "ztsim/engine.hpp"

#include <algorithm>
#include <thread>

namespace ztsim {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kAllowed: return "ALLOWED";
    case Verdict::kDeniedL3L4: return "DENIED_L3L4";
    case Verdict::kDeniedPerimeter: return "DENIED_PERIMETER";
    case Verdict::kDeniedAuthn: return "DENIED_AUTHN";
    case Verdict::kDeniedAuthz: return "DENIED_AUTHZ";
    case Verdict::kUnreachable: return "UNREACHABLE";
  }
  return "UNREACHABLE";
}

int status_of(Verdict v) {
  switch (v) {
    case Verdict::kAllowed: return 200;
    case Verdict::kDeniedAuthz: return 403;
    default: return 0;
  }
}

std::string to_string(DecisionChannel c) {
  switch (c) {
    case DecisionChannel::kMtls: return "MTLS";
    case DecisionChannel::kPlaintext: return "PLAINTEXT";
    case DecisionChannel::kNone: return "none";
  }
  return "none";
}

std::string to_string(Severity s) {
  switch (s) {
    case Severity::kInfo: return "info";
    case Severity::kWarning: return "warning";
    case Severity::kError: return "error";
  }
  return "info";
}

namespace {

std::string policy_id(const NetworkPolicyL34& p) {
  return p.global() ? p.name : p.ns + "/" + p.name;
}

std::string policy_id(const AuthorizationPolicy& p) {
  return p.ns + "/" + p.name;
}

std::string policy_id(const PeerAuthPolicy& p) {
  return p.ns + "/" + p.name;
}

std::string workload_id(const Workload& w) { return w.ns + "/" + w.name; }

struct ResolvedRequest {
  const Workload* source = nullptr;      // null ⇒ internet
  const Workload* destination = nullptr; // null ⇒ external host
  int target_port = 0;
  std::string dest_host;  // "service.namespace" or the literal
};

}  // namespace

Engine::Engine(const Topology& topology, const PolicySet& policies,
               Timestamp now)
    : topo_(topology), policies_(policies), now_(now) {
  CertificateAuthority ca(topo_.trust_domain);
  for (const Workload* w : topo_.sorted_workloads()) {
    if (!w->sidecar) continue;
    if (auto cert = ca.issue(*w, now_)) certs_.emplace(w, *cert);
  }
}

Decision Engine::evaluate(const ConnectionRequest& req) const {
  Decision d;
  auto fail = [&](Verdict v, TraceEvent event) {
    event.outcome = "fail";
    d.trace.push_back(std::move(event));
    d.verdict = v;
    d.status = status_of(v);
    return d;
  };

  // Resolve references; failures here are input errors, not verdicts.
  ResolvedRequest r;
  if (req.origin == ConnectionRequest::Origin::kInternal) {
    r.source = topo_.find_workload(req.source_ns, req.source_workload);
    if (!r.source) {
      throw InputError("unknown source workload '" + req.source_ns + "/" +
                       req.source_workload + "'");
    }
  }
  if (!req.dest_service.empty()) {
    ResolveError err;
    auto endpoints =
        resolve_service(topo_, req.dest_service, req.dest_ns, req.port, &err);
    if (endpoints.empty()) {
      throw InputError(err.code.empty() ? "service resolves to no workload"
                                        : err.code + ": " + err.message);
    }
    r.destination = endpoints.front().workload;
    r.target_port = endpoints.front().target_port;
    r.dest_host = req.dest_service + "." + req.dest_ns;
  } else {
    r.dest_host = req.dest_literal;
    r.target_port = req.port;
    if (auto addr = Ipv4Addr::parse(req.dest_literal)) {
      for (const auto& w : topo_.workloads) {
        if (w.address == *addr) r.destination = &w;
      }
    }
  }

  const std::string src_id = r.source ? workload_id(*r.source) : "internet";

  // -- routing --------------------------------------------------------
  Route rt;
  if (r.destination) {
    rt = route(topo_, RouteSource{r.source}, *r.destination, req.port);
  } else {
    // Internet-bound: always routable via the perimeter.
    rt.reachable = true;
    if (r.source) {
      if (const Cluster* cluster = topo_.cluster_of_namespace(r.source->ns)) {
        for (const auto& g : topo_.gateways) {
          if (g.kind == GatewayKind::kEgress &&
              (g.attachment == cluster->name ||
               g.attachment == topo_.vnet_of(*r.source))) {
            rt.segments.push_back({PathSegment::Hop::kGateway, g.name});
            break;
          }
        }
      }
    }
    rt.segments.push_back({PathSegment::Hop::kSdp, ""});
  }
  if (!rt.reachable) {
    return fail(Verdict::kUnreachable,
                {"routing", "-", "",
                 "no path from " + src_id + " to " +
                     (r.destination ? workload_id(*r.destination)
                                    : r.dest_host)});
  }
  std::string path_desc;
  for (const auto& seg : rt.segments) {
    if (!path_desc.empty()) path_desc += ", ";
    switch (seg.hop) {
      case PathSegment::Hop::kLocal: path_desc += "local"; break;
      case PathSegment::Hop::kVnetPeering: path_desc += "vnet-peering"; break;
      case PathSegment::Hop::kGateway:
        path_desc += "gateway(" + seg.gateway + ")";
        break;
      case PathSegment::Hop::kSdp: path_desc += "sdp"; break;
    }
  }
  d.trace.push_back({"routing", "-", "pass", "path: " + path_desc});

  // -- egress L3/L4 at the source ------------------------------------
  if (!r.source) {
    d.trace.push_back(
        {"egress-l3l4", "-", "skip", "no source workload; egress skipped"});
  } else {
    L34Flow flow;
    flow.port = req.port;
    flow.protocol = req.protocol;
    if (r.destination) {
      flow.peer = {r.destination->address, r.destination->labels,
                   r.destination->ns};
    }
    const L34Result res =
        evaluate_l3l4(policies_.l3l4, flow, *r.source, Direction::kEgress);
    if (res.verdict == L34Verdict::kNoPolicy) {
      d.trace.push_back({"egress-l3l4", "default", "pass",
                         "no policy selects " + src_id + "; default allow"});
    } else if (res.verdict == L34Verdict::kAllow) {
      d.trace.push_back({"egress-l3l4", policy_id(*res.policy), "pass",
                         "policy " + policy_id(*res.policy) + " rule " +
                             std::to_string(res.rule_index) + " allowed"});
    } else if (res.policy) {
      return fail(Verdict::kDeniedL3L4,
                  {"egress-l3l4", policy_id(*res.policy), "",
                   "policy " + policy_id(*res.policy) + " rule " +
                       std::to_string(res.rule_index) + " denied"});
    } else {
      return fail(Verdict::kDeniedL3L4,
                  {"egress-l3l4", "default", "",
                   "selected by policy but no rule matched; implicit deny"});
    }
  }

  // -- perimeter, iff the route crosses it ---------------------------
  for (const auto& seg : rt.segments) {
    if (seg.hop == PathSegment::Hop::kSdp) {
      const SdpDirection dir = r.source ? SdpDirection::kOutbound
                                        : SdpDirection::kInbound;
      std::optional<Ipv4Addr> addr;
      if (r.destination) addr = r.destination->address;
      const PerimeterVerdict pv =
          evaluate_sdp(topo_.perimeter, dir, r.dest_host, addr, req.port);
      if (!pv.allowed) {
        return fail(Verdict::kDeniedPerimeter,
                    {"perimeter", "sdp", "",
                     pv.matched_rule >= 0
                         ? "sdp rule " + std::to_string(pv.matched_rule) +
                               " denied"
                         : "sdp default deny"});
      }
      d.trace.push_back({"perimeter", "sdp", "pass",
                         "sdp rule " + std::to_string(pv.matched_rule) +
                             " allowed"});
    } else if (seg.hop == PathSegment::Hop::kGateway) {
      const Gateway* gw = nullptr;
      for (const auto& g : topo_.gateways) {
        if (g.name == seg.gateway) gw = &g;
      }
      if (!gw) continue;
      const GatewayVerdict gv = evaluate_gateway(
          *gw, r.dest_host, req.path.value_or("/"), req.port);
      if (!gv.forwarded) {
        return fail(Verdict::kDeniedPerimeter,
                    {"perimeter", gw->name, "",
                     "gateway " + gw->name + " rejected: " + gv.reason});
      }
      std::string detail = "gateway " + gw->name + ": " + gv.reason;
      if (gw->encrypts) detail += "; payload encrypted";
      d.trace.push_back({"perimeter", gw->name, "pass", detail});
    }
  }

  // External destination: nothing below the perimeter applies.
  if (!r.destination) {
    d.trace.push_back({"final", "-", "pass", "allowed (200)"});
    d.verdict = Verdict::kAllowed;
    d.status = 200;
    d.channel = DecisionChannel::kPlaintext;
    return d;
  }
  const Workload& dst = *r.destination;

  // -- ingress L3/L4 at the destination ------------------------------
  {
    L34Flow flow;
    flow.port = r.target_port;
    flow.protocol = req.protocol;
    if (r.source) {
      flow.peer = {r.source->address, r.source->labels, r.source->ns};
    }
    const L34Result res =
        evaluate_l3l4(policies_.l3l4, flow, dst, Direction::kIngress);
    if (res.verdict == L34Verdict::kNoPolicy) {
      d.trace.push_back({"ingress-l3l4", "default", "pass",
                         "no policy selects " + workload_id(dst) +
                             "; default allow"});
    } else if (res.verdict == L34Verdict::kAllow) {
      d.trace.push_back({"ingress-l3l4", policy_id(*res.policy), "pass",
                         "policy " + policy_id(*res.policy) + " rule " +
                             std::to_string(res.rule_index) + " allowed"});
    } else if (res.policy) {
      return fail(Verdict::kDeniedL3L4,
                  {"ingress-l3l4", policy_id(*res.policy), "",
                   "policy " + policy_id(*res.policy) + " rule " +
                       std::to_string(res.rule_index) + " denied"});
    } else {
      return fail(Verdict::kDeniedL3L4,
                  {"ingress-l3l4", "default", "",
                   "selected by policy but no rule matched; implicit deny"});
    }
  }

  // -- transport handshake -------------------------------------------
  HandshakeOutcome hs;
  if (!dst.sidecar) {
    hs = {Channel::kPlaintext, std::nullopt, HandshakeReason::kOk};
    d.trace.push_back({"handshake", "default", "pass",
                       "server outside mesh; plaintext"});
  } else {
    const EffectivePeerAuth epa = effective_peer_auth(
        policies_.peer_auth, dst, r.target_port, topo_.mesh_root_namespace);
    std::optional<Certificate> client_cert;
    if (r.source) {
      auto it = certs_.find(r.source);
      if (it != certs_.end()) client_cert = it->second;
    }
    hs = handshake(client_cert, topo_.trust_domain, epa.mode, now_);
    const std::string subject =
        epa.policy ? policy_id(*epa.policy) : "default";
    if (hs.channel == Channel::kRejected) {
      return fail(Verdict::kDeniedAuthn,
                  {"handshake", subject, "",
                   "mode " + to_string(epa.mode) + "; " +
                       to_string(hs.reason)});
    }
    d.trace.push_back(
        {"handshake", subject, "pass",
         hs.channel == Channel::kMtls
             ? "mode " + to_string(epa.mode) + "; mTLS established as " +
                   hs.peer_identity->str()
             : "mode " + to_string(epa.mode) + "; plaintext accepted"});
  }
  d.channel = hs.channel == Channel::kMtls ? DecisionChannel::kMtls
                                           : DecisionChannel::kPlaintext;

  // -- L7 authorization, iff the destination has a sidecar -----------
  if (!dst.sidecar) {
    d.trace.push_back(
        {"authz", "-", "skip", "destination has no sidecar; authz skipped"});
  } else {
    RequestContext ctx;
    ctx.destination = &dst;
    ctx.port = r.target_port;
    ctx.protocol = req.protocol;
    ctx.peer_identity = hs.peer_identity;
    if (r.source) ctx.source_namespace = r.source->ns;
    if (req.protocol == Protocol::kHttp) {
      ctx.method = req.method;
      ctx.path = req.path;
    }
    const AuthzResult res =
        evaluate_authz(policies_.authz, ctx, topo_.mesh_root_namespace);
    if (res.verdict == AuthzVerdict::kDeny) {
      if (res.policy) {
        return fail(Verdict::kDeniedAuthz,
                    {"authz", policy_id(*res.policy), "",
                     "policy " + policy_id(*res.policy) + " rule " +
                         std::to_string(res.rule_index) +
                         " denied → 403"});
      }
      // No ALLOW policy matched; report the (sole) blocking policy when
      // there is exactly one in scope.
      std::vector<const AuthorizationPolicy*> in_scope;
      for (const auto& p : policies_.authz) {
        if (p.action == AuthorizationPolicy::Action::kAllow &&
            authz_in_scope(p, dst, topo_.mesh_root_namespace)) {
          in_scope.push_back(&p);
        }
      }
      if (in_scope.size() == 1) {
        return fail(Verdict::kDeniedAuthz,
                    {"authz", policy_id(*in_scope.front()), "",
                     "policy " + policy_id(*in_scope.front()) +
                         " matched nothing; default deny → 403"});
      }
      return fail(Verdict::kDeniedAuthz,
                  {"authz", "default", "",
                   "no ALLOW policy matched; default deny → 403"});
    }
    if (res.policy) {
      d.trace.push_back({"authz", policy_id(*res.policy), "pass",
                         "policy " + policy_id(*res.policy) + " rule " +
                             std::to_string(res.rule_index) + " allowed"});
    } else {
      d.trace.push_back({"authz", "default", "pass",
                         "no ALLOW policy in scope; default allow"});
    }
  }

  d.trace.push_back({"final", "-", "pass", "allowed (200)"});
  d.verdict = Verdict::kAllowed;
  d.status = 200;
  return d;
}

ReachabilityMatrix Engine::matrix(int port, Protocol protocol,
                                  bool parallel) const {
  ReachabilityMatrix m;
  m.port = port;
  m.protocol = protocol;

  const auto workloads = topo_.sorted_workloads();
  std::vector<const ServiceEndpoint*> services;
  for (const ServiceEndpoint* svc : topo_.sorted_services()) {
    if (!svc->port_map.count(port)) continue;
    if (resolve_service(topo_, svc->name, svc->ns, port).empty()) continue;
    services.push_back(svc);
  }
  for (const Workload* w : workloads) m.rows.push_back(workload_id(*w));
  for (const ServiceEndpoint* s : services) m.cols.push_back(s->ns + "/" + s->name);
  m.cells.assign(workloads.size(),
                 std::vector<MatrixCell>(services.size()));

  auto eval_row = [&](size_t i) {
    for (size_t j = 0; j < services.size(); ++j) {
      ConnectionRequest req;
      req.source_ns = workloads[i]->ns;
      req.source_workload = workloads[i]->name;
      req.dest_ns = services[j]->ns;
      req.dest_service = services[j]->name;
      req.port = port;
      req.protocol = protocol;
      if (protocol == Protocol::kHttp) {
        req.method = "GET";
        req.path = "/";
      }
      const Decision d = evaluate(req);
      m.cells[i][j] = {d.verdict, d.status, d.channel};
    }
  };

  if (parallel && workloads.size() > 1) {
    const size_t n_threads =
        std::min<size_t>(std::thread::hardware_concurrency() + 1,
                         workloads.size());
    std::vector<std::thread> pool;
    for (size_t k = 0; k < n_threads; ++k) {
      pool.emplace_back([&, k] {
        for (size_t i = k; i < workloads.size(); i += n_threads) eval_row(i);
      });
    }
    for (auto& th : pool) th.join();
  } else {
    for (size_t i = 0; i < workloads.size(); ++i) eval_row(i);
  }
  return m;
}

std::vector<LintFinding> Engine::lint() const {
  std::vector<LintFinding> out;

  // ZT-001: no mesh-wide default-deny (allow-nothing) authorization policy.
  bool has_default_deny = false;
  for (const auto& p : policies_.authz) {
    if (p.ns == topo_.mesh_root_namespace && !p.selector &&
        p.action == AuthorizationPolicy::Action::kAllow && p.rules.empty()) {
      has_default_deny = true;
    }
  }
  if (!has_default_deny) {
    out.push_back({"ZT-001", Severity::kWarning, "/policies/authz",
                   "no mesh-wide default-deny (allow-nothing) authorization "
                   "policy"});
  }

  for (const Workload* w : topo_.sorted_workloads()) {
    const std::string path = "/topology/workloads/" + workload_id(*w);

    // ZT-002: workload without sidecar in an injection-enabled namespace.
    const Namespace* ns = topo_.find_namespace(w->ns);
    if (ns && ns->sidecar_injection_default && !w->sidecar) {
      out.push_back({"ZT-002", Severity::kWarning, path,
                     "workload " + workload_id(*w) +
                         " has no sidecar in injection-enabled namespace"});
    }

    // ZT-003: plaintext-permitted path (effective mode not STRICT).
    const EffectivePeerAuth epa = effective_peer_auth(
        policies_.peer_auth, *w, 0, topo_.mesh_root_namespace);
    if (epa.mode != PeerAuthMode::kStrict) {
      out.push_back({"ZT-003", Severity::kWarning, path,
                     "effective peer-auth " + to_string(epa.mode) + " on " +
                         workload_id(*w) + " permits plaintext"});
    }

    // ZT-005: duplicate-specificity peer-auth tie.
    if (epa.tie) {
      out.push_back({"ZT-005", Severity::kInfo, path,
                     "multiple peer-auth policies at the same specificity "
                     "match " + workload_id(*w) + "; tie broken by name"});
    }
  }

  // ZT-004: namespace with no L3/L4 policy selecting its workloads.
  for (const auto& cluster : topo_.clusters) {
    for (const auto& ns : cluster.namespaces) {
      bool has_workload = false;
      bool covered = false;
      for (const auto& w : topo_.workloads) {
        if (w.ns != ns.name) continue;
        has_workload = true;
        for (const auto& p : policies_.l3l4) {
          if (!p.global() && p.ns != ns.name) continue;
          if (!p.ingress_rules && !p.egress_rules) continue;
          if (p.selector.matches(w.labels)) covered = true;
        }
      }
      if (has_workload && !covered) {
        out.push_back({"ZT-004", Severity::kInfo,
                       "/topology/namespaces/" + ns.name,
                       "no L3/L4 policy selects workloads in namespace " +
                           ns.name});
      }
    }
  }

  std::sort(out.begin(), out.end(),
            [](const LintFinding& a, const LintFinding& b) {
              if (a.severity != b.severity) return a.severity > b.severity;
              if (a.rule != b.rule) return a.rule < b.rule;
              return a.path < b.path;
            });
  return out;
}

Decision evaluate_connection(const Topology& t, const PolicySet& p,
                             const ConnectionRequest& req, Timestamp now) {
  return Engine(t, p, now).evaluate(req);
}

ReachabilityMatrix connection_matrix(const Topology& t, const PolicySet& p,
                                     int port, Protocol protocol,
                                     Timestamp now, bool parallel) {
  return Engine(t, p, now).matrix(port, protocol, parallel);
}

std::vector<LintFinding> lint(const Topology& t, const PolicySet& p) {
  return Engine(t, p, 0).lint();
}

std::string explain(const Decision& d) {
  std::string out;
  for (const auto& event : d.trace) {
    if (!out.empty()) out += "\n";
    out += event.stage + ": " + event.detail;
  }
  return out;
}

}  // namespace ztsim
