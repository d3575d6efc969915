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

#include "ztsim/perimeter.hpp"

#include <algorithm>

#include "ztsim/labels.hpp"
#include "ztsim/topology.hpp"

namespace ztsim {

namespace {

// A gateway is attached to a locality when its attachment names the
// cluster of the namespace or the vnet itself.
bool attached_to(const Topology& t, const Gateway& g, const Workload& w) {
  if (g.attachment == t.vnet_of(w)) return true;
  const Cluster* cluster = t.cluster_of_namespace(w.ns);
  return cluster && g.attachment == cluster->name;
}

const Gateway* find_gateway(const Topology& t, GatewayKind kind,
                            const Workload& w) {
  const Gateway* best = nullptr;
  for (const auto& g : t.gateways) {
    if (g.kind != kind && !(kind == GatewayKind::kIngress &&
                            g.kind == GatewayKind::kApi)) {
      continue;
    }
    if (!attached_to(t, g, w)) continue;
    if (!best || g.name < best->name) best = &g;
  }
  return best;
}

// Does any ingress/api gateway publish a service that resolves to dst?
const Gateway* exposing_gateway(const Topology& t, const Workload& dst,
                                int port) {
  const Gateway* best = nullptr;
  for (const auto& g : t.gateways) {
    if (g.kind == GatewayKind::kEgress) continue;
    for (const auto& e : g.exposes) {
      auto slash = e.service.find('/');
      if (slash == std::string::npos) continue;
      for (const auto& ep : resolve_service(t, e.service.substr(slash + 1),
                                            e.service.substr(0, slash),
                                            e.port)) {
        if (ep.workload == &dst && (port == 0 || e.port == port)) {
          if (!best || g.name < best->name) best = &g;
        }
      }
    }
  }
  return best;
}

}  // namespace

Route route(const Topology& t, RouteSource src, const Workload& dst,
            int port) {
  if (!src.workload) {
    // Internet origin: must pass the SDP, then an ingress gateway that
    // actually publishes the destination.
    const Gateway* ingress = exposing_gateway(t, dst, port);
    if (!ingress) return {false, {}};
    return {true,
            {{PathSegment::Hop::kSdp, ""},
             {PathSegment::Hop::kGateway, ingress->name}}};
  }

  const std::string src_vnet = t.vnet_of(*src.workload);
  const std::string dst_vnet = t.vnet_of(dst);
  if (!src_vnet.empty() && src_vnet == dst_vnet) {
    return {true, {{PathSegment::Hop::kLocal, ""}}};
  }
  if (t.peered(src_vnet, dst_vnet)) {
    return {true, {{PathSegment::Hop::kVnetPeering, ""}}};
  }
  const Gateway* egress = find_gateway(t, GatewayKind::kEgress, *src.workload);
  const Gateway* ingress = find_gateway(t, GatewayKind::kIngress, dst);
  if (egress && ingress) {
    return {true,
            {{PathSegment::Hop::kGateway, egress->name},
             {PathSegment::Hop::kGateway, ingress->name}}};
  }
  return {false, {}};
}

PerimeterVerdict evaluate_sdp(const PerimeterConfig& config,
                              SdpDirection direction, const std::string& host,
                              std::optional<Ipv4Addr> addr, int port) {
  for (size_t i = 0; i < config.sdp_rules.size(); ++i) {
    const SdpRule& rule = config.sdp_rules[i];
    if (rule.direction != direction) continue;
    if (rule.host && !glob_match(*rule.host, host)) continue;
    if (rule.cidr && (!addr || !rule.cidr->contains(*addr))) continue;
    if (rule.port && *rule.port != port) continue;
    return {rule.action == SdpRule::Action::kAllow, static_cast<int>(i)};
  }
  return {false, -1};  // default deny, always
}

GatewayVerdict evaluate_gateway(const Gateway& gateway,
                                const std::string& dst_host,
                                const std::string& path, int port) {
  if (gateway.kind == GatewayKind::kEgress) {
    for (const auto& pattern : gateway.allowed_destinations) {
      if (glob_match(pattern, dst_host)) {
        return {true, dst_host, port, -1, "destination allowed"};
      }
    }
    return {false, "", 0, -1, "destination not in allow list"};
  }

  // Ingress/api: longest path-prefix match among exposes.
  int best = -1;
  size_t best_len = 0;
  for (size_t i = 0; i < gateway.exposes.size(); ++i) {
    const auto& e = gateway.exposes[i];
    if (!e.host.empty() && !glob_match(e.host, dst_host)) continue;
    if (path.compare(0, e.path.size(), e.path) != 0) continue;
    if (best == -1 || e.path.size() > best_len) {
      best = static_cast<int>(i);
      best_len = e.path.size();
    }
  }
  if (best == -1) return {false, "", 0, -1, "no exposed route matches"};
  const auto& e = gateway.exposes[best];
  return {true, e.service, e.port, best, "forwarded via " + e.path};
}

}  // namespace ztsim
