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
// Gateway layer and software-defined perimeter: routing across vnet /
// cluster / cloud boundaries, SDP checkpoints for internet-crossing
// traffic, and gateway forwarding decisions.

#ifndef ZTSIM_PERIMETER_HPP
#define ZTSIM_PERIMETER_HPP

#include <optional>
#include <string>
#include <vector>

#include "ztsim/net.hpp"

namespace ztsim {

struct Topology;
struct Workload;

enum class GatewayKind { kIngress, kEgress, kApi };

// One published route on an ingress/api gateway: external host + path
// prefix mapped to an in-mesh service and port.
struct GatewayExpose {
  std::string host;        // exact or single-'*' pattern
  std::string path;        // prefix, longest match wins
  std::string service;     // "namespace/service"
  int port = 0;
};

struct Gateway {
  std::string name;
  GatewayKind kind = GatewayKind::kIngress;
  std::string attachment;  // cluster name or "cloud/vnet" path
  std::vector<GatewayExpose> exposes;               // ingress/api only
  std::vector<std::string> allowed_destinations;    // egress only
  bool encrypts = false;   // api gateways may mark trace as encrypting
};

enum class SdpDirection { kInbound, kOutbound };

struct SdpRule {
  enum class Action { kAllow, kDeny };
  Action action = Action::kDeny;
  SdpDirection direction = SdpDirection::kInbound;
  std::optional<std::string> host;  // exact or single-'*' pattern
  std::optional<Cidr> cidr;
  std::optional<int> port;
};

// default action is always Deny; the SDP trusts nothing by default.
struct PerimeterConfig {
  std::vector<SdpRule> sdp_rules;
};

struct PathSegment {
  enum class Hop { kLocal, kVnetPeering, kGateway, kSdp };
  Hop hop = Hop::kLocal;
  std::string gateway;  // set iff hop == kGateway

  bool operator==(const PathSegment&) const = default;
};

struct Route {
  bool reachable = false;
  std::vector<PathSegment> segments;
};

// Source endpoint for routing: either a workload or the public internet.
struct RouteSource {
  const Workload* workload = nullptr;  // null ⇒ internet origin
};

Route route(const Topology& topology, RouteSource src, const Workload& dst,
            int port);

struct PerimeterVerdict {
  bool allowed = false;
  int matched_rule = -1;  // -1 ⇒ default deny
};

// First matching sdp rule decides; no match falls through to Deny.
PerimeterVerdict evaluate_sdp(const PerimeterConfig& config,
                              SdpDirection direction, const std::string& host,
                              std::optional<Ipv4Addr> addr, int port);

struct GatewayVerdict {
  bool forwarded = false;
  std::string service;  // "namespace/service" when forwarded
  int port = 0;
  int matched_expose = -1;
  std::string reason;
};

// Ingress/api: longest path-prefix match among exposes. Egress: the
// destination host must match allowed_destinations.
GatewayVerdict evaluate_gateway(const Gateway& gateway,
                                const std::string& dst_host,
                                const std::string& path, int port);

}  // namespace ztsim

#endif  // ZTSIM_PERIMETER_HPP
