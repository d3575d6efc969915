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
// Multi-cloud object model: clouds, virtual networks, clusters,
// namespaces, workloads, and service endpoints. A Topology is immutable
// after load; all readers may share it without coordination.

#ifndef ZTSIM_TOPOLOGY_HPP
#define ZTSIM_TOPOLOGY_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ztsim/labels.hpp"
#include "ztsim/net.hpp"
#include "ztsim/perimeter.hpp"

namespace ztsim {

enum class Protocol { kTcp, kHttp };

enum class RiskTier { kLow, kModerate, kHigh };

struct Subnet {
  std::string name;
  Cidr cidr;
};

struct VirtualNetwork {
  std::string name;
  Cidr cidr;
  std::vector<Subnet> subnets;
  std::string business_function;
};

struct Cloud {
  std::string name;
  std::vector<VirtualNetwork> vnets;
};

struct Namespace {
  std::string name;
  std::string cluster;
  LabelMap labels;
  bool sidecar_injection_default = false;
};

struct Cluster {
  std::string name;
  std::string vnet;  // "cloud/vnet"
  RiskTier risk_tier = RiskTier::kModerate;
  std::vector<Namespace> namespaces;
};

enum class WorkloadKind { kContainer, kVm };

struct Workload {
  std::string name;
  WorkloadKind kind = WorkloadKind::kContainer;
  std::string ns;      // namespace name; unique across the topology
  std::string subnet;  // "cloud/vnet/subnet"
  Ipv4Addr address;
  LabelMap labels;
  std::string service_account;
  std::map<int, Protocol> ports;
  bool sidecar = false;
};

struct ServiceEndpoint {
  std::string name;
  std::string ns;
  LabelSelector selector;
  std::map<int, int> port_map;  // service port -> target port
};

struct Topology {
  std::vector<Cloud> clouds;
  // "cloud/vnet" pairs that are mutually routable.
  std::vector<std::pair<std::string, std::string>> peerings;
  std::vector<Cluster> clusters;
  std::vector<Workload> workloads;
  std::vector<ServiceEndpoint> services;
  std::vector<Gateway> gateways;
  PerimeterConfig perimeter;
  std::string mesh_root_namespace = "istio-system";
  std::string trust_domain = "cluster.local";

  const Namespace* find_namespace(const std::string& name) const;
  const Cluster* cluster_of_namespace(const std::string& ns) const;
  const Workload* find_workload(const std::string& ns,
                                const std::string& name) const;
  const ServiceEndpoint* find_service(const std::string& ns,
                                      const std::string& name) const;
  const VirtualNetwork* find_vnet(const std::string& path) const;  // cloud/vnet

  // "cloud/vnet" path of the vnet holding the workload's subnet, empty if
  // the subnet reference does not resolve.
  std::string vnet_of(const Workload& w) const;
  bool peered(const std::string& vnet_a, const std::string& vnet_b) const;

  // Workloads in deterministic (cluster, namespace, name) order.
  std::vector<const Workload*> sorted_workloads() const;
  std::vector<const ServiceEndpoint*> sorted_services() const;
};

struct Violation {
  std::string rule;  // e.g. "duplicate-address"
  std::string path;  // object path into the scenario document
  std::string message;
};

// Empty iff every type invariant holds. Violations are data, not failures.
std::vector<Violation> validate_topology(const Topology& t);

struct ResolvedEndpoint {
  const Workload* workload = nullptr;
  int target_port = 0;
};

struct ResolveError {
  std::string code;  // "unknown-service", "unknown-namespace", "port-not-exposed"
  std::string message;
};

// Every workload matched by the service selector, name-sorted, with the
// mapped target port.
std::vector<ResolvedEndpoint> resolve_service(const Topology& t,
                                              const std::string& service,
                                              const std::string& ns, int port,
                                              ResolveError* error = nullptr);

std::string to_string(Protocol p);
std::string to_string(RiskTier t);
std::string to_string(WorkloadKind k);
std::optional<Protocol> protocol_from_string(const std::string& s);
std::optional<RiskTier> risk_tier_from_string(const std::string& s);
std::optional<WorkloadKind> workload_kind_from_string(const std::string& s);

}  // namespace ztsim

#endif  // ZTSIM_TOPOLOGY_HPP
