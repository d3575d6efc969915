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

#include "ztsim/topology.hpp"

#include <algorithm>
#include <set>

namespace ztsim {

const Namespace* Topology::find_namespace(const std::string& name) const {
  for (const auto& cluster : clusters) {
    for (const auto& ns : cluster.namespaces) {
      if (ns.name == name) return &ns;
    }
  }
  return nullptr;
}

const Cluster* Topology::cluster_of_namespace(const std::string& ns) const {
  for (const auto& cluster : clusters) {
    for (const auto& n : cluster.namespaces) {
      if (n.name == ns) return &cluster;
    }
  }
  return nullptr;
}

const Workload* Topology::find_workload(const std::string& ns,
                                        const std::string& name) const {
  for (const auto& w : workloads) {
    if (w.ns == ns && w.name == name) return &w;
  }
  return nullptr;
}

const ServiceEndpoint* Topology::find_service(const std::string& ns,
                                              const std::string& name) const {
  for (const auto& s : services) {
    if (s.ns == ns && s.name == name) return &s;
  }
  return nullptr;
}

const VirtualNetwork* Topology::find_vnet(const std::string& path) const {
  auto slash = path.find('/');
  if (slash == std::string::npos) return nullptr;
  const std::string cloud_name = path.substr(0, slash);
  const std::string vnet_name = path.substr(slash + 1);
  for (const auto& cloud : clouds) {
    if (cloud.name != cloud_name) continue;
    for (const auto& vnet : cloud.vnets) {
      if (vnet.name == vnet_name) return &vnet;
    }
  }
  return nullptr;
}

std::string Topology::vnet_of(const Workload& w) const {
  // subnet ref is "cloud/vnet/subnet"
  auto last = w.subnet.rfind('/');
  if (last == std::string::npos) return "";
  const std::string vnet_path = w.subnet.substr(0, last);
  return find_vnet(vnet_path) ? vnet_path : "";
}

bool Topology::peered(const std::string& vnet_a,
                      const std::string& vnet_b) const {
  for (const auto& [a, b] : peerings) {
    if ((a == vnet_a && b == vnet_b) || (a == vnet_b && b == vnet_a)) {
      return true;
    }
  }
  return false;
}

namespace {

std::string sort_key(const Topology& t, const std::string& ns,
                     const std::string& name) {
  const Cluster* cluster = t.cluster_of_namespace(ns);
  return (cluster ? cluster->name : "") + "\x01" + ns + "\x01" + name;
}

}  // namespace

std::vector<const Workload*> Topology::sorted_workloads() const {
  std::vector<const Workload*> out;
  out.reserve(workloads.size());
  for (const auto& w : workloads) out.push_back(&w);
  std::sort(out.begin(), out.end(), [this](const Workload* a, const Workload* b) {
    return sort_key(*this, a->ns, a->name) < sort_key(*this, b->ns, b->name);
  });
  return out;
}

std::vector<const ServiceEndpoint*> Topology::sorted_services() const {
  std::vector<const ServiceEndpoint*> out;
  out.reserve(services.size());
  for (const auto& s : services) out.push_back(&s);
  std::sort(out.begin(), out.end(),
            [this](const ServiceEndpoint* a, const ServiceEndpoint* b) {
              return sort_key(*this, a->ns, a->name) <
                     sort_key(*this, b->ns, b->name);
            });
  return out;
}

namespace {

const Subnet* find_subnet(const Topology& t, const std::string& path) {
  // "cloud/vnet/subnet"
  auto last = path.rfind('/');
  if (last == std::string::npos) return nullptr;
  const VirtualNetwork* vnet = t.find_vnet(path.substr(0, last));
  if (!vnet) return nullptr;
  const std::string subnet_name = path.substr(last + 1);
  for (const auto& subnet : vnet->subnets) {
    if (subnet.name == subnet_name) return &subnet;
  }
  return nullptr;
}

void check_unique(std::vector<Violation>& out, std::set<std::string>& seen,
                  const std::string& key, const std::string& path) {
  if (!seen.insert(key).second) {
    out.push_back({"duplicate-identifier", path, "duplicate name '" + key + "'"});
  }
}

}  // namespace

std::vector<Violation> validate_topology(const Topology& t) {
  std::vector<Violation> out;

  std::set<std::string> cloud_names;
  for (size_t ci = 0; ci < t.clouds.size(); ++ci) {
    const auto& cloud = t.clouds[ci];
    const std::string cloud_path = "/topology/clouds/" + std::to_string(ci);
    check_unique(out, cloud_names, cloud.name, cloud_path);
    std::set<std::string> vnet_names;
    for (size_t vi = 0; vi < cloud.vnets.size(); ++vi) {
      const auto& vnet = cloud.vnets[vi];
      const std::string vnet_path = cloud_path + "/vnets/" + std::to_string(vi);
      check_unique(out, vnet_names, vnet.name, vnet_path);
      std::set<std::string> subnet_names;
      for (size_t si = 0; si < vnet.subnets.size(); ++si) {
        const auto& subnet = vnet.subnets[si];
        const std::string subnet_path =
            vnet_path + "/subnets/" + std::to_string(si);
        check_unique(out, subnet_names, subnet.name, subnet_path);
        if (!vnet.cidr.contains(subnet.cidr)) {
          out.push_back({"subnet-outside-vnet", subnet_path,
                         "subnet " + subnet.cidr.str() + " not contained in vnet " +
                             vnet.cidr.str()});
        }
        for (size_t sj = 0; sj < si; ++sj) {
          if (subnet.cidr.overlaps(vnet.subnets[sj].cidr)) {
            out.push_back({"cidr-overlap", subnet_path,
                           "subnet " + subnet.name + " overlaps " +
                               vnet.subnets[sj].name});
          }
        }
      }
    }
  }

  std::set<std::string> cluster_names;
  std::set<std::string> namespace_names;
  for (size_t ci = 0; ci < t.clusters.size(); ++ci) {
    const auto& cluster = t.clusters[ci];
    const std::string cluster_path = "/topology/clusters/" + std::to_string(ci);
    check_unique(out, cluster_names, cluster.name, cluster_path);
    if (!t.find_vnet(cluster.vnet)) {
      out.push_back({"dangling-reference", cluster_path + "/vnet",
                     "vnet '" + cluster.vnet + "' not found"});
    }
    for (size_t ni = 0; ni < cluster.namespaces.size(); ++ni) {
      const auto& ns = cluster.namespaces[ni];
      check_unique(out, namespace_names, ns.name,
                   cluster_path + "/namespaces/" + std::to_string(ni));
    }
  }

  std::set<std::string> workload_names;
  std::set<uint32_t> addresses;
  for (size_t wi = 0; wi < t.workloads.size(); ++wi) {
    const auto& w = t.workloads[wi];
    const std::string w_path = "/topology/workloads/" + std::to_string(wi);
    check_unique(out, workload_names, w.ns + "/" + w.name, w_path);
    if (!t.find_namespace(w.ns)) {
      out.push_back({"dangling-reference", w_path + "/namespace",
                     "namespace '" + w.ns + "' not found"});
    }
    const Subnet* subnet = find_subnet(t, w.subnet);
    if (!subnet) {
      out.push_back({"dangling-reference", w_path + "/subnet",
                     "subnet '" + w.subnet + "' not found"});
    } else if (!subnet->cidr.contains(w.address)) {
      out.push_back({"address-out-of-subnet", w_path + "/address",
                     "workload " + w.name + " address " + w.address.str() +
                         " outside subnet " + subnet->name + " " +
                         subnet->cidr.str()});
    }
    if (!addresses.insert(w.address.value).second) {
      out.push_back({"duplicate-address", w_path + "/address",
                     "address " + w.address.str() + " assigned twice"});
    }
    for (const auto& [port, proto] : w.ports) {
      if (port < 1 || port > 65535) {
        out.push_back({"invalid-port", w_path + "/ports",
                       "port " + std::to_string(port) + " out of range"});
      }
    }
  }

  std::set<std::string> service_names;
  for (size_t si = 0; si < t.services.size(); ++si) {
    const auto& svc = t.services[si];
    const std::string svc_path = "/topology/services/" + std::to_string(si);
    check_unique(out, service_names, svc.ns + "/" + svc.name, svc_path);
    if (!t.find_namespace(svc.ns)) {
      out.push_back({"dangling-reference", svc_path + "/namespace",
                     "namespace '" + svc.ns + "' not found"});
    }
    int matched = 0;
    for (const auto& w : t.workloads) {
      if (w.ns != svc.ns || !svc.selector.matches(w.labels)) continue;
      ++matched;
      for (const auto& [svc_port, target_port] : svc.port_map) {
        if (!w.ports.count(target_port)) {
          out.push_back({"port-not-exposed", svc_path + "/ports",
                         "workload " + w.name + " does not expose target port " +
                             std::to_string(target_port)});
        }
      }
    }
    if (matched == 0) {
      out.push_back({"orphan-service", svc_path,
                     "selector of service " + svc.ns + "/" + svc.name +
                         " matches no workload"});
    }
  }

  std::set<std::string> gateway_names;
  for (size_t gi = 0; gi < t.gateways.size(); ++gi) {
    const auto& g = t.gateways[gi];
    const std::string g_path = "/topology/gateways/" + std::to_string(gi);
    check_unique(out, gateway_names, g.name, g_path);
    bool attached = t.find_vnet(g.attachment) != nullptr;
    if (!attached) {
      for (const auto& cluster : t.clusters) {
        if (cluster.name == g.attachment) attached = true;
      }
    }
    if (!attached) {
      out.push_back({"dangling-reference", g_path + "/attachment",
                     "attachment '" + g.attachment + "' not found"});
    }
    for (size_t ei = 0; ei < g.exposes.size(); ++ei) {
      const auto& e = g.exposes[ei];
      auto slash = e.service.find('/');
      const ServiceEndpoint* svc =
          slash == std::string::npos
              ? nullptr
              : t.find_service(e.service.substr(0, slash),
                               e.service.substr(slash + 1));
      if (!svc) {
        out.push_back({"dangling-reference",
                       g_path + "/exposes/" + std::to_string(ei),
                       "service '" + e.service + "' not found"});
      }
    }
  }

  for (size_t pi = 0; pi < t.peerings.size(); ++pi) {
    const auto& [a, b] = t.peerings[pi];
    const std::string p_path = "/topology/peerings/" + std::to_string(pi);
    if (!t.find_vnet(a)) {
      out.push_back({"dangling-reference", p_path, "vnet '" + a + "' not found"});
    }
    if (!t.find_vnet(b)) {
      out.push_back({"dangling-reference", p_path, "vnet '" + b + "' not found"});
    }
  }

  return out;
}

std::vector<ResolvedEndpoint> resolve_service(const Topology& t,
                                              const std::string& service,
                                              const std::string& ns, int port,
                                              ResolveError* error) {
  if (error) *error = {};
  if (!t.find_namespace(ns) && ns != t.mesh_root_namespace) {
    if (error) *error = {"unknown-namespace", "namespace '" + ns + "' not found"};
    return {};
  }
  const ServiceEndpoint* svc = t.find_service(ns, service);
  if (!svc) {
    if (error) {
      *error = {"unknown-service", "service '" + ns + "/" + service + "' not found"};
    }
    return {};
  }
  auto mapped = svc->port_map.find(port);
  if (mapped == svc->port_map.end()) {
    if (error) {
      *error = {"port-not-exposed", "service " + ns + "/" + service +
                                        " does not map port " +
                                        std::to_string(port)};
    }
    return {};
  }
  std::vector<ResolvedEndpoint> out;
  for (const auto& w : t.workloads) {
    if (w.ns == ns && svc->selector.matches(w.labels)) {
      out.push_back({&w, mapped->second});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const ResolvedEndpoint& a, const ResolvedEndpoint& b) {
              return a.workload->name < b.workload->name;
            });
  return out;
}

std::string to_string(Protocol p) {
  return p == Protocol::kTcp ? "TCP" : "HTTP";
}

std::string to_string(RiskTier t) {
  switch (t) {
    case RiskTier::kLow: return "low";
    case RiskTier::kModerate: return "moderate";
    case RiskTier::kHigh: return "high";
  }
  return "moderate";
}

std::string to_string(WorkloadKind k) {
  return k == WorkloadKind::kContainer ? "container" : "vm";
}

std::optional<Protocol> protocol_from_string(const std::string& s) {
  if (s == "TCP") return Protocol::kTcp;
  if (s == "HTTP") return Protocol::kHttp;
  return std::nullopt;
}

std::optional<RiskTier> risk_tier_from_string(const std::string& s) {
  if (s == "low") return RiskTier::kLow;
  if (s == "moderate") return RiskTier::kModerate;
  if (s == "high") return RiskTier::kHigh;
  return std::nullopt;
}

std::optional<WorkloadKind> workload_kind_from_string(const std::string& s) {
  if (s == "container") return WorkloadKind::kContainer;
  if (s == "vm") return WorkloadKind::kVm;
  return std::nullopt;
}

}  // namespace ztsim
