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

#include "ztsim/loader.hpp"

#include <fstream>
#include <set>

namespace ztsim {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ScenarioError(path, message);
}

void check_keys(const json& obj, const std::string& path, bool strict,
                std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  if (!strict) return;
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) {
      if (key == a) known = true;
    }
    if (!known) fail(path + "/" + key, "unknown key '" + key + "'");
  }
}

std::string req_string(const json& obj, const std::string& path,
                       const std::string& key) {
  if (!obj.contains(key)) fail(path, "missing field '" + key + "'");
  if (!obj[key].is_string()) fail(path + "/" + key, "expected a string");
  return obj[key].get<std::string>();
}

std::string opt_string(const json& obj, const std::string& path,
                       const std::string& key, const std::string& def = "") {
  if (!obj.contains(key)) return def;
  if (!obj[key].is_string()) fail(path + "/" + key, "expected a string");
  return obj[key].get<std::string>();
}

int req_int(const json& obj, const std::string& path, const std::string& key) {
  if (!obj.contains(key)) fail(path, "missing field '" + key + "'");
  if (!obj[key].is_number_integer()) fail(path + "/" + key, "expected an integer");
  return obj[key].get<int>();
}

bool opt_bool(const json& obj, const std::string& path, const std::string& key,
              bool def) {
  if (!obj.contains(key)) return def;
  if (!obj[key].is_boolean()) fail(path + "/" + key, "expected a boolean");
  return obj[key].get<bool>();
}

const json& req_array(const json& obj, const std::string& path,
                      const std::string& key) {
  if (!obj.contains(key)) fail(path, "missing field '" + key + "'");
  if (!obj[key].is_array()) fail(path + "/" + key, "expected an array");
  return obj[key];
}

LabelMap parse_labels(const json& obj, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected a string map");
  LabelMap out;
  for (const auto& [key, value] : obj.items()) {
    if (!value.is_string()) fail(path + "/" + key, "expected a string");
    out[key] = value.get<std::string>();
  }
  return out;
}

Cidr parse_cidr(const std::string& text, const std::string& path) {
  auto cidr = Cidr::parse(text);
  if (!cidr) fail(path, "invalid CIDR '" + text + "'");
  return *cidr;
}

Ipv4Addr parse_addr(const std::string& text, const std::string& path) {
  auto addr = Ipv4Addr::parse(text);
  if (!addr) fail(path, "invalid IPv4 address '" + text + "'");
  return *addr;
}

int parse_port_key(const std::string& key, const std::string& path) {
  try {
    size_t idx = 0;
    int port = std::stoi(key, &idx);
    if (idx != key.size()) throw std::invalid_argument(key);
    return port;
  } catch (const std::exception&) {
    fail(path, "invalid port '" + key + "'");
  }
}

// Subnet refs may be full "cloud/vnet/subnet" paths or bare names that
// resolve uniquely; vnet refs likewise as "cloud/vnet" or bare names.
std::string resolve_vnet_ref(const Topology& t, const std::string& ref,
                             const std::string& path) {
  if (ref.find('/') != std::string::npos) {
    if (!t.find_vnet(ref)) fail(path, "vnet '" + ref + "' not found");
    return ref;
  }
  std::string found;
  for (const auto& cloud : t.clouds) {
    for (const auto& vnet : cloud.vnets) {
      if (vnet.name != ref) continue;
      if (!found.empty()) fail(path, "vnet name '" + ref + "' is ambiguous");
      found = cloud.name + "/" + vnet.name;
    }
  }
  if (found.empty()) fail(path, "vnet '" + ref + "' not found");
  return found;
}

std::string resolve_subnet_ref(const Topology& t, const std::string& ref,
                               const std::string& path) {
  if (ref.find('/') != std::string::npos) return ref;  // validated later
  std::string found;
  for (const auto& cloud : t.clouds) {
    for (const auto& vnet : cloud.vnets) {
      for (const auto& subnet : vnet.subnets) {
        if (subnet.name != ref) continue;
        if (!found.empty()) {
          fail(path, "subnet name '" + ref + "' is ambiguous");
        }
        found = cloud.name + "/" + vnet.name + "/" + subnet.name;
      }
    }
  }
  if (found.empty()) fail(path, "subnet '" + ref + "' not found");
  return found;
}

void parse_clouds(Topology& t, const json& arr, const std::string& base,
                  bool strict) {
  for (size_t i = 0; i < arr.size(); ++i) {
    const json& c = arr[i];
    const std::string path = base + "/" + std::to_string(i);
    check_keys(c, path, strict, {"name", "vnets"});
    Cloud cloud;
    cloud.name = req_string(c, path, "name");
    for (size_t vi = 0; c.contains("vnets") && vi < c["vnets"].size(); ++vi) {
      const json& v = c["vnets"][vi];
      const std::string v_path = path + "/vnets/" + std::to_string(vi);
      check_keys(v, v_path, strict,
                 {"name", "cidr", "business_function", "subnets"});
      VirtualNetwork vnet;
      vnet.name = req_string(v, v_path, "name");
      vnet.cidr = parse_cidr(req_string(v, v_path, "cidr"), v_path + "/cidr");
      vnet.business_function = opt_string(v, v_path, "business_function");
      for (size_t si = 0; v.contains("subnets") && si < v["subnets"].size();
           ++si) {
        const json& s = v["subnets"][si];
        const std::string s_path = v_path + "/subnets/" + std::to_string(si);
        check_keys(s, s_path, strict, {"name", "cidr"});
        Subnet subnet;
        subnet.name = req_string(s, s_path, "name");
        subnet.cidr =
            parse_cidr(req_string(s, s_path, "cidr"), s_path + "/cidr");
        vnet.subnets.push_back(std::move(subnet));
      }
      cloud.vnets.push_back(std::move(vnet));
    }
    t.clouds.push_back(std::move(cloud));
  }
}

void parse_clusters(Topology& t, const json& arr, const std::string& base,
                    bool strict) {
  for (size_t i = 0; i < arr.size(); ++i) {
    const json& c = arr[i];
    const std::string path = base + "/" + std::to_string(i);
    check_keys(c, path, strict, {"name", "vnet", "risk_tier", "namespaces"});
    Cluster cluster;
    cluster.name = req_string(c, path, "name");
    cluster.vnet =
        resolve_vnet_ref(t, req_string(c, path, "vnet"), path + "/vnet");
    const std::string tier = opt_string(c, path, "risk_tier", "moderate");
    auto parsed_tier = risk_tier_from_string(tier);
    if (!parsed_tier) fail(path + "/risk_tier", "invalid risk tier '" + tier + "'");
    cluster.risk_tier = *parsed_tier;
    for (size_t ni = 0;
         c.contains("namespaces") && ni < c["namespaces"].size(); ++ni) {
      const json& n = c["namespaces"][ni];
      const std::string n_path = path + "/namespaces/" + std::to_string(ni);
      check_keys(n, n_path, strict, {"name", "labels", "sidecar_injection"});
      Namespace ns;
      ns.name = req_string(n, n_path, "name");
      ns.cluster = cluster.name;
      if (n.contains("labels")) {
        ns.labels = parse_labels(n["labels"], n_path + "/labels");
      }
      ns.sidecar_injection_default =
          opt_bool(n, n_path, "sidecar_injection", false);
      cluster.namespaces.push_back(std::move(ns));
    }
    t.clusters.push_back(std::move(cluster));
  }
}

void parse_workloads(Topology& t, const json& arr, const std::string& base,
                     bool strict) {
  for (size_t i = 0; i < arr.size(); ++i) {
    const json& w = arr[i];
    const std::string path = base + "/" + std::to_string(i);
    check_keys(w, path, strict,
               {"name", "kind", "namespace", "subnet", "address", "labels",
                "service_account", "ports", "sidecar"});
    Workload workload;
    workload.name = req_string(w, path, "name");
    const std::string kind = opt_string(w, path, "kind", "container");
    auto parsed_kind = workload_kind_from_string(kind);
    if (!parsed_kind) fail(path + "/kind", "invalid kind '" + kind + "'");
    workload.kind = *parsed_kind;
    workload.ns = req_string(w, path, "namespace");
    workload.subnet = resolve_subnet_ref(t, req_string(w, path, "subnet"),
                                         path + "/subnet");
    workload.address =
        parse_addr(req_string(w, path, "address"), path + "/address");
    if (w.contains("labels")) {
      workload.labels = parse_labels(w["labels"], path + "/labels");
    }
    workload.service_account = req_string(w, path, "service_account");
    if (w.contains("ports")) {
      if (!w["ports"].is_object()) fail(path + "/ports", "expected a map");
      for (const auto& [key, value] : w["ports"].items()) {
        const int port = parse_port_key(key, path + "/ports");
        if (!value.is_string()) fail(path + "/ports/" + key, "expected a string");
        auto proto = protocol_from_string(value.get<std::string>());
        if (!proto) {
          fail(path + "/ports/" + key,
               "invalid protocol '" + value.get<std::string>() + "'");
        }
        workload.ports[port] = *proto;
      }
    }
    workload.sidecar = opt_bool(w, path, "sidecar", false);
    t.workloads.push_back(std::move(workload));
  }
}

void parse_services(Topology& t, const json& arr, const std::string& base,
                    bool strict) {
  for (size_t i = 0; i < arr.size(); ++i) {
    const json& s = arr[i];
    const std::string path = base + "/" + std::to_string(i);
    check_keys(s, path, strict, {"name", "namespace", "selector", "ports"});
    ServiceEndpoint svc;
    svc.name = req_string(s, path, "name");
    svc.ns = req_string(s, path, "namespace");
    if (s.contains("selector")) {
      svc.selector.match_labels = parse_labels(s["selector"], path + "/selector");
    }
    if (!s.contains("ports") || !s["ports"].is_object()) {
      fail(path, "missing 'ports' map");
    }
    for (const auto& [key, value] : s["ports"].items()) {
      const int port = parse_port_key(key, path + "/ports");
      if (!value.is_number_integer()) {
        fail(path + "/ports/" + key, "expected an integer target port");
      }
      svc.port_map[port] = value.get<int>();
    }
    t.services.push_back(std::move(svc));
  }
}

void parse_gateways(Topology& t, const json& arr, const std::string& base,
                    bool strict) {
  for (size_t i = 0; i < arr.size(); ++i) {
    const json& g = arr[i];
    const std::string path = base + "/" + std::to_string(i);
    check_keys(g, path, strict,
               {"name", "kind", "attachment", "exposes",
                "allowed_destinations", "encrypts"});
    Gateway gw;
    gw.name = req_string(g, path, "name");
    const std::string kind = req_string(g, path, "kind");
    if (kind == "ingress") {
      gw.kind = GatewayKind::kIngress;
    } else if (kind == "egress") {
      gw.kind = GatewayKind::kEgress;
    } else if (kind == "api") {
      gw.kind = GatewayKind::kApi;
    } else {
      fail(path + "/kind", "invalid gateway kind '" + kind + "'");
    }
    gw.attachment = req_string(g, path, "attachment");
    if (gw.attachment.find('/') != std::string::npos ||
        t.find_vnet(gw.attachment)) {
      // leave vnet paths as-is; cluster names are plain
    }
    for (size_t ei = 0; g.contains("exposes") && ei < g["exposes"].size();
         ++ei) {
      const json& e = g["exposes"][ei];
      const std::string e_path = path + "/exposes/" + std::to_string(ei);
      check_keys(e, e_path, strict, {"host", "path", "service", "port"});
      GatewayExpose expose;
      expose.host = opt_string(e, e_path, "host");
      expose.path = opt_string(e, e_path, "path", "/");
      expose.service = req_string(e, e_path, "service");
      expose.port = req_int(e, e_path, "port");
      gw.exposes.push_back(std::move(expose));
    }
    if (g.contains("allowed_destinations")) {
      for (const auto& h : g["allowed_destinations"]) {
        if (!h.is_string()) {
          fail(path + "/allowed_destinations", "expected strings");
        }
        gw.allowed_destinations.push_back(h.get<std::string>());
      }
    }
    gw.encrypts = opt_bool(g, path, "encrypts", false);
    t.gateways.push_back(std::move(gw));
  }
}

void parse_perimeter(Topology& t, const json& p, const std::string& base,
                     bool strict) {
  check_keys(p, base, strict, {"default_action", "sdp_rules"});
  const std::string def = opt_string(p, base, "default_action", "Deny");
  if (def != "Deny") {
    fail(base + "/default_action",
         "perimeter default action must be Deny");
  }
  if (!p.contains("sdp_rules")) return;
  const json& rules = p["sdp_rules"];
  if (!rules.is_array()) fail(base + "/sdp_rules", "expected an array");
  for (size_t i = 0; i < rules.size(); ++i) {
    const json& r = rules[i];
    const std::string path = base + "/sdp_rules/" + std::to_string(i);
    check_keys(r, path, strict, {"action", "direction", "host", "cidr", "port"});
    SdpRule rule;
    const std::string action = req_string(r, path, "action");
    if (action == "Allow") {
      rule.action = SdpRule::Action::kAllow;
    } else if (action == "Deny") {
      rule.action = SdpRule::Action::kDeny;
    } else {
      fail(path + "/action", "invalid action '" + action + "'");
    }
    const std::string dir = req_string(r, path, "direction");
    if (dir == "inbound") {
      rule.direction = SdpDirection::kInbound;
    } else if (dir == "outbound") {
      rule.direction = SdpDirection::kOutbound;
    } else {
      fail(path + "/direction", "invalid direction '" + dir + "'");
    }
    if (r.contains("host")) rule.host = req_string(r, path, "host");
    if (r.contains("cidr")) {
      rule.cidr = parse_cidr(req_string(r, path, "cidr"), path + "/cidr");
    }
    if (r.contains("port")) rule.port = req_int(r, path, "port");
    t.perimeter.sdp_rules.push_back(std::move(rule));
  }
}

std::vector<L34Rule> parse_l34_rules(const json& arr, const std::string& base,
                                     bool strict) {
  std::vector<L34Rule> out;
  for (size_t i = 0; i < arr.size(); ++i) {
    const json& r = arr[i];
    const std::string path = base + "/" + std::to_string(i);
    check_keys(r, path, strict, {"action", "protocol", "ports", "peer"});
    L34Rule rule;
    const std::string action = req_string(r, path, "action");
    if (action == "Allow") {
      rule.action = L34Rule::Action::kAllow;
    } else if (action == "Deny") {
      rule.action = L34Rule::Action::kDeny;
    } else {
      fail(path + "/action", "invalid action '" + action + "'");
    }
    if (r.contains("protocol")) {
      auto proto = protocol_from_string(req_string(r, path, "protocol"));
      if (!proto) fail(path + "/protocol", "invalid protocol");
      rule.protocol = proto;
    }
    if (r.contains("ports")) {
      if (!r["ports"].is_array()) fail(path + "/ports", "expected an array");
      std::vector<PortRange> ranges;
      for (const auto& p : r["ports"]) {
        PortRange range;
        if (p.is_number_integer()) {
          range.lo = range.hi = p.get<int>();
        } else if (p.is_string()) {
          const std::string text = p.get<std::string>();
          auto dash = text.find('-');
          if (dash == std::string::npos) {
            range.lo = range.hi = parse_port_key(text, path + "/ports");
          } else {
            range.lo = parse_port_key(text.substr(0, dash), path + "/ports");
            range.hi = parse_port_key(text.substr(dash + 1), path + "/ports");
          }
        } else {
          fail(path + "/ports", "expected port numbers or ranges");
        }
        if (range.lo < 1 || range.hi > 65535 || range.lo > range.hi) {
          fail(path + "/ports", "port range out of bounds");
        }
        ranges.push_back(range);
      }
      rule.ports = std::move(ranges);
    }
    if (r.contains("peer")) {
      const json& peer = r["peer"];
      const std::string p_path = path + "/peer";
      check_keys(peer, p_path, strict, {"cidr", "selector", "namespaces"});
      if (peer.contains("cidr")) {
        rule.peer.cidr =
            parse_cidr(req_string(peer, p_path, "cidr"), p_path + "/cidr");
      }
      if (peer.contains("selector")) {
        LabelSelector sel;
        sel.match_labels = parse_labels(peer["selector"], p_path + "/selector");
        rule.peer.selector = sel;
      }
      if (peer.contains("namespaces")) {
        if (!peer["namespaces"].is_array()) {
          fail(p_path + "/namespaces", "expected an array");
        }
        std::set<std::string> names;
        for (const auto& n : peer["namespaces"]) {
          if (!n.is_string()) fail(p_path + "/namespaces", "expected strings");
          names.insert(n.get<std::string>());
        }
        rule.peer.namespaces = std::move(names);
      }
    }
    out.push_back(std::move(rule));
  }
  return out;
}

void parse_policies(Scenario& s, const json& p, const std::string& base,
                    bool strict) {
  check_keys(p, base, strict, {"l3l4", "peer_auth", "authz"});

  if (p.contains("l3l4")) {
    const json& arr = p["l3l4"];
    if (!arr.is_array()) fail(base + "/l3l4", "expected an array");
    for (size_t i = 0; i < arr.size(); ++i) {
      const json& pol = arr[i];
      const std::string path = base + "/l3l4/" + std::to_string(i);
      check_keys(pol, path, strict,
                 {"name", "namespace", "order", "selector", "ingress",
                  "egress"});
      NetworkPolicyL34 policy;
      policy.name = req_string(pol, path, "name");
      policy.ns = opt_string(pol, path, "namespace");  // empty ⇒ global
      if (pol.contains("order")) {
        if (!pol["order"].is_number()) fail(path + "/order", "expected a number");
        policy.order = pol["order"].get<double>();
      }
      if (pol.contains("selector")) {
        policy.selector.match_labels =
            parse_labels(pol["selector"], path + "/selector");
      }
      if (pol.contains("ingress")) {
        if (!pol["ingress"].is_array()) fail(path + "/ingress", "expected an array");
        policy.ingress_rules =
            parse_l34_rules(pol["ingress"], path + "/ingress", strict);
      }
      if (pol.contains("egress")) {
        if (!pol["egress"].is_array()) fail(path + "/egress", "expected an array");
        policy.egress_rules =
            parse_l34_rules(pol["egress"], path + "/egress", strict);
      }
      s.policies.l3l4.push_back(std::move(policy));
    }
  }

  if (p.contains("peer_auth")) {
    const json& arr = p["peer_auth"];
    if (!arr.is_array()) fail(base + "/peer_auth", "expected an array");
    for (size_t i = 0; i < arr.size(); ++i) {
      const json& pol = arr[i];
      const std::string path = base + "/peer_auth/" + std::to_string(i);
      check_keys(pol, path, strict,
                 {"name", "namespace", "selector", "mode", "port_overrides"});
      PeerAuthPolicy policy;
      policy.name = req_string(pol, path, "name");
      policy.ns = req_string(pol, path, "namespace");
      if (pol.contains("selector")) {
        LabelSelector sel;
        sel.match_labels = parse_labels(pol["selector"], path + "/selector");
        policy.selector = sel;
      }
      auto mode = peer_auth_mode_from_string(req_string(pol, path, "mode"));
      if (!mode) fail(path + "/mode", "invalid mode");
      policy.mode = *mode;
      if (pol.contains("port_overrides")) {
        if (!pol["port_overrides"].is_object()) {
          fail(path + "/port_overrides", "expected a map");
        }
        for (const auto& [key, value] : pol["port_overrides"].items()) {
          const int port = parse_port_key(key, path + "/port_overrides");
          if (!value.is_string()) {
            fail(path + "/port_overrides/" + key, "expected a string");
          }
          auto m = peer_auth_mode_from_string(value.get<std::string>());
          if (!m) fail(path + "/port_overrides/" + key, "invalid mode");
          policy.port_overrides[port] = *m;
        }
      }
      s.policies.peer_auth.push_back(std::move(policy));
    }
    // At most one selector-less policy per namespace.
    std::set<std::string> defaults;
    for (const auto& policy : s.policies.peer_auth) {
      if (policy.selector) continue;
      if (!defaults.insert(policy.ns).second) {
        fail(base + "/peer_auth",
             "multiple selector-less peer-auth policies in namespace '" +
                 policy.ns + "'");
      }
    }
  }

  if (p.contains("authz")) {
    const json& arr = p["authz"];
    if (!arr.is_array()) fail(base + "/authz", "expected an array");
    for (size_t i = 0; i < arr.size(); ++i) {
      const json& pol = arr[i];
      const std::string path = base + "/authz/" + std::to_string(i);
      check_keys(pol, path, strict,
                 {"name", "namespace", "selector", "action", "rules"});
      AuthorizationPolicy policy;
      policy.name = req_string(pol, path, "name");
      policy.ns = req_string(pol, path, "namespace");
      if (pol.contains("selector")) {
        LabelSelector sel;
        sel.match_labels = parse_labels(pol["selector"], path + "/selector");
        policy.selector = sel;
      }
      const std::string action = opt_string(pol, path, "action", "ALLOW");
      if (action == "ALLOW") {
        policy.action = AuthorizationPolicy::Action::kAllow;
      } else if (action == "DENY") {
        policy.action = AuthorizationPolicy::Action::kDeny;
      } else {
        fail(path + "/action", "invalid action '" + action + "'");
      }
      if (pol.contains("rules")) {
        if (!pol["rules"].is_array()) fail(path + "/rules", "expected an array");
        for (size_t ri = 0; ri < pol["rules"].size(); ++ri) {
          const json& r = pol["rules"][ri];
          const std::string r_path = path + "/rules/" + std::to_string(ri);
          check_keys(r, r_path, strict,
                     {"from_principals", "from_namespaces", "to_ports",
                      "to_methods", "to_paths"});
          AuthzRule rule;
          auto string_set = [&](const char* key)
              -> std::optional<std::set<std::string>> {
            if (!r.contains(key)) return std::nullopt;
            if (!r[key].is_array()) fail(r_path, "expected an array");
            std::set<std::string> out;
            for (const auto& v : r[key]) {
              if (!v.is_string()) fail(r_path, "expected strings");
              out.insert(v.get<std::string>());
            }
            return out;
          };
          rule.from_principals = string_set("from_principals");
          rule.from_namespaces = string_set("from_namespaces");
          if (r.contains("to_ports")) {
            std::set<int> ports;
            for (const auto& v : r["to_ports"]) {
              if (!v.is_number_integer()) {
                fail(r_path + "/to_ports", "expected integers");
              }
              ports.insert(v.get<int>());
            }
            rule.to_ports = std::move(ports);
          }
          rule.to_methods = string_set("to_methods");
          rule.to_paths = string_set("to_paths");
          policy.rules.push_back(std::move(rule));
        }
      }
      s.policies.authz.push_back(std::move(policy));
    }
  }
}

void parse_requests(Scenario& s, const json& reqs, const std::string& base,
                    bool strict) {
  if (!reqs.is_object()) fail(base, "expected an object of named requests");
  for (const auto& [name, r] : reqs.items()) {
    const std::string path = base + "/" + name;
    check_keys(r, path, strict,
               {"from", "to", "port", "protocol", "method", "path"});
    ConnectionRequest req;
    const std::string from = req_string(r, path, "from");
    if (from == "internet") {
      req.origin = ConnectionRequest::Origin::kInternet;
    } else {
      auto slash = from.find('/');
      if (slash == std::string::npos) {
        fail(path + "/from", "expected 'namespace/workload' or 'internet'");
      }
      req.source_ns = from.substr(0, slash);
      req.source_workload = from.substr(slash + 1);
    }
    const std::string to = req_string(r, path, "to");
    auto slash = to.find('/');
    if (slash != std::string::npos &&
        (s.topology.find_namespace(to.substr(0, slash)) ||
         to.substr(0, slash) == s.topology.mesh_root_namespace)) {
      req.dest_ns = to.substr(0, slash);
      req.dest_service = to.substr(slash + 1);
    } else {
      req.dest_literal = to;
    }
    req.port = req_int(r, path, "port");
    const std::string proto = opt_string(r, path, "protocol", "HTTP");
    auto parsed = protocol_from_string(proto);
    if (!parsed) fail(path + "/protocol", "invalid protocol");
    req.protocol = *parsed;
    if (r.contains("method")) req.method = req_string(r, path, "method");
    if (r.contains("path")) req.path = req_string(r, path, "path");
    if (req.protocol == Protocol::kHttp) {
      if (!req.method) req.method = "GET";
      if (!req.path) req.path = "/";
    }
    s.requests[name] = std::move(req);
  }
}

}  // namespace

Scenario load_scenario(const json& document, bool strict) {
  if (!document.is_object()) fail("/", "scenario document must be an object");
  check_keys(document, "/", strict,
             {"topology", "policies", "perimeter", "requests"});
  Scenario s;

  if (document.contains("topology")) {
    const json& topo = document["topology"];
    check_keys(topo, "/topology", strict,
               {"mesh_root_namespace", "trust_domain", "clouds", "peerings",
                "clusters", "workloads", "services", "gateways"});
    s.topology.mesh_root_namespace =
        opt_string(topo, "/topology", "mesh_root_namespace", "istio-system");
    s.topology.trust_domain =
        opt_string(topo, "/topology", "trust_domain", "cluster.local");
    if (topo.contains("clouds")) {
      parse_clouds(s.topology, req_array(topo, "/topology", "clouds"),
                   "/topology/clouds", strict);
    }
    if (topo.contains("peerings")) {
      const json& arr = topo["peerings"];
      if (!arr.is_array()) fail("/topology/peerings", "expected an array");
      for (size_t i = 0; i < arr.size(); ++i) {
        const std::string path = "/topology/peerings/" + std::to_string(i);
        if (!arr[i].is_array() || arr[i].size() != 2) {
          fail(path, "expected a pair of vnet refs");
        }
        s.topology.peerings.emplace_back(
            resolve_vnet_ref(s.topology, arr[i][0].get<std::string>(), path),
            resolve_vnet_ref(s.topology, arr[i][1].get<std::string>(), path));
      }
    }
    if (topo.contains("clusters")) {
      parse_clusters(s.topology, req_array(topo, "/topology", "clusters"),
                     "/topology/clusters", strict);
    }
    if (topo.contains("workloads")) {
      parse_workloads(s.topology, req_array(topo, "/topology", "workloads"),
                      "/topology/workloads", strict);
    }
    if (topo.contains("services")) {
      parse_services(s.topology, req_array(topo, "/topology", "services"),
                     "/topology/services", strict);
    }
    if (topo.contains("gateways")) {
      parse_gateways(s.topology, req_array(topo, "/topology", "gateways"),
                     "/topology/gateways", strict);
    }
  }

  if (document.contains("perimeter")) {
    parse_perimeter(s.topology, document["perimeter"], "/perimeter", strict);
  }
  if (document.contains("policies")) {
    parse_policies(s, document["policies"], "/policies", strict);
  }
  if (document.contains("requests")) {
    parse_requests(s, document["requests"], "/requests", strict);
  }
  return s;
}

Scenario load_scenario_text(const std::string& text, bool strict) {
  json document;
  try {
    document = json::parse(text);
  } catch (const json::parse_error& e) {
    fail("/", std::string("invalid JSON: ") + e.what());
  }
  return load_scenario(document, strict);
}

Scenario load_scenario_file(const std::string& path, bool strict) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read file '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return load_scenario_text(text, strict);
}

Scenario load_scenario_checked(const json& document, bool strict) {
  Scenario s = load_scenario(document, strict);
  const auto violations = validate_topology(s.topology);
  if (!violations.empty()) {
    fail(violations.front().path,
         violations.front().rule + ": " + violations.front().message);
  }
  return s;
}

namespace {

ordered_json labels_json(const LabelMap& labels) {
  ordered_json out = ordered_json::object();
  for (const auto& [k, v] : labels) out[k] = v;
  return out;
}

ordered_json l34_rules_json(const std::vector<L34Rule>& rules) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : rules) {
    ordered_json rj;
    rj["action"] = r.action == L34Rule::Action::kAllow ? "Allow" : "Deny";
    if (r.protocol) rj["protocol"] = to_string(*r.protocol);
    if (r.ports) {
      ordered_json ports = ordered_json::array();
      for (const auto& range : *r.ports) {
        if (range.lo == range.hi) {
          ports.push_back(range.lo);
        } else {
          ports.push_back(std::to_string(range.lo) + "-" +
                          std::to_string(range.hi));
        }
      }
      rj["ports"] = ports;
    }
    if (r.peer.cidr || r.peer.selector || r.peer.namespaces) {
      ordered_json peer = ordered_json::object();
      if (r.peer.cidr) peer["cidr"] = r.peer.cidr->str();
      if (r.peer.selector) {
        peer["selector"] = labels_json(r.peer.selector->match_labels);
      }
      if (r.peer.namespaces) {
        peer["namespaces"] = *r.peer.namespaces;
      }
      rj["peer"] = peer;
    }
    arr.push_back(rj);
  }
  return arr;
}

}  // namespace

ordered_json serialize_scenario(const Scenario& s) {
  ordered_json doc;
  ordered_json topo;
  topo["mesh_root_namespace"] = s.topology.mesh_root_namespace;
  topo["trust_domain"] = s.topology.trust_domain;

  ordered_json clouds = ordered_json::array();
  for (const auto& cloud : s.topology.clouds) {
    ordered_json cj;
    cj["name"] = cloud.name;
    ordered_json vnets = ordered_json::array();
    for (const auto& vnet : cloud.vnets) {
      ordered_json vj;
      vj["name"] = vnet.name;
      vj["cidr"] = vnet.cidr.str();
      if (!vnet.business_function.empty()) {
        vj["business_function"] = vnet.business_function;
      }
      ordered_json subnets = ordered_json::array();
      for (const auto& subnet : vnet.subnets) {
        subnets.push_back({{"name", subnet.name}, {"cidr", subnet.cidr.str()}});
      }
      vj["subnets"] = subnets;
      vnets.push_back(vj);
    }
    cj["vnets"] = vnets;
    clouds.push_back(cj);
  }
  topo["clouds"] = clouds;

  if (!s.topology.peerings.empty()) {
    ordered_json peerings = ordered_json::array();
    for (const auto& [a, b] : s.topology.peerings) {
      peerings.push_back(ordered_json::array({a, b}));
    }
    topo["peerings"] = peerings;
  }

  ordered_json clusters = ordered_json::array();
  for (const auto& cluster : s.topology.clusters) {
    ordered_json cj;
    cj["name"] = cluster.name;
    cj["vnet"] = cluster.vnet;
    cj["risk_tier"] = to_string(cluster.risk_tier);
    ordered_json namespaces = ordered_json::array();
    for (const auto& ns : cluster.namespaces) {
      ordered_json nj;
      nj["name"] = ns.name;
      if (!ns.labels.empty()) nj["labels"] = labels_json(ns.labels);
      nj["sidecar_injection"] = ns.sidecar_injection_default;
      namespaces.push_back(nj);
    }
    cj["namespaces"] = namespaces;
    clusters.push_back(cj);
  }
  topo["clusters"] = clusters;

  ordered_json workloads = ordered_json::array();
  for (const auto& w : s.topology.workloads) {
    ordered_json wj;
    wj["name"] = w.name;
    wj["kind"] = to_string(w.kind);
    wj["namespace"] = w.ns;
    wj["subnet"] = w.subnet;
    wj["address"] = w.address.str();
    if (!w.labels.empty()) wj["labels"] = labels_json(w.labels);
    wj["service_account"] = w.service_account;
    ordered_json ports = ordered_json::object();
    for (const auto& [port, proto] : w.ports) {
      ports[std::to_string(port)] = to_string(proto);
    }
    wj["ports"] = ports;
    wj["sidecar"] = w.sidecar;
    workloads.push_back(wj);
  }
  topo["workloads"] = workloads;

  ordered_json services = ordered_json::array();
  for (const auto& svc : s.topology.services) {
    ordered_json sj;
    sj["name"] = svc.name;
    sj["namespace"] = svc.ns;
    sj["selector"] = labels_json(svc.selector.match_labels);
    ordered_json ports = ordered_json::object();
    for (const auto& [port, target] : svc.port_map) {
      ports[std::to_string(port)] = target;
    }
    sj["ports"] = ports;
    services.push_back(sj);
  }
  topo["services"] = services;

  if (!s.topology.gateways.empty()) {
    ordered_json gateways = ordered_json::array();
    for (const auto& g : s.topology.gateways) {
      ordered_json gj;
      gj["name"] = g.name;
      gj["kind"] = g.kind == GatewayKind::kIngress   ? "ingress"
                   : g.kind == GatewayKind::kEgress  ? "egress"
                                                     : "api";
      gj["attachment"] = g.attachment;
      if (!g.exposes.empty()) {
        ordered_json exposes = ordered_json::array();
        for (const auto& e : g.exposes) {
          ordered_json ej;
          if (!e.host.empty()) ej["host"] = e.host;
          ej["path"] = e.path;
          ej["service"] = e.service;
          ej["port"] = e.port;
          exposes.push_back(ej);
        }
        gj["exposes"] = exposes;
      }
      if (!g.allowed_destinations.empty()) {
        gj["allowed_destinations"] = g.allowed_destinations;
      }
      if (g.encrypts) gj["encrypts"] = true;
      gateways.push_back(gj);
    }
    topo["gateways"] = gateways;
  }
  doc["topology"] = topo;

  ordered_json policies;
  ordered_json l3l4 = ordered_json::array();
  for (const auto& p : s.policies.l3l4) {
    ordered_json pj;
    pj["name"] = p.name;
    if (!p.ns.empty()) pj["namespace"] = p.ns;
    pj["order"] = p.order;
    if (!p.selector.match_labels.empty()) {
      pj["selector"] = labels_json(p.selector.match_labels);
    }
    if (p.ingress_rules) pj["ingress"] = l34_rules_json(*p.ingress_rules);
    if (p.egress_rules) pj["egress"] = l34_rules_json(*p.egress_rules);
    l3l4.push_back(pj);
  }
  policies["l3l4"] = l3l4;

  ordered_json peer_auth = ordered_json::array();
  for (const auto& p : s.policies.peer_auth) {
    ordered_json pj;
    pj["name"] = p.name;
    pj["namespace"] = p.ns;
    if (p.selector) pj["selector"] = labels_json(p.selector->match_labels);
    pj["mode"] = to_string(p.mode);
    if (!p.port_overrides.empty()) {
      ordered_json overrides = ordered_json::object();
      for (const auto& [port, mode] : p.port_overrides) {
        overrides[std::to_string(port)] = to_string(mode);
      }
      pj["port_overrides"] = overrides;
    }
    peer_auth.push_back(pj);
  }
  policies["peer_auth"] = peer_auth;

  ordered_json authz = ordered_json::array();
  for (const auto& p : s.policies.authz) {
    ordered_json pj;
    pj["name"] = p.name;
    pj["namespace"] = p.ns;
    if (p.selector) pj["selector"] = labels_json(p.selector->match_labels);
    pj["action"] =
        p.action == AuthorizationPolicy::Action::kAllow ? "ALLOW" : "DENY";
    ordered_json rules = ordered_json::array();
    for (const auto& r : p.rules) {
      ordered_json rj = ordered_json::object();
      if (r.from_principals) rj["from_principals"] = *r.from_principals;
      if (r.from_namespaces) rj["from_namespaces"] = *r.from_namespaces;
      if (r.to_ports) rj["to_ports"] = *r.to_ports;
      if (r.to_methods) rj["to_methods"] = *r.to_methods;
      if (r.to_paths) rj["to_paths"] = *r.to_paths;
      rules.push_back(rj);
    }
    pj["rules"] = rules;
    authz.push_back(pj);
  }
  policies["authz"] = authz;
  doc["policies"] = policies;

  ordered_json perimeter;
  perimeter["default_action"] = "Deny";
  ordered_json sdp_rules = ordered_json::array();
  for (const auto& r : s.topology.perimeter.sdp_rules) {
    ordered_json rj;
    rj["action"] = r.action == SdpRule::Action::kAllow ? "Allow" : "Deny";
    rj["direction"] =
        r.direction == SdpDirection::kInbound ? "inbound" : "outbound";
    if (r.host) rj["host"] = *r.host;
    if (r.cidr) rj["cidr"] = r.cidr->str();
    if (r.port) rj["port"] = *r.port;
    sdp_rules.push_back(rj);
  }
  perimeter["sdp_rules"] = sdp_rules;
  doc["perimeter"] = perimeter;

  ordered_json requests = ordered_json::object();
  for (const auto& [name, req] : s.requests) {
    ordered_json rj;
    rj["from"] = req.origin == ConnectionRequest::Origin::kInternet
                     ? "internet"
                     : req.source_ns + "/" + req.source_workload;
    rj["to"] = req.dest_service.empty()
                   ? req.dest_literal
                   : req.dest_ns + "/" + req.dest_service;
    rj["port"] = req.port;
    rj["protocol"] = to_string(req.protocol);
    if (req.method) rj["method"] = *req.method;
    if (req.path) rj["path"] = *req.path;
    requests[name] = rj;
  }
  doc["requests"] = requests;

  return doc;
}

}  // namespace ztsim
