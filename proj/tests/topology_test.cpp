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

#include <gtest/gtest.h>

#include "support/fixtures.hpp"
#include "ztsim/loader.hpp"

namespace ztsim {
namespace {

using test::load_fixture;

bool has_violation(const std::vector<Violation>& vs, const std::string& rule) {
  return std::any_of(vs.begin(), vs.end(),
                     [&](const Violation& v) { return v.rule == rule; });
}

TEST(TopologyTest, MinimalFixtureIsValid) {
  const Scenario s = load_fixture("minimal.json");
  EXPECT_TRUE(validate_topology(s.topology).empty());
  EXPECT_EQ(s.topology.workloads.size(), 2u);
  EXPECT_EQ(s.topology.services.size(), 1u);
}

TEST(TopologyTest, DemoFixtureShape) {
  const Scenario s = load_fixture("demo2_pre.json");
  EXPECT_TRUE(validate_topology(s.topology).empty());
  EXPECT_EQ(s.topology.workloads.size(), 6u);
  ASSERT_EQ(s.topology.clusters.size(), 1u);
  EXPECT_EQ(s.topology.clusters[0].namespaces.size(), 3u);

  const Workload* w = s.topology.find_workload("bar", "httpbin");
  ASSERT_NE(w, nullptr);
  EXPECT_TRUE(w->sidecar);
  EXPECT_EQ(w->address.str(), "10.0.1.12");
  EXPECT_EQ(s.topology.vnet_of(*w), "lab/vnet1");

  const Namespace* legacy = s.topology.find_namespace("legacy");
  ASSERT_NE(legacy, nullptr);
  EXPECT_FALSE(legacy->sidecar_injection_default);
}

TEST(TopologyTest, SortedWorkloadsAreDeterministic) {
  const Scenario s = load_fixture("demo2_pre.json");
  const auto sorted = s.topology.sorted_workloads();
  ASSERT_EQ(sorted.size(), 6u);
  std::vector<std::string> ids;
  for (const Workload* w : sorted) ids.push_back(w->ns + "/" + w->name);
  std::vector<std::string> expected = {"bar/httpbin",    "bar/sleep",
                                       "foo/httpbin",    "foo/sleep",
                                       "legacy/httpbin", "legacy/sleep"};
  EXPECT_EQ(ids, expected);
}

TEST(TopologyTest, AddressOutsideSubnet) {
  Scenario s = load_fixture("minimal.json");
  s.topology.workloads[0].address = *Ipv4Addr::parse("10.200.0.1");
  const auto violations = validate_topology(s.topology);
  EXPECT_TRUE(has_violation(violations, "address-out-of-subnet"));
}

TEST(TopologyTest, DuplicateAddress) {
  Scenario s = load_fixture("minimal.json");
  s.topology.workloads[1].address = s.topology.workloads[0].address;
  EXPECT_TRUE(has_violation(validate_topology(s.topology), "duplicate-address"));
}

TEST(TopologyTest, DuplicateWorkloadIdentifier) {
  Scenario s = load_fixture("minimal.json");
  s.topology.workloads[1].name = s.topology.workloads[0].name;
  s.topology.workloads[1].address = *Ipv4Addr::parse("10.0.1.99");
  EXPECT_TRUE(
      has_violation(validate_topology(s.topology), "duplicate-identifier"));
}

TEST(TopologyTest, DanglingSubnetReference) {
  Scenario s = load_fixture("minimal.json");
  s.topology.workloads[0].subnet = "no/such/subnet";
  EXPECT_TRUE(
      has_violation(validate_topology(s.topology), "dangling-reference"));
}

TEST(TopologyTest, SubnetOutsideVnet) {
  Scenario s = load_fixture("minimal.json");
  s.topology.clouds[0].vnets[0].subnets[0].cidr = *Cidr::parse("192.168.0.0/24");
  EXPECT_TRUE(
      has_violation(validate_topology(s.topology), "subnet-outside-vnet"));
}

TEST(TopologyTest, SubnetCidrOverlap) {
  Scenario s = load_fixture("minimal.json");
  s.topology.clouds[0].vnets[0].subnets.push_back(
      {"s2", *Cidr::parse("10.1.1.128/25")});
  EXPECT_TRUE(has_violation(validate_topology(s.topology), "cidr-overlap"));
}

TEST(TopologyTest, OrphanService) {
  const Scenario s = load_fixture("bad_orphan.json");
  const auto violations = validate_topology(s.topology);
  ASSERT_TRUE(has_violation(violations, "orphan-service"));
  EXPECT_THROW(
      load_scenario_checked(
          nlohmann::json::parse(serialize_scenario(s).dump())),
      ScenarioError);
}

TEST(TopologyTest, InvalidPort) {
  Scenario s = load_fixture("minimal.json");
  s.topology.workloads[0].ports[70000] = Protocol::kTcp;
  EXPECT_TRUE(has_violation(validate_topology(s.topology), "invalid-port"));
}

TEST(TopologyTest, ResolveServiceHappyPath) {
  const Scenario s = load_fixture("demo2_pre.json");
  const auto eps = resolve_service(s.topology, "httpbin", "bar", 8000);
  ASSERT_EQ(eps.size(), 1u);
  EXPECT_EQ(eps[0].workload->ns, "bar");
  EXPECT_EQ(eps[0].workload->name, "httpbin");
  EXPECT_EQ(eps[0].target_port, 8000);
}

TEST(TopologyTest, ResolveServiceErrors) {
  const Scenario s = load_fixture("demo2_pre.json");
  ResolveError err;

  EXPECT_TRUE(resolve_service(s.topology, "httpbin", "nowhere", 8000, &err)
                  .empty());
  EXPECT_EQ(err.code, "unknown-namespace");

  EXPECT_TRUE(resolve_service(s.topology, "nothing", "bar", 8000, &err).empty());
  EXPECT_EQ(err.code, "unknown-service");

  EXPECT_TRUE(resolve_service(s.topology, "httpbin", "bar", 9999, &err).empty());
  EXPECT_EQ(err.code, "port-not-exposed");
}

TEST(TopologyTest, SerializeRoundTrip) {
  const Scenario s = load_fixture("demo2_post.json");
  const auto doc = serialize_scenario(s);
  const Scenario again =
      load_scenario(nlohmann::json::parse(doc.dump()));
  EXPECT_EQ(serialize_scenario(again).dump(), doc.dump());
  EXPECT_EQ(again.topology.workloads.size(), s.topology.workloads.size());
  EXPECT_EQ(again.policies.peer_auth.size(), s.policies.peer_auth.size());
  EXPECT_EQ(again.requests.size(), s.requests.size());
}

TEST(TopologyTest, EnumStringConversions) {
  EXPECT_EQ(to_string(Protocol::kHttp), "HTTP");
  EXPECT_EQ(to_string(Protocol::kTcp), "TCP");
  EXPECT_EQ(protocol_from_string("HTTP"), Protocol::kHttp);
  EXPECT_EQ(protocol_from_string("TCP"), Protocol::kTcp);
  EXPECT_FALSE(protocol_from_string("UDP"));

  EXPECT_EQ(risk_tier_from_string(to_string(RiskTier::kHigh)), RiskTier::kHigh);
  EXPECT_EQ(workload_kind_from_string(to_string(WorkloadKind::kVm)),
            WorkloadKind::kVm);
}

}  // namespace
}  // namespace ztsim
