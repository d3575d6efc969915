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

#include <gtest/gtest.h>

#include "support/fixtures.hpp"
#include "ztsim/topology.hpp"

namespace ztsim {
namespace {

using test::load_fixture;

TEST(RouteTest, SameVnetIsLocal) {
  const Scenario s = load_fixture("demo2_pre.json");
  const Workload* src = s.topology.find_workload("foo", "sleep");
  const Workload* dst = s.topology.find_workload("bar", "httpbin");
  const Route r = route(s.topology, {src}, *dst, 8000);
  ASSERT_TRUE(r.reachable);
  ASSERT_EQ(r.segments.size(), 1u);
  EXPECT_EQ(r.segments[0].hop, PathSegment::Hop::kLocal);
}

TEST(RouteTest, CrossCloudUsesGatewayPair) {
  const Scenario s = load_fixture("two_cloud.json");
  const Workload* src = s.topology.find_workload("front", "web");
  const Workload* dst = s.topology.find_workload("back", "api");
  const Route r = route(s.topology, {src}, *dst, 8000);
  ASSERT_TRUE(r.reachable);
  ASSERT_EQ(r.segments.size(), 2u);
  EXPECT_EQ(r.segments[0].hop, PathSegment::Hop::kGateway);
  EXPECT_EQ(r.segments[0].gateway, "eg-alpha");
  EXPECT_EQ(r.segments[1].hop, PathSegment::Hop::kGateway);
  EXPECT_EQ(r.segments[1].gateway, "ig-beta");
}

TEST(RouteTest, CrossVnetWithoutGatewaysUnreachable) {
  Scenario s = load_fixture("two_cloud.json");
  s.topology.gateways.clear();
  const Workload* src = s.topology.find_workload("front", "web");
  const Workload* dst = s.topology.find_workload("back", "api");
  EXPECT_FALSE(route(s.topology, {src}, *dst, 8000).reachable);
}

TEST(RouteTest, PeeredVnetsSkipGateways) {
  Scenario s = load_fixture("two_cloud.json");
  s.topology.peerings.push_back({"alpha/v1", "beta/v2"});
  const Workload* src = s.topology.find_workload("front", "web");
  const Workload* dst = s.topology.find_workload("back", "api");
  const Route r = route(s.topology, {src}, *dst, 8000);
  ASSERT_TRUE(r.reachable);
  ASSERT_EQ(r.segments.size(), 1u);
  EXPECT_EQ(r.segments[0].hop, PathSegment::Hop::kVnetPeering);
}

TEST(RouteTest, InternetEntersViaSdpAndIngress) {
  const Scenario s = load_fixture("two_cloud.json");
  const Workload* dst = s.topology.find_workload("back", "api");
  const Route r = route(s.topology, {nullptr}, *dst, 8000);
  ASSERT_TRUE(r.reachable);
  ASSERT_EQ(r.segments.size(), 2u);
  EXPECT_EQ(r.segments[0].hop, PathSegment::Hop::kSdp);
  EXPECT_EQ(r.segments[1].hop, PathSegment::Hop::kGateway);
  EXPECT_EQ(r.segments[1].gateway, "ig-beta");
}

TEST(RouteTest, InternetCannotReachUnexposedWorkload) {
  const Scenario s = load_fixture("two_cloud.json");
  const Workload* web = s.topology.find_workload("front", "web");
  EXPECT_FALSE(route(s.topology, {nullptr}, *web, 80).reachable);
}

TEST(SdpTest, DefaultDenyWithNoRules) {
  PerimeterConfig config;
  const auto v = evaluate_sdp(config, SdpDirection::kInbound, "api.back",
                              std::nullopt, 8000);
  EXPECT_FALSE(v.allowed);
  EXPECT_EQ(v.matched_rule, -1);
}

TEST(SdpTest, FirstMatchDecides) {
  PerimeterConfig config;
  config.sdp_rules.push_back(
      {SdpRule::Action::kDeny, SdpDirection::kInbound, std::nullopt,
       Cidr::parse("10.0.0.0/8"), std::nullopt});
  config.sdp_rules.push_back(
      {SdpRule::Action::kAllow, SdpDirection::kInbound, std::nullopt,
       std::nullopt, 8000});

  const auto denied = evaluate_sdp(config, SdpDirection::kInbound, "x",
                                   Ipv4Addr::parse("10.1.2.3"), 8000);
  EXPECT_FALSE(denied.allowed);
  EXPECT_EQ(denied.matched_rule, 0);

  const auto allowed = evaluate_sdp(config, SdpDirection::kInbound, "x",
                                    Ipv4Addr::parse("192.168.1.1"), 8000);
  EXPECT_TRUE(allowed.allowed);
  EXPECT_EQ(allowed.matched_rule, 1);
}

TEST(SdpTest, DirectionAndHostFilters) {
  PerimeterConfig config;
  config.sdp_rules.push_back(
      {SdpRule::Action::kAllow, SdpDirection::kOutbound,
       std::string("*.example.com"), std::nullopt, std::nullopt});

  EXPECT_TRUE(evaluate_sdp(config, SdpDirection::kOutbound, "api.example.com",
                           std::nullopt, 443)
                  .allowed);
  EXPECT_FALSE(evaluate_sdp(config, SdpDirection::kInbound, "api.example.com",
                            std::nullopt, 443)
                   .allowed);
  EXPECT_FALSE(evaluate_sdp(config, SdpDirection::kOutbound, "evil.net",
                            std::nullopt, 443)
                   .allowed);
}

TEST(GatewayTest, EgressAllowListWithGlobs) {
  Gateway g;
  g.kind = GatewayKind::kEgress;
  g.allowed_destinations = {"api.back", "*.example.com"};

  EXPECT_TRUE(evaluate_gateway(g, "api.back", "/", 8000).forwarded);
  EXPECT_TRUE(evaluate_gateway(g, "cdn.example.com", "/", 443).forwarded);
  const auto rejected = evaluate_gateway(g, "evil.net", "/", 443);
  EXPECT_FALSE(rejected.forwarded);
  EXPECT_EQ(rejected.reason, "destination not in allow list");
}

TEST(GatewayTest, IngressLongestPathPrefixWins) {
  Gateway g;
  g.kind = GatewayKind::kIngress;
  g.exposes.push_back({"*", "/", "back/api", 8000});
  g.exposes.push_back({"*", "/admin", "back/admin", 9000});

  const auto root = evaluate_gateway(g, "gw.example.com", "/users", 8000);
  ASSERT_TRUE(root.forwarded);
  EXPECT_EQ(root.service, "back/api");
  EXPECT_EQ(root.matched_expose, 0);

  const auto admin = evaluate_gateway(g, "gw.example.com", "/admin/x", 9000);
  ASSERT_TRUE(admin.forwarded);
  EXPECT_EQ(admin.service, "back/admin");
  EXPECT_EQ(admin.port, 9000);
  EXPECT_EQ(admin.matched_expose, 1);
}

TEST(GatewayTest, IngressHostFilter) {
  Gateway g;
  g.kind = GatewayKind::kIngress;
  g.exposes.push_back({"api.corp.net", "/", "back/api", 8000});

  EXPECT_TRUE(evaluate_gateway(g, "api.corp.net", "/", 8000).forwarded);
  const auto miss = evaluate_gateway(g, "other.corp.net", "/", 8000);
  EXPECT_FALSE(miss.forwarded);
  EXPECT_EQ(miss.reason, "no exposed route matches");
}

}  // namespace
}  // namespace ztsim
