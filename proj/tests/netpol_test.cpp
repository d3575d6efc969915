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
#include <random>

#include <gtest/gtest.h>

#include "support/oracle.hpp"
#include "support/scenario_gen.hpp"

namespace ztsim {
namespace {

Workload make_workload(const std::string& ns, const std::string& name,
                       LabelMap labels) {
  Workload w;
  w.name = name;
  w.ns = ns;
  w.labels = std::move(labels);
  w.address = *Ipv4Addr::parse("10.9.1.1");
  return w;
}

NetworkPolicyL34 make_policy(const std::string& name, const std::string& ns,
                             double order, LabelMap selector) {
  NetworkPolicyL34 p;
  p.name = name;
  p.ns = ns;
  p.order = order;
  p.selector.match_labels = std::move(selector);
  return p;
}

L34Rule allow_ports(int lo, int hi) {
  L34Rule r;
  r.action = L34Rule::Action::kAllow;
  r.ports = std::vector<PortRange>{{lo, hi}};
  return r;
}

L34Rule deny_all() {
  L34Rule r;
  r.action = L34Rule::Action::kDeny;
  return r;
}

TEST(SelectPoliciesTest, ScopeSelectorAndDirection) {
  const Workload w = make_workload("foo", "web", {{"app", "web"}});
  std::vector<NetworkPolicyL34> policies;
  policies.push_back(make_policy("a", "foo", 100, {{"app", "web"}}));
  policies.back().ingress_rules = std::vector<L34Rule>{};
  policies.push_back(make_policy("b", "bar", 100, {}));  // wrong namespace
  policies.back().ingress_rules = std::vector<L34Rule>{};
  policies.push_back(make_policy("c", "", 100, {}));  // global
  policies.back().ingress_rules = std::vector<L34Rule>{};
  policies.push_back(make_policy("d", "foo", 100, {{"app", "db"}}));  // no match
  policies.back().ingress_rules = std::vector<L34Rule>{};
  policies.push_back(make_policy("e", "foo", 100, {}));  // egress only
  policies.back().egress_rules = std::vector<L34Rule>{};

  const auto selected =
      select_policies(policies, w, Direction::kIngress);
  ASSERT_EQ(selected.size(), 2u);
  EXPECT_EQ(selected[0]->name, "a");
  EXPECT_EQ(selected[1]->name, "c");
}

TEST(SelectPoliciesTest, SortedByOrderThenName) {
  const Workload w = make_workload("foo", "web", {});
  std::vector<NetworkPolicyL34> policies;
  for (const auto& [name, order] :
       std::vector<std::pair<std::string, double>>{
           {"zeta", 10}, {"alpha", 20}, {"beta", 10}, {"gamma", 5}}) {
    policies.push_back(make_policy(name, "foo", order, {}));
    policies.back().ingress_rules = std::vector<L34Rule>{};
  }
  const auto selected = select_policies(policies, w, Direction::kIngress);
  ASSERT_EQ(selected.size(), 4u);
  EXPECT_EQ(selected[0]->name, "gamma");
  EXPECT_EQ(selected[1]->name, "beta");
  EXPECT_EQ(selected[2]->name, "zeta");
  EXPECT_EQ(selected[3]->name, "alpha");
}

TEST(EvaluateL3L4Test, FirstMatchWins) {
  const Workload w = make_workload("foo", "web", {});
  std::vector<NetworkPolicyL34> policies;
  policies.push_back(make_policy("early", "foo", 10, {}));
  policies.back().ingress_rules = std::vector<L34Rule>{allow_ports(80, 80)};
  policies.push_back(make_policy("late", "foo", 20, {}));
  policies.back().ingress_rules = std::vector<L34Rule>{deny_all()};

  L34Flow flow;
  flow.port = 80;
  const auto res = evaluate_l3l4(policies, flow, w, Direction::kIngress);
  EXPECT_EQ(res.verdict, L34Verdict::kAllow);
  ASSERT_NE(res.policy, nullptr);
  EXPECT_EQ(res.policy->name, "early");
  EXPECT_EQ(res.rule_index, 0);

  flow.port = 8080;  // falls past "early" to the deny in "late"
  const auto res2 = evaluate_l3l4(policies, flow, w, Direction::kIngress);
  EXPECT_EQ(res2.verdict, L34Verdict::kDeny);
  ASSERT_NE(res2.policy, nullptr);
  EXPECT_EQ(res2.policy->name, "late");
}

TEST(EvaluateL3L4Test, SelectedWithoutMatchIsImplicitDeny) {
  const Workload w = make_workload("foo", "web", {});
  std::vector<NetworkPolicyL34> policies;
  policies.push_back(make_policy("only", "foo", 10, {}));
  policies.back().ingress_rules = std::vector<L34Rule>{allow_ports(443, 443)};

  L34Flow flow;
  flow.port = 80;
  const auto res = evaluate_l3l4(policies, flow, w, Direction::kIngress);
  EXPECT_EQ(res.verdict, L34Verdict::kDeny);
  EXPECT_EQ(res.policy, nullptr);
  EXPECT_EQ(res.rule_index, -1);
}

TEST(EvaluateL3L4Test, PresentButEmptyRulesDenyEverything) {
  const Workload w = make_workload("foo", "web", {});
  std::vector<NetworkPolicyL34> policies;
  policies.push_back(make_policy("lockdown", "foo", 10, {}));
  policies.back().ingress_rules = std::vector<L34Rule>{};

  L34Flow flow;
  flow.port = 80;
  EXPECT_EQ(evaluate_l3l4(policies, flow, w, Direction::kIngress).verdict,
            L34Verdict::kDeny);
  // The same policy leaves egress untouched.
  EXPECT_EQ(evaluate_l3l4(policies, flow, w, Direction::kEgress).verdict,
            L34Verdict::kNoPolicy);
}

TEST(EvaluateL3L4Test, NoPolicyWhenNothingSelects) {
  const Workload w = make_workload("foo", "web", {});
  L34Flow flow;
  flow.port = 80;
  const auto res = evaluate_l3l4({}, flow, w, Direction::kIngress);
  EXPECT_EQ(res.verdict, L34Verdict::kNoPolicy);
}

TEST(EvaluateL3L4Test, PeerClausesRequirePeerAttributes) {
  const Workload w = make_workload("foo", "web", {});
  std::vector<NetworkPolicyL34> policies;
  policies.push_back(make_policy("p", "foo", 10, {}));
  L34Rule rule;
  rule.action = L34Rule::Action::kAllow;
  rule.peer.selector = LabelSelector{{{"app", "db"}}};
  policies.back().ingress_rules = std::vector<L34Rule>{rule};

  // Off-topology peer (no labels): the selector clause cannot match, so
  // the flow falls through to implicit deny.
  L34Flow flow;
  flow.port = 80;
  EXPECT_EQ(evaluate_l3l4(policies, flow, w, Direction::kIngress).verdict,
            L34Verdict::kDeny);

  flow.peer.labels = LabelMap{{"app", "db"}};
  EXPECT_EQ(evaluate_l3l4(policies, flow, w, Direction::kIngress).verdict,
            L34Verdict::kAllow);
}

TEST(EvaluateL3L4Test, CidrAndNamespaceClauses) {
  const Workload w = make_workload("foo", "web", {});
  std::vector<NetworkPolicyL34> policies;
  policies.push_back(make_policy("p", "foo", 10, {}));
  L34Rule rule;
  rule.action = L34Rule::Action::kAllow;
  rule.peer.cidr = Cidr::parse("10.9.0.0/16");
  rule.peer.namespaces = std::set<std::string>{"bar"};
  policies.back().ingress_rules = std::vector<L34Rule>{rule};

  L34Flow flow;
  flow.port = 80;
  flow.peer.address = Ipv4Addr::parse("10.9.1.5");
  flow.peer.ns = "bar";
  EXPECT_EQ(evaluate_l3l4(policies, flow, w, Direction::kIngress).verdict,
            L34Verdict::kAllow);

  flow.peer.ns = "baz";
  EXPECT_EQ(evaluate_l3l4(policies, flow, w, Direction::kIngress).verdict,
            L34Verdict::kDeny);

  flow.peer.ns = "bar";
  flow.peer.address = Ipv4Addr::parse("192.168.0.5");
  EXPECT_EQ(evaluate_l3l4(policies, flow, w, Direction::kIngress).verdict,
            L34Verdict::kDeny);
}

// The (order, name) sort makes the verdict independent of document order.
TEST(EvaluateL3L4Property, PermutationInvariance) {
  std::mt19937 rng(23);
  for (int iter = 0; iter < 200; ++iter) {
    const auto s = test::random_scenario(rng);
    if (s.policies.l3l4.empty()) continue;
    auto shuffled = s.policies.l3l4;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (const auto& w : s.topology.workloads) {
      L34Flow flow;
      flow.port = 8000;
      flow.peer = {s.topology.workloads[0].address,
                   s.topology.workloads[0].labels, s.topology.workloads[0].ns};
      for (auto dir : {Direction::kIngress, Direction::kEgress}) {
        EXPECT_EQ(evaluate_l3l4(s.policies.l3l4, flow, w, dir).verdict,
                  evaluate_l3l4(shuffled, flow, w, dir).verdict);
      }
    }
  }
}

// Appending a deny-only policy at the end of the order never turns a
// denied flow into an allowed one.
TEST(EvaluateL3L4Property, DenyMonotonicity) {
  std::mt19937 rng(29);
  for (int iter = 0; iter < 200; ++iter) {
    const auto s = test::random_scenario(rng);
    auto extended = s.policies.l3l4;
    NetworkPolicyL34 tail;
    tail.name = "zz-tail-deny";
    tail.order = 1e9;
    tail.ingress_rules = std::vector<L34Rule>{deny_all()};
    tail.egress_rules = std::vector<L34Rule>{deny_all()};
    extended.push_back(tail);
    for (const auto& w : s.topology.workloads) {
      L34Flow flow;
      flow.port = 8000;
      flow.peer = {s.topology.workloads[0].address,
                   s.topology.workloads[0].labels, s.topology.workloads[0].ns};
      for (auto dir : {Direction::kIngress, Direction::kEgress}) {
        const auto before = evaluate_l3l4(s.policies.l3l4, flow, w, dir).verdict;
        const auto after = evaluate_l3l4(extended, flow, w, dir).verdict;
        if (before == L34Verdict::kDeny) {
          EXPECT_EQ(after, L34Verdict::kDeny);
        }
        EXPECT_NE(after, L34Verdict::kNoPolicy);
      }
    }
  }
}

TEST(EvaluateL3L4Property, MatchesNaiveOracle) {
  std::mt19937 rng(31);
  int compared = 0;
  for (int iter = 0; iter < 300; ++iter) {
    const auto s = test::random_scenario(rng);
    for (const auto& w : s.topology.workloads) {
      for (const auto& peer : s.topology.workloads) {
        L34Flow flow;
        flow.port = (iter % 3 == 0) ? 50 : 8000;
        flow.protocol = Protocol::kHttp;
        flow.peer = {peer.address, peer.labels, peer.ns};
        for (auto dir : {Direction::kIngress, Direction::kEgress}) {
          EXPECT_EQ(
              evaluate_l3l4(s.policies.l3l4, flow, w, dir).verdict,
              test::naive_l3l4(s.policies.l3l4, flow, w, dir))
              << "iter " << iter << " " << w.ns << "/" << w.name;
          ++compared;
        }
      }
    }
  }
  EXPECT_GT(compared, 1000);
}

}  // namespace
}  // namespace ztsim
