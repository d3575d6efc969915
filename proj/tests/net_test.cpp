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

#include "ztsim/net.hpp"

#include <random>

#include <gtest/gtest.h>

#include "ztsim/labels.hpp"

namespace ztsim {
namespace {

TEST(Ipv4AddrTest, ParseAndRender) {
  auto addr = Ipv4Addr::parse("10.0.1.10");
  ASSERT_TRUE(addr);
  EXPECT_EQ(addr->value, 0x0A00010Au);
  EXPECT_EQ(addr->str(), "10.0.1.10");

  EXPECT_EQ(Ipv4Addr::parse("0.0.0.0")->value, 0u);
  EXPECT_EQ(Ipv4Addr::parse("255.255.255.255")->value, 0xFFFFFFFFu);
}

TEST(Ipv4AddrTest, RejectsMalformed) {
  EXPECT_FALSE(Ipv4Addr::parse(""));
  EXPECT_FALSE(Ipv4Addr::parse("10.0.1"));
  EXPECT_FALSE(Ipv4Addr::parse("10.0.1.256"));
  EXPECT_FALSE(Ipv4Addr::parse("10.0.1.10.4"));
  EXPECT_FALSE(Ipv4Addr::parse("ten.zero.one.ten"));
  EXPECT_FALSE(Ipv4Addr::parse("10.0.1.10/24"));
}

TEST(Ipv4AddrTest, RoundTripProperty) {
  std::mt19937 rng(7);
  for (int i = 0; i < 1000; ++i) {
    Ipv4Addr a{static_cast<uint32_t>(rng())};
    auto back = Ipv4Addr::parse(a.str());
    ASSERT_TRUE(back);
    EXPECT_EQ(back->value, a.value);
  }
}

TEST(CidrTest, ParseMasksBase) {
  auto cidr = Cidr::parse("10.0.1.77/24");
  ASSERT_TRUE(cidr);
  EXPECT_EQ(cidr->base.str(), "10.0.1.0");
  EXPECT_EQ(cidr->prefix_len, 24);
  EXPECT_EQ(cidr->str(), "10.0.1.0/24");

  EXPECT_EQ(Cidr::parse("10.0.0.0/0")->base.value, 0u);
  EXPECT_EQ(Cidr::parse("10.0.1.10/32")->base.str(), "10.0.1.10");
}

TEST(CidrTest, RejectsMalformed) {
  EXPECT_FALSE(Cidr::parse("10.0.0.0"));
  EXPECT_FALSE(Cidr::parse("10.0.0.0/33"));
  EXPECT_FALSE(Cidr::parse("10.0.0.0/-1"));
  EXPECT_FALSE(Cidr::parse("10.0.0/24"));
  EXPECT_FALSE(Cidr::parse("/24"));
}

TEST(CidrTest, ContainsAddr) {
  const Cidr c = *Cidr::parse("10.0.1.0/24");
  EXPECT_TRUE(c.contains(*Ipv4Addr::parse("10.0.1.0")));
  EXPECT_TRUE(c.contains(*Ipv4Addr::parse("10.0.1.255")));
  EXPECT_FALSE(c.contains(*Ipv4Addr::parse("10.0.2.0")));
  EXPECT_FALSE(c.contains(*Ipv4Addr::parse("10.0.0.255")));

  const Cidr all = *Cidr::parse("0.0.0.0/0");
  EXPECT_TRUE(all.contains(*Ipv4Addr::parse("203.0.113.9")));
}

TEST(CidrTest, ContainsCidr) {
  const Cidr outer = *Cidr::parse("10.0.0.0/16");
  EXPECT_TRUE(outer.contains(*Cidr::parse("10.0.1.0/24")));
  EXPECT_TRUE(outer.contains(outer));
  EXPECT_FALSE(outer.contains(*Cidr::parse("10.1.0.0/24")));
  EXPECT_FALSE(Cidr::parse("10.0.1.0/24")->contains(outer));
}

TEST(CidrTest, Overlaps) {
  const Cidr a = *Cidr::parse("10.0.0.0/16");
  const Cidr b = *Cidr::parse("10.0.1.0/24");
  const Cidr c = *Cidr::parse("10.1.0.0/16");
  EXPECT_TRUE(a.overlaps(b));
  EXPECT_TRUE(b.overlaps(a));
  EXPECT_FALSE(a.overlaps(c));
  EXPECT_FALSE(c.overlaps(b));
}

TEST(LabelSelectorTest, SubsetMatch) {
  LabelSelector sel{{{"app", "httpbin"}}};
  EXPECT_TRUE(sel.matches({{"app", "httpbin"}, {"tier", "web"}}));
  EXPECT_FALSE(sel.matches({{"app", "sleep"}}));
  EXPECT_FALSE(sel.matches({}));

  LabelSelector empty;
  EXPECT_TRUE(empty.matches({}));
  EXPECT_TRUE(empty.matches({{"any", "thing"}}));
}

TEST(GlobMatchTest, SingleStar) {
  EXPECT_TRUE(glob_match("*", "anything"));
  EXPECT_TRUE(glob_match("*.example.com", "api.example.com"));
  EXPECT_FALSE(glob_match("*.example.com", "example.org"));
  EXPECT_TRUE(glob_match("cluster.local/ns/foo/sa/*",
                         "cluster.local/ns/foo/sa/sleep"));
  EXPECT_FALSE(glob_match("cluster.local/ns/foo/sa/*",
                          "cluster.local/ns/bar/sa/sleep"));
  EXPECT_TRUE(glob_match("/api/*", "/api/v1/users"));
  EXPECT_FALSE(glob_match("/api/*", "/health"));
  EXPECT_TRUE(glob_match("exact", "exact"));
  EXPECT_FALSE(glob_match("exact", "exactly"));
}

}  // namespace
}  // namespace ztsim
