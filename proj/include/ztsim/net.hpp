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

#ifndef ZTSIM_NET_HPP
#define ZTSIM_NET_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace ztsim {

// IPv4 address as a host-order 32-bit value.
struct Ipv4Addr {
  uint32_t value = 0;

  auto operator<=>(const Ipv4Addr&) const = default;

  static std::optional<Ipv4Addr> parse(const std::string& text);
  std::string str() const;
};

// IPv4 prefix. The stored address is masked to the prefix length.
struct Cidr {
  Ipv4Addr base;
  int prefix_len = 0;

  auto operator<=>(const Cidr&) const = default;

  static std::optional<Cidr> parse(const std::string& text);
  std::string str() const;

  bool contains(Ipv4Addr addr) const;
  bool contains(const Cidr& other) const;
  bool overlaps(const Cidr& other) const;
};

}  // namespace ztsim

#endif  // ZTSIM_NET_HPP
