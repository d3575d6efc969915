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

#include <cstdio>

namespace ztsim {

namespace {

uint32_t mask_for(int prefix_len) {
  if (prefix_len <= 0) return 0;
  if (prefix_len >= 32) return 0xffffffffu;
  return ~((1u << (32 - prefix_len)) - 1);
}

}  // namespace

std::optional<Ipv4Addr> Ipv4Addr::parse(const std::string& text) {
  unsigned a, b, c, d;
  char trailing;
  if (std::sscanf(text.c_str(), "%u.%u.%u.%u%c", &a, &b, &c, &d, &trailing) !=
      4) {
    return std::nullopt;
  }
  if (a > 255 || b > 255 || c > 255 || d > 255) return std::nullopt;
  return Ipv4Addr{(a << 24) | (b << 16) | (c << 8) | d};
}

std::string Ipv4Addr::str() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%u.%u.%u.%u", (value >> 24) & 0xff,
                (value >> 16) & 0xff, (value >> 8) & 0xff, value & 0xff);
  return buf;
}

std::optional<Cidr> Cidr::parse(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return std::nullopt;
  auto addr = Ipv4Addr::parse(text.substr(0, slash));
  if (!addr) return std::nullopt;
  const std::string len_text = text.substr(slash + 1);
  if (len_text.empty() || len_text.size() > 2) return std::nullopt;
  for (char ch : len_text) {
    if (ch < '0' || ch > '9') return std::nullopt;
  }
  int len = std::stoi(len_text);
  if (len < 0 || len > 32) return std::nullopt;
  return Cidr{Ipv4Addr{addr->value & mask_for(len)}, len};
}

std::string Cidr::str() const {
  return base.str() + "/" + std::to_string(prefix_len);
}

bool Cidr::contains(Ipv4Addr addr) const {
  return (addr.value & mask_for(prefix_len)) == base.value;
}

bool Cidr::contains(const Cidr& other) const {
  return other.prefix_len >= prefix_len && contains(other.base);
}

bool Cidr::overlaps(const Cidr& other) const {
  return contains(other.base) || other.contains(base);
}

}  // namespace ztsim
