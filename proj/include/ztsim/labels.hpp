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

#ifndef ZTSIM_LABELS_HPP
#define ZTSIM_LABELS_HPP

#include <map>
#include <string>

namespace ztsim {

using LabelMap = std::map<std::string, std::string>;

// Equality selector: matches when every (key, value) pair is present in
// the candidate label set. An empty selector matches everything.
struct LabelSelector {
  LabelMap match_labels;

  bool operator==(const LabelSelector&) const = default;

  bool matches(const LabelMap& labels) const {
    for (const auto& [key, value] : match_labels) {
      auto it = labels.find(key);
      if (it == labels.end() || it->second != value) return false;
    }
    return true;
  }
};

// Glob with at most one '*', matching any substring. Used for hostnames,
// principal patterns, and path prefixes.
inline bool glob_match(const std::string& pattern, const std::string& text) {
  auto star = pattern.find('*');
  if (star == std::string::npos) return pattern == text;
  const std::string head = pattern.substr(0, star);
  const std::string tail = pattern.substr(star + 1);
  if (text.size() < head.size() + tail.size()) return false;
  return text.compare(0, head.size(), head) == 0 &&
         text.compare(text.size() - tail.size(), tail.size(), tail) == 0;
}

}  // namespace ztsim

#endif  // ZTSIM_LABELS_HPP
