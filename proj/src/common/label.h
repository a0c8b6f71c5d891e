// Copyright 2026 The Burnscreen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BURNSCREEN_COMMON_LABEL_H_
#define BURNSCREEN_COMMON_LABEL_H_

#include <optional>
#include <string_view>

namespace burnscreen {

// Binary burnout indication shared by every module.
enum class Label : int { kNoBurnout = 0, kBurnout = 1 };

inline constexpr int LabelValue(Label label) { return static_cast<int>(label); }

inline std::optional<Label> LabelFromInt(long long value) {
  if (value == 0) return Label::kNoBurnout;
  if (value == 1) return Label::kBurnout;
  return std::nullopt;
}

inline std::string_view LabelDisplayName(Label label) {
  return label == Label::kBurnout ? "burnout" : "No burnout";
}

struct LabelCounts {
  int burnout = 0;
  int no_burnout = 0;

  int total() const { return burnout + no_burnout; }
  void Add(Label label) {
    if (label == Label::kBurnout) {
      ++burnout;
    } else {
      ++no_burnout;
    }
  }
  friend bool operator==(const LabelCounts&, const LabelCounts&) = default;
};

}  // namespace burnscreen

#endif  // BURNSCREEN_COMMON_LABEL_H_
