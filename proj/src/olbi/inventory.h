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

#ifndef BURNSCREEN_OLBI_INVENTORY_H_
#define BURNSCREEN_OLBI_INVENTORY_H_

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "json.hpp"

namespace burnscreen::olbi {

inline constexpr int kNumItems = 16;
inline constexpr int kItemsPerDimension = 8;
inline constexpr int kMinLikert = 1;
inline constexpr int kMaxLikert = 4;
inline constexpr int kMinTotal = kNumItems * kMinLikert;
inline constexpr int kMaxTotal = kNumItems * kMaxLikert;

enum class Dimension { kExhaustion, kDisengagement };
enum class Polarity { kBurnoutWorded, kPositivelyWorded };

// Maps a raw Likert answer onto the coded scale. kReverse is 5 - x.
enum class Transform { kIdentity, kReverse };

struct OlbiItem {
  int id = 0;
  Dimension dimension = Dimension::kExhaustion;
  Polarity polarity = Polarity::kBurnoutWorded;
};

// Per-item coding. The coded scale points toward burnout: higher means more
// burnout, which is what the ">=" cut-off rules assume.
struct KeyingConfig {
  std::array<Transform, kNumItems> transforms{};
  std::string note;

  Transform ForItem(int item_id) const { return transforms[item_id - 1]; }
};

// Item definitions plus their keying, as loaded from the editable inventory
// file (data/olbi_items.json).
struct Inventory {
  std::vector<OlbiItem> items;
  KeyingConfig keying;
};

enum class Gender { kUnspecified, kFemale, kMale, kDiverse };

struct OlbiResponse {
  std::string respondent_id;
  // Item id -> raw Likert answer, 1 = strongly agree ... 4 = strongly
  // disagree.
  std::map<int, int> answers;
  std::optional<int> age;
  Gender gender = Gender::kUnspecified;
};

struct OlbiScore {
  double exhaustion_mean = 0.0;
  double disengagement_mean = 0.0;
  int total = 0;

  friend bool operator==(const OlbiScore&, const OlbiScore&) = default;
};

std::string_view DimensionName(Dimension dimension);
std::string_view PolarityName(Polarity polarity);
std::string_view TransformName(Transform transform);
std::string_view GenderName(Gender gender);
std::optional<Gender> ParseGender(std::string_view name);

// Exactly 16 items, 8 per dimension, ids 1..16 each used once.
absl::Status ValidateItems(std::span<const OlbiItem> items);

// The shipped default: standard OLBI item-to-dimension layout, burnout-worded
// items reverse coded because the raw scale runs from "strongly agree" (1).
Inventory DefaultInventory();

absl::StatusOr<Inventory> ParseInventory(const nlohmann::json& document);
absl::StatusOr<Inventory> LoadInventory(const std::filesystem::path& path);
nlohmann::json InventoryToJson(const Inventory& inventory);

// Codes one raw answer. `item_id` only feeds the error message.
absl::StatusOr<int> CodeItem(int raw, Transform transform, int item_id = 0);

// Every item answered, every answer in [1,4], no unknown item ids.
absl::Status ValidateResponse(const OlbiResponse& response);

absl::StatusOr<OlbiScore> ScoreInventory(const OlbiResponse& response,
                                         const Inventory& inventory);

}  // namespace burnscreen::olbi

#endif  // BURNSCREEN_OLBI_INVENTORY_H_
