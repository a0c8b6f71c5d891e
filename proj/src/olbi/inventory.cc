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

#include "olbi/inventory.h"

#include <set>

#include "common/io.h"
#include "common/status_macros.h"
#include "common/strings.h"
#include "fmt/ranges.h"

namespace burnscreen::olbi {

namespace {

// Standard OLBI layout: item id -> (dimension, polarity).
constexpr std::array<std::pair<Dimension, Polarity>, kNumItems> kDefaultLayout =
    {{
        {Dimension::kDisengagement, Polarity::kPositivelyWorded},  // 1
        {Dimension::kExhaustion, Polarity::kBurnoutWorded},        // 2
        {Dimension::kDisengagement, Polarity::kBurnoutWorded},     // 3
        {Dimension::kExhaustion, Polarity::kBurnoutWorded},        // 4
        {Dimension::kExhaustion, Polarity::kPositivelyWorded},     // 5
        {Dimension::kDisengagement, Polarity::kBurnoutWorded},     // 6
        {Dimension::kDisengagement, Polarity::kPositivelyWorded},  // 7
        {Dimension::kExhaustion, Polarity::kBurnoutWorded},        // 8
        {Dimension::kDisengagement, Polarity::kBurnoutWorded},     // 9
        {Dimension::kExhaustion, Polarity::kPositivelyWorded},     // 10
        {Dimension::kDisengagement, Polarity::kBurnoutWorded},     // 11
        {Dimension::kExhaustion, Polarity::kBurnoutWorded},        // 12
        {Dimension::kDisengagement, Polarity::kPositivelyWorded},  // 13
        {Dimension::kExhaustion, Polarity::kPositivelyWorded},     // 14
        {Dimension::kDisengagement, Polarity::kPositivelyWorded},  // 15
        {Dimension::kExhaustion, Polarity::kPositivelyWorded},     // 16
    }};

constexpr char kDefaultNote[] =
    "Default keying shipped with burnscreen. Item polarity is configurable: "
    "adjust 'transform' per item to match the inventory version in use.";

Transform DefaultTransform(Polarity polarity) {
  // Agreeing (raw 1) with a burnout-worded item signals burnout, so those
  // items are reversed to make higher coded scores mean more burnout.
  return polarity == Polarity::kBurnoutWorded ? Transform::kReverse
                                              : Transform::kIdentity;
}

template <typename Enum, size_t N>
std::optional<Enum> ParseEnum(
    std::string_view name,
    const std::array<std::pair<std::string_view, Enum>, N>& table) {
  for (const auto& [candidate, value] : table) {
    if (candidate == name) return value;
  }
  return std::nullopt;
}

constexpr std::array<std::pair<std::string_view, Dimension>, 2> kDimensions = {{
    {"exhaustion", Dimension::kExhaustion},
    {"disengagement", Dimension::kDisengagement},
}};
constexpr std::array<std::pair<std::string_view, Polarity>, 2> kPolarities = {{
    {"burnout_worded", Polarity::kBurnoutWorded},
    {"positively_worded", Polarity::kPositivelyWorded},
}};
constexpr std::array<std::pair<std::string_view, Transform>, 2> kTransforms = {{
    {"identity", Transform::kIdentity},
    {"reverse", Transform::kReverse},
}};
constexpr std::array<std::pair<std::string_view, Gender>, 4> kGenders = {{
    {"unspecified", Gender::kUnspecified},
    {"female", Gender::kFemale},
    {"male", Gender::kMale},
    {"diverse", Gender::kDiverse},
}};

template <typename Enum, size_t N>
std::string_view EnumName(
    Enum value, const std::array<std::pair<std::string_view, Enum>, N>& table) {
  for (const auto& [name, candidate] : table) {
    if (candidate == value) return name;
  }
  return "unknown";
}

}  // namespace

std::string_view DimensionName(Dimension dimension) {
  return EnumName(dimension, kDimensions);
}
std::string_view PolarityName(Polarity polarity) {
  return EnumName(polarity, kPolarities);
}
std::string_view TransformName(Transform transform) {
  return EnumName(transform, kTransforms);
}
std::string_view GenderName(Gender gender) { return EnumName(gender, kGenders); }
std::optional<Gender> ParseGender(std::string_view name) {
  return ParseEnum(name, kGenders);
}

absl::Status ValidateItems(std::span<const OlbiItem> items) {
  if (items.size() != kNumItems) {
    return absl::InvalidArgumentError(
        StrCat("inventory must define ", kNumItems, " items, found ",
               items.size()));
  }
  std::set<int> ids;
  int exhaustion = 0;
  for (const OlbiItem& item : items) {
    if (item.id < 1 || item.id > kNumItems) {
      return absl::InvalidArgumentError(
          StrCat("item id ", item.id, " outside 1..", kNumItems));
    }
    if (!ids.insert(item.id).second) {
      return absl::InvalidArgumentError(StrCat("duplicate item id ", item.id));
    }
    if (item.dimension == Dimension::kExhaustion) ++exhaustion;
  }
  if (exhaustion != kItemsPerDimension) {
    return absl::InvalidArgumentError(
        StrCat("expected ", kItemsPerDimension,
               " exhaustion and disengagement items, found ", exhaustion,
               " exhaustion items"));
  }
  return absl::OkStatus();
}

Inventory DefaultInventory() {
  Inventory inventory;
  inventory.keying.note = kDefaultNote;
  for (int id = 1; id <= kNumItems; ++id) {
    const auto& [dimension, polarity] = kDefaultLayout[id - 1];
    inventory.items.push_back({id, dimension, polarity});
    inventory.keying.transforms[id - 1] = DefaultTransform(polarity);
  }
  return inventory;
}

absl::StatusOr<Inventory> ParseInventory(const nlohmann::json& document) {
  if (!document.is_object() || !document.contains("items") ||
      !document["items"].is_array()) {
    return absl::InvalidArgumentError("inventory file needs an 'items' array");
  }
  Inventory inventory;
  inventory.keying.note = document.value("note", std::string());
  std::set<int> keyed;
  for (const nlohmann::json& entry : document["items"]) {
    if (!entry.is_object() || !entry.contains("id") ||
        !entry["id"].is_number_integer()) {
      return absl::InvalidArgumentError("every item needs an integer 'id'");
    }
    OlbiItem item;
    item.id = entry["id"].get<int>();
    const auto dimension =
        ParseEnum(entry.value("dimension", std::string()), kDimensions);
    const auto polarity =
        ParseEnum(entry.value("polarity", std::string()), kPolarities);
    if (!dimension || !polarity) {
      return absl::InvalidArgumentError(
          StrCat("item ", item.id, ": unknown dimension or polarity"));
    }
    item.dimension = *dimension;
    item.polarity = *polarity;
    Transform transform = DefaultTransform(item.polarity);
    if (entry.contains("transform")) {
      const auto parsed =
          ParseEnum(entry["transform"].get<std::string>(), kTransforms);
      if (!parsed) {
        return absl::InvalidArgumentError(
            StrCat("item ", item.id, ": transform must be identity or reverse"));
      }
      transform = *parsed;
    }
    if (item.id >= 1 && item.id <= kNumItems) {
      inventory.keying.transforms[item.id - 1] = transform;
    }
    inventory.items.push_back(item);
  }
  BURNSCREEN_RETURN_IF_ERROR(ValidateItems(inventory.items));
  std::sort(inventory.items.begin(), inventory.items.end(),
            [](const OlbiItem& a, const OlbiItem& b) { return a.id < b.id; });
  return inventory;
}

absl::StatusOr<Inventory> LoadInventory(const std::filesystem::path& path) {
  BURNSCREEN_ASSIGN_OR_RETURN(nlohmann::json document, io::ReadJson(path));
  return ParseInventory(document);
}

nlohmann::json InventoryToJson(const Inventory& inventory) {
  nlohmann::json items = nlohmann::json::array();
  for (const OlbiItem& item : inventory.items) {
    items.push_back({
        {"id", item.id},
        {"dimension", DimensionName(item.dimension)},
        {"polarity", PolarityName(item.polarity)},
        {"transform", TransformName(inventory.keying.ForItem(item.id))},
    });
  }
  return {
      {"note", inventory.keying.note},
      {"orientation", "coded score points toward burnout (higher = more burnout)"},
      {"raw_scale", "1 = strongly agree ... 4 = strongly disagree"},
      {"items", items},
  };
}

absl::StatusOr<int> CodeItem(int raw, Transform transform, int item_id) {
  if (raw < kMinLikert || raw > kMaxLikert) {
    return absl::InvalidArgumentError(
        StrCat("item ", item_id, ": answer ", raw, " outside ", kMinLikert,
               "..", kMaxLikert));
  }
  return transform == Transform::kIdentity ? raw
                                           : (kMinLikert + kMaxLikert) - raw;
}

absl::Status ValidateResponse(const OlbiResponse& response) {
  std::vector<int> missing;
  for (int id = 1; id <= kNumItems; ++id) {
    if (!response.answers.contains(id)) missing.push_back(id);
  }
  if (!missing.empty()) {
    return absl::InvalidArgumentError(
        fmt::format("incomplete response: missing items {}",
                    fmt::join(missing, ", ")));
  }
  for (const auto& [id, raw] : response.answers) {
    if (id < 1 || id > kNumItems) {
      return absl::InvalidArgumentError(StrCat("unknown item id ", id));
    }
    if (raw < kMinLikert || raw > kMaxLikert) {
      return absl::InvalidArgumentError(
          StrCat("item ", id, ": answer ", raw, " outside ", kMinLikert, "..",
                 kMaxLikert));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<OlbiScore> ScoreInventory(const OlbiResponse& response,
                                         const Inventory& inventory) {
  BURNSCREEN_RETURN_IF_ERROR(ValidateItems(inventory.items));
  BURNSCREEN_RETURN_IF_ERROR(ValidateResponse(response));
  int exhaustion_sum = 0;
  int disengagement_sum = 0;
  for (const OlbiItem& item : inventory.items) {
    BURNSCREEN_ASSIGN_OR_RETURN(
        const int coded,
        CodeItem(response.answers.at(item.id), inventory.keying.ForItem(item.id),
                 item.id));
    if (item.dimension == Dimension::kExhaustion) {
      exhaustion_sum += coded;
    } else {
      disengagement_sum += coded;
    }
  }
  OlbiScore score;
  score.exhaustion_mean = static_cast<double>(exhaustion_sum) / kItemsPerDimension;
  score.disengagement_mean =
      static_cast<double>(disengagement_sum) / kItemsPerDimension;
  score.total = exhaustion_sum + disengagement_sum;
  return score;
}

}  // namespace burnscreen::olbi
