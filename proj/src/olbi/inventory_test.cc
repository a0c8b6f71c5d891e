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

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <numeric>

#include "common/random.h"

namespace burnscreen::olbi {
namespace {

using ::testing::HasSubstr;

// Builds a response whose coded scores equal `coded` under `inventory`.
OlbiResponse ResponseFromCoded(const Inventory& inventory,
                               const std::map<int, int>& coded) {
  OlbiResponse response;
  response.respondent_id = "r";
  for (const auto& [id, value] : coded) {
    response.answers[id] = inventory.keying.ForItem(id) == Transform::kIdentity
                               ? value
                               : 5 - value;
  }
  return response;
}

std::vector<int> ItemsOf(const Inventory& inventory, Dimension dimension) {
  std::vector<int> ids;
  for (const OlbiItem& item : inventory.items) {
    if (item.dimension == dimension) ids.push_back(item.id);
  }
  return ids;
}

TEST(CodeItemTest, IdentityAndReverse) {
  EXPECT_EQ(*CodeItem(1, Transform::kIdentity), 1);
  EXPECT_EQ(*CodeItem(1, Transform::kReverse), 4);
  EXPECT_EQ(*CodeItem(4, Transform::kReverse), 1);
}

TEST(CodeItemTest, OutOfRangeNamesItem) {
  auto coded = CodeItem(5, Transform::kIdentity, 7);
  ASSERT_FALSE(coded.ok());
  EXPECT_THAT(std::string(coded.status().message()), HasSubstr("item 7"));
  EXPECT_FALSE(CodeItem(0, Transform::kReverse, 3).ok());
}

TEST(CodeItemTest, ReverseTwiceIsIdentity) {
  for (int raw = kMinLikert; raw <= kMaxLikert; ++raw) {
    EXPECT_EQ(*CodeItem(*CodeItem(raw, Transform::kReverse), Transform::kReverse),
              raw);
  }
}

TEST(InventoryTest, DefaultLayoutIsValid) {
  const Inventory inventory = DefaultInventory();
  EXPECT_TRUE(ValidateItems(inventory.items).ok());
  EXPECT_EQ(ItemsOf(inventory, Dimension::kExhaustion).size(), 8u);
  EXPECT_EQ(ItemsOf(inventory, Dimension::kDisengagement).size(), 8u);
}

TEST(InventoryTest, ValidateRejectsUnbalancedDimensions) {
  Inventory inventory = DefaultInventory();
  for (OlbiItem& item : inventory.items) {
    if (item.dimension == Dimension::kDisengagement) {
      item.dimension = Dimension::kExhaustion;
      break;
    }
  }
  EXPECT_FALSE(ValidateItems(inventory.items).ok());
  inventory.items.pop_back();
  EXPECT_FALSE(ValidateItems(inventory.items).ok());
}

TEST(InventoryTest, JsonRoundTripAndShippedFileMatchDefault) {
  const Inventory inventory = DefaultInventory();
  auto parsed = ParseInventory(InventoryToJson(inventory));
  ASSERT_TRUE(parsed.ok()) << parsed.status();
  EXPECT_EQ(parsed->keying.transforms, inventory.keying.transforms);

  auto shipped = LoadInventory(std::string(BURNSCREEN_DATA_DIR) +
                               "/olbi_items.json");
  ASSERT_TRUE(shipped.ok()) << shipped.status();
  EXPECT_EQ(shipped->keying.transforms, inventory.keying.transforms);
  for (int i = 0; i < kNumItems; ++i) {
    EXPECT_EQ(shipped->items[i].dimension, inventory.items[i].dimension);
  }
}

TEST(InventoryTest, ExplicitTransformOverridesPolarity) {
  nlohmann::json document = InventoryToJson(DefaultInventory());
  document["items"][0]["transform"] = "reverse";
  auto parsed = ParseInventory(document);
  ASSERT_TRUE(parsed.ok());
  EXPECT_EQ(parsed->keying.ForItem(1), Transform::kReverse);
  document["items"][0]["transform"] = "sideways";
  EXPECT_FALSE(ParseInventory(document).ok());
}

TEST(ScoreInventoryTest, UniformAnswers) {
  const Inventory inventory = DefaultInventory();
  std::map<int, int> twos, fours;
  for (int id = 1; id <= kNumItems; ++id) {
    twos[id] = 2;
    fours[id] = 4;
  }
  auto two = ScoreInventory(ResponseFromCoded(inventory, twos), inventory);
  ASSERT_TRUE(two.ok());
  EXPECT_EQ(*two, (OlbiScore{2.0, 2.0, 32}));
  auto four = ScoreInventory(ResponseFromCoded(inventory, fours), inventory);
  ASSERT_TRUE(four.ok());
  EXPECT_EQ(*four, (OlbiScore{4.0, 4.0, 64}));
}

TEST(ScoreInventoryTest, HandSummedFixture) {
  const Inventory inventory = DefaultInventory();
  const std::vector<int> exhaustion_coded = {3, 3, 2, 4, 3, 2, 3, 3};
  const std::vector<int> disengagement_coded = {2, 2, 3, 2, 3, 2, 2, 2};
  std::map<int, int> coded;
  const auto exhaustion_ids = ItemsOf(inventory, Dimension::kExhaustion);
  const auto disengagement_ids = ItemsOf(inventory, Dimension::kDisengagement);
  for (size_t i = 0; i < 8; ++i) {
    coded[exhaustion_ids[i]] = exhaustion_coded[i];
    coded[disengagement_ids[i]] = disengagement_coded[i];
  }
  // Spreadsheet-style oracle: column sums divided by column length.
  const double oracle_exhaustion =
      std::accumulate(exhaustion_coded.begin(), exhaustion_coded.end(), 0) / 8.0;
  const double oracle_disengagement =
      std::accumulate(disengagement_coded.begin(), disengagement_coded.end(),
                      0) /
      8.0;
  ASSERT_DOUBLE_EQ(oracle_exhaustion, 2.875);
  ASSERT_DOUBLE_EQ(oracle_disengagement, 2.25);

  auto score = ScoreInventory(ResponseFromCoded(inventory, coded), inventory);
  ASSERT_TRUE(score.ok()) << score.status();
  EXPECT_DOUBLE_EQ(score->exhaustion_mean, 2.875);
  EXPECT_DOUBLE_EQ(score->disengagement_mean, 2.25);
  EXPECT_EQ(score->total, 41);
}

TEST(ScoreInventoryTest, MissingItemsAreListed) {
  const Inventory inventory = DefaultInventory();
  OlbiResponse response;
  for (int id = 1; id <= kNumItems; ++id) {
    if (id != 7 && id != 12) response.answers[id] = 2;
  }
  auto score = ScoreInventory(response, inventory);
  ASSERT_FALSE(score.ok());
  EXPECT_THAT(std::string(score.status().message()), HasSubstr("7, 12"));
}

TEST(ScoreInventoryTest, RejectsOutOfRangeAndUnknownItems) {
  const Inventory inventory = DefaultInventory();
  OlbiResponse response;
  for (int id = 1; id <= kNumItems; ++id) response.answers[id] = 2;
  response.answers[3] = 0;
  EXPECT_FALSE(ScoreInventory(response, inventory).ok());
  response.answers[3] = 2;
  response.answers[17] = 1;
  EXPECT_FALSE(ScoreInventory(response, inventory).ok());
}

TEST(ScoreInventoryTest, RandomResponsesStayInRangeAndKeyingIsStable) {
  const Inventory inventory = DefaultInventory();
  Rng rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    OlbiResponse response;
    for (int id = 1; id <= kNumItems; ++id) {
      response.answers[id] = 1 + static_cast<int>(rng.UniformInt(4));
    }
    auto score = ScoreInventory(response, inventory);
    ASSERT_TRUE(score.ok());
    EXPECT_GE(score->total, kMinTotal);
    EXPECT_LE(score->total, kMaxTotal);
    EXPECT_GE(score->exhaustion_mean, 1.0);
    EXPECT_LE(score->exhaustion_mean, 4.0);
    EXPECT_GE(score->disengagement_mean, 1.0);
    EXPECT_LE(score->disengagement_mean, 4.0);

    // Flipping an item's transform twice leaves the score unchanged.
    Inventory flipped = inventory;
    const int item = 1 + static_cast<int>(rng.UniformInt(kNumItems));
    for (int flip = 0; flip < 2; ++flip) {
      Transform& t = flipped.keying.transforms[item - 1];
      t = t == Transform::kIdentity ? Transform::kReverse : Transform::kIdentity;
    }
    EXPECT_EQ(*ScoreInventory(response, flipped), *score);
  }
}

}  // namespace
}  // namespace burnscreen::olbi
