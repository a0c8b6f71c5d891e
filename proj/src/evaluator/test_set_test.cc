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

#include "evaluator/test_set.h"

#include <gtest/gtest.h>

#include <map>

#include "common/random.h"

namespace burnscreen::evaluator {
namespace {

std::vector<SurveyRecord> Fixture() {
  return *LoadSurveyRecords(std::string(BURNSCREEN_DATA_DIR) +
                            "/demo/survey_fixture.jsonl");
}

SurveyRecord RandomRecord(Rng& rng, int index) {
  SurveyRecord r;
  r.respondent_id = "r" + std::to_string(index);
  r.olbi.respondent_id = r.respondent_id;
  for (int item = 1; item <= 16; ++item) {
    r.olbi.answers[item] = 1 + static_cast<int>(rng.UniformInt(4));
  }
  const char* pool[] = {"", "müde", "Ich bin oft sehr müde.", "geht so",
                        "Alles gut bei mir."};
  for (auto& answer : r.answers) answer = pool[rng.UniformInt(5)];
  return r;
}

TEST(AssembleTestSetTest, FixtureYieldsSixtySixTexts) {
  const auto records = Fixture();
  const auto rules = olbi::ReportingCutoffs();
  auto set = AssembleTestSet(records, olbi::DefaultInventory(), rules);
  ASSERT_TRUE(set.ok()) << set.status();
  EXPECT_EQ(set->texts.size(), 66u);
  EXPECT_EQ(set->dropped_answers, 2);
  EXPECT_TRUE(set->excluded_respondents.empty());
  EXPECT_EQ(set->scores.size(), 17u);
}

TEST(AssembleTestSetTest, SingleRespondentBelowRule) {
  SurveyRecord r;
  r.respondent_id = "solo";
  for (int item = 1; item <= 16; ++item) r.olbi.answers[item] = 2;
  r.answers = {"Ich arbeite gern hier.", "Mir geht es gut.",
               "Das Team ist nett.", "Keine weiteren Anmerkungen."};
  // Raw 2 everywhere codes to 2 or 3, means 2.5 / 2.5: under cut-off 2.
  const olbi::CutoffRule rule = olbi::CutoffRule::Get(olbi::CutoffName::kCutoff2Working);
  const std::vector<SurveyRecord> records = {r};
  auto set = AssembleTestSet(records, olbi::DefaultInventory(),
                             std::span(&rule, 1));
  ASSERT_TRUE(set.ok());
  ASSERT_EQ(set->texts.size(), 4u);
  for (const LabeledText& t : set->texts) {
    EXPECT_EQ(t.labels.at(rule.name), Label::kNoBurnout);
  }
}

TEST(AssembleTestSetTest, AllEmptyRespondentIsExcludedButScored) {
  auto records = Fixture();
  records[0].answers = {"", " ", "ok", ""};
  const auto rules = olbi::ReportingCutoffs();
  auto set = AssembleTestSet(records, olbi::DefaultInventory(), rules);
  ASSERT_TRUE(set.ok());
  ASSERT_EQ(set->excluded_respondents.size(), 1u);
  EXPECT_EQ(set->excluded_respondents[0], records[0].respondent_id);
  EXPECT_EQ(set->scores.size(), 17u);
}

TEST(AssembleTestSetTest, LabelsComeOnlyFromTheRespondentScore) {
  Rng rng(21);
  const auto rules = olbi::ReportingCutoffs();
  const olbi::Inventory inventory = olbi::DefaultInventory();
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<SurveyRecord> records;
    for (int i = 0; i < 8; ++i) records.push_back(RandomRecord(rng, i));
    auto set = AssembleTestSet(records, inventory, rules);
    ASSERT_TRUE(set.ok());
    std::map<std::string, std::map<olbi::CutoffName, Label>> seen;
    for (const LabeledText& t : set->texts) {
      const SurveyRecord& r = records[std::stoi(t.respondent_id.substr(1))];
      const olbi::OlbiScore score = *olbi::ScoreInventory(r.olbi, inventory);
      for (const olbi::CutoffRule& rule : rules) {
        EXPECT_EQ(t.labels.at(rule.name), olbi::Classify(score, rule));
      }
      auto [it, inserted] = seen.emplace(t.respondent_id, t.labels);
      if (!inserted) EXPECT_EQ(it->second, t.labels);
      EXPECT_GE(t.text.find(' '), 1u);
    }
  }
}

}  // namespace
}  // namespace burnscreen::evaluator
