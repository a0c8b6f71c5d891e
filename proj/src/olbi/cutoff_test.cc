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

#include "olbi/cutoff.h"

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "common/random.h"

namespace burnscreen::olbi {
namespace {

using ::testing::HasSubstr;

OlbiScore RandomScore(Rng& rng) {
  const int exhaustion_sum = 8 + static_cast<int>(rng.UniformInt(25));
  const int disengagement_sum = 8 + static_cast<int>(rng.UniformInt(25));
  return {exhaustion_sum / 8.0, disengagement_sum / 8.0,
          exhaustion_sum + disengagement_sum};
}

TEST(CutoffRuleTest, Thresholds) {
  const CutoffRule c1 = CutoffRule::Get(CutoffName::kCutoff1);
  EXPECT_EQ(*c1.exhaustion_threshold, 2.25);
  EXPECT_EQ(*c1.disengagement_threshold, 2.1);
  const CutoffRule c2w = CutoffRule::Get(CutoffName::kCutoff2Working);
  EXPECT_EQ(*c2w.exhaustion_threshold, 2.85);
  EXPECT_EQ(*c2w.disengagement_threshold, 2.6);
  const CutoffRule c2c = CutoffRule::Get(CutoffName::kCutoff2Clinical);
  EXPECT_EQ(*c2c.exhaustion_threshold, 3.13);
  EXPECT_EQ(*c2c.disengagement_threshold, 2.72);
  const CutoffRule c3 = CutoffRule::Get(CutoffName::kCutoff3Total);
  EXPECT_EQ(*c3.total_threshold, 35);
  EXPECT_FALSE(c3.exhaustion_threshold.has_value());
}

TEST(ClassifyTest, Examples) {
  const CutoffRule c1 = CutoffRule::Get(CutoffName::kCutoff1);
  EXPECT_EQ(Classify({2.25, 2.10, 0}, c1), Label::kBurnout);
  EXPECT_EQ(Classify({2.24, 4.00, 0}, c1), Label::kNoBurnout);
  EXPECT_EQ(Classify({1.0, 1.0, 35}, CutoffRule::Get(CutoffName::kCutoff3Total)),
            Label::kBurnout);
  EXPECT_EQ(Classify({4.0, 4.0, 34}, CutoffRule::Get(CutoffName::kCutoff3Total)),
            Label::kNoBurnout);
}

TEST(ClassifyTest, MonotoneInEveryInput) {
  Rng rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const OlbiScore base = RandomScore(rng);
    OlbiScore raised = base;
    raised.exhaustion_mean += rng.Uniform01();
    raised.disengagement_mean += rng.Uniform01();
    raised.total += static_cast<int>(rng.UniformInt(5));
    for (CutoffName name : kAllCutoffs) {
      const CutoffRule rule = CutoffRule::Get(name);
      if (Classify(base, rule) == Label::kBurnout) {
        EXPECT_EQ(Classify(raised, rule), Label::kBurnout);
      }
    }
  }
}

TEST(ClassifyTest, RulesAreNested) {
  Rng rng(12);
  for (int trial = 0; trial < 2000; ++trial) {
    const OlbiScore score = RandomScore(rng);
    const Label clinical =
        Classify(score, CutoffRule::Get(CutoffName::kCutoff2Clinical));
    const Label working =
        Classify(score, CutoffRule::Get(CutoffName::kCutoff2Working));
    const Label first = Classify(score, CutoffRule::Get(CutoffName::kCutoff1));
    if (clinical == Label::kBurnout) EXPECT_EQ(working, Label::kBurnout);
    if (working == Label::kBurnout) EXPECT_EQ(first, Label::kBurnout);
  }
}

TEST(CutoffFlagTest, ParsesCliSpellings) {
  EXPECT_EQ(ParseCutoffFlag("1"), CutoffName::kCutoff1);
  EXPECT_EQ(ParseCutoffFlag("2w"), CutoffName::kCutoff2Working);
  EXPECT_EQ(ParseCutoffFlag("2c"), CutoffName::kCutoff2Clinical);
  EXPECT_EQ(ParseCutoffFlag("3"), CutoffName::kCutoff3Total);
  EXPECT_EQ(ParseCutoffFlag("cutoff2_clinical"), CutoffName::kCutoff2Clinical);
  EXPECT_FALSE(ParseCutoffFlag("4").has_value());
  EXPECT_EQ(ReportingCutoffs(Cutoff2Variant::kClinical)[1].name,
            CutoffName::kCutoff2Clinical);
}

TEST(LabelDistributionTest, EmptyInputIsAnError) {
  const auto rules = ReportingCutoffs();
  auto table = LabelDistribution({}, rules);
  ASSERT_FALSE(table.ok());
}

TEST(LabelDistributionTest, SingleLowScore) {
  const std::vector<OlbiScore> scores = {{1.5, 1.5, 24}};
  std::vector<CutoffRule> rules;
  for (CutoffName name : kAllCutoffs) rules.push_back(CutoffRule::Get(name));
  auto table = LabelDistribution(scores, rules);
  ASSERT_TRUE(table.ok());
  for (const RuleLabelCount& row : *table) {
    EXPECT_EQ(row.counts, (LabelCounts{0, 1}));
  }
}

TEST(LabelDistributionTest, SeventeenFixtureHitsFirstRow) {
  std::vector<OlbiScore> scores;
  for (int i = 0; i < 4; ++i) scores.push_back({2.5, 2.25, 38});
  for (int i = 0; i < 13; ++i) scores.push_back({2.0, 2.0, 32});
  const std::vector<CutoffRule> rules = {CutoffRule::Get(CutoffName::kCutoff1)};
  auto table = LabelDistribution(scores, rules);
  ASSERT_TRUE(table.ok());
  EXPECT_EQ((*table)[0].counts, (LabelCounts{4, 13}));
}

TEST(LabelDistributionTest, MatchesPerScoreReclassification) {
  Rng rng(21);
  std::vector<OlbiScore> scores;
  for (int i = 0; i < 10; ++i) scores.push_back(RandomScore(rng));
  std::vector<CutoffRule> rules;
  for (CutoffName name : kAllCutoffs) rules.push_back(CutoffRule::Get(name));
  auto table = LabelDistribution(scores, rules);
  ASSERT_TRUE(table.ok());
  for (const RuleLabelCount& row : *table) {
    int burnout = 0;
    for (const OlbiScore& s : scores) {
      if (Classify(s, row.rule) == Label::kBurnout) ++burnout;
    }
    EXPECT_EQ(row.counts.burnout, burnout);
    EXPECT_EQ(row.counts.total(), 10);
  }
}

TEST(RenderTest, DistributionTableShape) {
  const std::vector<RuleLabelCount> table = {
      {CutoffRule::Get(CutoffName::kCutoff1), {4, 13}},
      {CutoffRule::Get(CutoffName::kCutoff3Total), {7, 10}}};
  const std::string rendered = RenderDistributionTable(table);
  EXPECT_THAT(rendered, HasSubstr("Nr. Burnout (Label 1)"));
  EXPECT_THAT(rendered, HasSubstr("Cut-Off Value 3"));
  const std::string tsv = DistributionTableTsv(table);
  EXPECT_THAT(tsv, HasSubstr("cutoff1\t4\t13\n"));
}

TEST(RenderTest, ScoresTsvHasLabelPerRule) {
  const std::vector<ScoredRespondent> rows = {{"abc", {2.875, 2.25, 41}}};
  const std::string tsv = ScoresTsv(rows);
  EXPECT_THAT(tsv, HasSubstr("label_cutoff3_total"));
  EXPECT_THAT(tsv, HasSubstr("abc\t2.8750\t2.2500\t41\t1\t0\t0\t1\n"));
}

}  // namespace
}  // namespace burnscreen::olbi
