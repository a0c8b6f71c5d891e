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

#include "corpus/cleaning.h"

#include <gtest/gtest.h>

#include "common/random.h"

namespace burnscreen::corpus {
namespace {

TextSample Generated(std::string text) {
  return {std::move(text), Label::kBurnout, Source::kGenerated, "müde sein"};
}

TEST(CleanSamplesTest, RemovesExactDuplicatesAfterWhitespaceNormalization) {
  const std::vector<TextSample> samples = {Generated("Ich bin müde."),
                                           Generated("Ich  bin müde. ")};
  const auto kept = CleanSamples(samples);
  ASSERT_EQ(kept.size(), 1u);
  EXPECT_EQ(kept[0].text, "Ich bin müde.");
}

TEST(CleanSamplesTest, RemovesTruncatedSentence) {
  const std::vector<TextSample> samples = {
      Generated("Der Stress hat mich längerfr")};
  const CleanReport report = CleanSamplesWithReport(samples);
  EXPECT_TRUE(report.kept.empty());
  ASSERT_EQ(report.removed.size(), 1u);
  EXPECT_EQ(report.removed[0].reason, RemovalReason::kPartialSentence);
}

TEST(CleanSamplesTest, RemovesEmptyAndSingleWord) {
  const std::vector<TextSample> samples = {Generated("müde"), Generated("   "),
                                           Generated("Sehr müde.")};
  const CleanReport report = CleanSamplesWithReport(samples);
  EXPECT_TRUE(report.kept.empty());
  EXPECT_EQ(report.removed[0].reason, RemovalReason::kTooShort);
  EXPECT_EQ(report.removed[1].reason, RemovalReason::kEmpty);
  EXPECT_EQ(report.removed[2].reason, RemovalReason::kTooShort);
}

TEST(CleanSamplesTest, SurveyOptionsOnlyDropEmptyAndSingleWord) {
  const std::vector<TextSample> samples = {
      {"müde", Label::kBurnout, Source::kSurvey, {}},
      {"", Label::kBurnout, Source::kSurvey, {}},
      {"eigentlich ganz gut", Label::kBurnout, Source::kSurvey, {}},
      {"eigentlich ganz gut", Label::kBurnout, Source::kSurvey, {}}};
  const auto kept = CleanSamples(samples, CleanOptions::SurveyAnswer());
  EXPECT_EQ(kept.size(), 2u);
}

TEST(CleanSamplesTest, KeepsOriginExpressionAndLabel) {
  const std::vector<TextSample> samples = {Generated("Ich bin heute sehr müde!")};
  const auto kept = CleanSamples(samples);
  ASSERT_EQ(kept.size(), 1u);
  EXPECT_EQ(kept[0].origin_expression, "müde sein");
  EXPECT_EQ(kept[0].label, Label::kBurnout);
}

TEST(CleanSamplesTest, Idempotent) {
  const std::vector<std::string> pool = {
      "Ich bin müde.", " Ich bin  müde.", "müde", "Das ist zu viel!",
      "Warum nur?", "Der Tag war", "", "Alles   gut so.", "Alles gut so."};
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<TextSample> samples;
    const int n = static_cast<int>(rng.UniformInt(12));
    for (int i = 0; i < n; ++i) {
      samples.push_back(Generated(pool[rng.UniformInt(pool.size())]));
    }
    const auto once = CleanSamples(samples);
    EXPECT_EQ(CleanSamples(once), once);
  }
}

}  // namespace
}  // namespace burnscreen::corpus
