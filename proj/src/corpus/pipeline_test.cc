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

#include "corpus/pipeline.h"

#include <gtest/gtest.h>

#include <map>

#include "corpus/builder.h"
#include "corpus/expression_table.h"

namespace burnscreen::corpus {
namespace {

Dataset DemoV1() {
  auto records = LoadExpressionTable(std::string(BURNSCREEN_DATA_DIR) +
                                     "/demo/expressions.tsv");
  return *BuildV1(*records);
}

TEST(BuildV2Test, DemoTableWithSyntheticClient) {
  const Dataset v1 = DemoV1();
  SyntheticCompletionClient client(0);
  auto build = BuildV2(v1, client);
  ASSERT_TRUE(build.ok()) << build.status();
  // 96 burnout and 92 control expressions in batches of 20.
  ASSERT_EQ(build->jobs.size(), 5u + 5u);
  EXPECT_EQ(build->jobs[5].index, 5);
  EXPECT_EQ(build->jobs[5].label, Label::kNoBurnout);
  EXPECT_TRUE(build->augmentation.failures.empty());
  EXPECT_EQ(build->dataset.name, DatasetName::kV2);
  EXPECT_EQ(build->dataset.Counts(), (LabelCounts{897, 861}));
  EXPECT_EQ(build->cleaning.kept.size() + build->cleaning.removed.size(),
            build->augmentation.candidates.size());
  for (const TextSample& sample : build->dataset.samples) {
    ASSERT_TRUE(sample.origin_expression.has_value());
    EXPECT_FALSE(sample.origin_expression->empty());
    EXPECT_EQ(sample.source, Source::kGenerated);
  }
}

TEST(BuildV2Test, LabelsFollowTheBatch) {
  const Dataset v1 = DemoV1();
  SyntheticCompletionClient client(0);
  auto build = BuildV2(v1, client);
  ASSERT_TRUE(build.ok());
  std::map<std::string, Label> expression_label;
  for (const TextSample& s : v1.samples) expression_label[s.text] = s.label;
  for (const TextSample& s : build->dataset.samples) {
    EXPECT_EQ(s.label, expression_label.at(*s.origin_expression));
  }
}

TEST(BuildV2Test, EmptyInputIsAnError) {
  SyntheticCompletionClient client(0);
  EXPECT_FALSE(BuildV2(Dataset{}, client).ok());
}

}  // namespace
}  // namespace burnscreen::corpus
