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

#include "corpus/augmentation.h"

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <atomic>
#include <map>
#include <mutex>
#include <thread>

#include "fmt/format.h"

namespace burnscreen::corpus {
namespace {

using ::testing::HasSubstr;

std::vector<std::string> NumberedExpressions(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(fmt::format("Ausdruck {}", i));
  return out;
}

std::string ListCompletion(std::span<const std::string> expressions,
                           int lines_per_expression) {
  std::string out;
  for (const std::string& e : expressions) {
    out += fmt::format("**{}:**\n", e);
    for (int i = 1; i <= lines_per_expression; ++i) {
      out += fmt::format("{}. Satz {} über {}.\n", i, i, e);
    }
    out += "\n";
  }
  return out;
}

TEST(MakePromptsTest, FortyFiveExpressionsGiveThreeBatches) {
  const auto expressions = NumberedExpressions(45);
  const auto jobs = MakePrompts(expressions);
  ASSERT_EQ(jobs.size(), 3u);
  EXPECT_EQ(jobs[0].expressions.size(), 20u);
  EXPECT_EQ(jobs[1].expressions.size(), 20u);
  EXPECT_EQ(jobs[2].expressions.size(), 5u);
  size_t next = 0;
  for (const AugmentationJob& job : jobs) {
    EXPECT_TRUE(job.prompt.starts_with(kPromptTemplate));
    for (const std::string& e : job.expressions) {
      EXPECT_EQ(e, expressions[next++]);
      EXPECT_THAT(job.prompt, HasSubstr(e));
    }
  }
  EXPECT_EQ(next, expressions.size());
}

TEST(MakePromptsTest, EmptyAndIndexing) {
  EXPECT_TRUE(MakePrompts({}).empty());
  const auto expressions = NumberedExpressions(21);
  const auto jobs = MakePrompts(expressions, Label::kNoBurnout, 20, 7);
  ASSERT_EQ(jobs.size(), 2u);
  EXPECT_EQ(jobs[0].index, 7);
  EXPECT_EQ(jobs[1].index, 8);
  EXPECT_EQ(jobs[1].label, Label::kNoBurnout);
}

TEST(BuildPromptTest, ExactFormat) {
  const std::vector<std::string> expressions = {"Abstumpfung", "Zynismus"};
  EXPECT_EQ(BuildPrompt(expressions),
            std::string(kPromptTemplate) + " Abstumpfung, Zynismus");
}

TEST(ParseCompletionTest, TenLinesPerExpressionGiveTwoHundredCandidates) {
  const auto jobs = MakePrompts(NumberedExpressions(20));
  const ParsedCompletion parsed =
      ParseCompletion(jobs[0], ListCompletion(jobs[0].expressions, 10));
  EXPECT_EQ(parsed.candidates.size(), 200u);
  EXPECT_TRUE(parsed.quarantined.empty());
  std::map<std::string, int> per_expression;
  for (const TextSample& s : parsed.candidates) {
    ASSERT_TRUE(s.origin_expression.has_value());
    EXPECT_THAT(s.text, HasSubstr(*s.origin_expression));
    EXPECT_EQ(s.source, Source::kGenerated);
    ++per_expression[*s.origin_expression];
  }
  for (const auto& [e, n] : per_expression) EXPECT_EQ(n, 10) << e;
}

TEST(ParseCompletionTest, ShortCompletionKeepsWhatItGot) {
  const std::vector<std::string> one = {"Abstumpfung"};
  const auto jobs = MakePrompts(one);
  const ParsedCompletion parsed =
      ParseCompletion(jobs[0], ListCompletion(one, 7));
  EXPECT_EQ(parsed.candidates.size(), 7u);
}

TEST(ParseCompletionTest, EmptyCompletionIsQuarantined) {
  const auto jobs = MakePrompts(NumberedExpressions(3));
  const ParsedCompletion parsed = ParseCompletion(jobs[0], "  \n");
  EXPECT_TRUE(parsed.candidates.empty());
  ASSERT_EQ(parsed.quarantined.size(), 1u);
  EXPECT_EQ(parsed.quarantined[0].job_index, 0);
}

TEST(ParseCompletionTest, HeadingVariantsAreRecognized) {
  const std::vector<std::string> expressions = {"Zynismus", "Abstumpfung"};
  const auto jobs = MakePrompts(expressions, Label::kBurnout);
  const std::string completion =
      "### Zynismus\n- Alles ist doch egal.\n"
      "2) abstumpfung:\n* Mich berührt nichts mehr.\n";
  const ParsedCompletion parsed = ParseCompletion(jobs[0], completion);
  ASSERT_EQ(parsed.candidates.size(), 2u);
  EXPECT_EQ(parsed.candidates[0].text, "Alles ist doch egal.");
  EXPECT_EQ(parsed.candidates[0].origin_expression, "Zynismus");
  EXPECT_EQ(parsed.candidates[1].origin_expression, "Abstumpfung");
  EXPECT_EQ(parsed.candidates[1].label, Label::kBurnout);
}

TEST(ParseCompletionTest, UnattributableLinesAreQuarantined) {
  const std::vector<std::string> expressions = {"Zynismus", "Abstumpfung"};
  const auto jobs = MakePrompts(expressions);
  const ParsedCompletion parsed =
      ParseCompletion(jobs[0], "Hier sind Ihre Sätze.\n");
  EXPECT_TRUE(parsed.candidates.empty());
  EXPECT_EQ(parsed.quarantined.size(), 1u);
}

class FakeClient : public TextGenerationClient {
 public:
  explicit FakeClient(int failures_before_success)
      : failures_before_success_(failures_before_success) {}
  absl::StatusOr<std::string> Complete(std::string_view prompt) override {
    std::lock_guard lock(mu_);
    int& seen = calls_[std::string(prompt)];
    ++seen;
    if (failures_before_success_ < 0 || seen <= failures_before_success_) {
      return absl::UnavailableError("rate limited");
    }
    return std::string("**x:**\n1. Ein Satz hier.\n");
  }

 private:
  int failures_before_success_;
  std::mutex mu_;
  std::map<std::string, int> calls_;
};

TEST(RunAugmentationTest, OutputFollowsJobOrder) {
  const auto jobs = MakePrompts(NumberedExpressions(45), Label::kBurnout, 5);
  SyntheticCompletionClient client(3);
  AugmentationOptions options;
  options.max_parallel = 4;
  const AugmentationResult result = RunAugmentation(jobs, client, options);
  ASSERT_EQ(result.completions.size(), jobs.size());
  for (size_t i = 0; i < jobs.size(); ++i) {
    EXPECT_EQ(result.completions[i].job_index, jobs[i].index);
    EXPECT_EQ(result.completions[i].prompt, jobs[i].prompt);
  }
  SyntheticCompletionClient again(3);
  options.max_parallel = 1;
  EXPECT_EQ(RunAugmentation(jobs, again, options).candidates,
            result.candidates);
}

TEST(RunAugmentationTest, RetriesThenSucceeds) {
  const std::vector<std::string> one = {"x"};
  const auto jobs = MakePrompts(one);
  FakeClient client(2);
  AugmentationOptions options;
  options.retry_backoff = std::chrono::milliseconds(0);
  const AugmentationResult result = RunAugmentation(jobs, client, options);
  EXPECT_TRUE(result.failures.empty());
  ASSERT_EQ(result.completions.size(), 1u);
  EXPECT_EQ(result.completions[0].attempts, 3);
  EXPECT_EQ(result.candidates.size(), 1u);
}

TEST(RunAugmentationTest, PersistentFailureIsReportedWithBatch) {
  const std::vector<std::string> expressions = {"x", "y"};
  const auto jobs = MakePrompts(expressions);
  FakeClient client(-1);
  AugmentationOptions options;
  options.retry_backoff = std::chrono::milliseconds(0);
  const AugmentationResult result = RunAugmentation(jobs, client, options);
  ASSERT_EQ(result.failures.size(), 1u);
  EXPECT_EQ(result.failures[0].expressions, expressions);
  EXPECT_EQ(result.failures[0].attempts, 3);
  EXPECT_EQ(result.failures[0].status.code(), absl::StatusCode::kUnavailable);
  EXPECT_TRUE(result.candidates.empty());
}

TEST(RunAugmentationTest, RespectsParallelismBound) {
  class CountingClient : public TextGenerationClient {
   public:
    absl::StatusOr<std::string> Complete(std::string_view) override {
      const int now = ++active_;
      int seen = peak_.load();
      while (now > seen && !peak_.compare_exchange_weak(seen, now)) {
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(5));
      --active_;
      return std::string();
    }
    std::atomic<int> active_{0};
    std::atomic<int> peak_{0};
  };
  const auto jobs = MakePrompts(NumberedExpressions(12), Label::kBurnout, 1);
  CountingClient client;
  AugmentationOptions options;
  options.max_parallel = 3;
  RunAugmentation(jobs, client, options);
  EXPECT_LE(client.peak_.load(), 3);
}

}  // namespace
}  // namespace burnscreen::corpus
