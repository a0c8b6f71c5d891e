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

#ifndef BURNSCREEN_CORPUS_AUGMENTATION_H_
#define BURNSCREEN_CORPUS_AUGMENTATION_H_

#include <chrono>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "common/label.h"
#include "corpus/clients.h"
#include "corpus/dataset.h"
#include "json.hpp"

namespace burnscreen::corpus {

// Fixed instruction that precedes every batch of expressions.
inline constexpr std::string_view kPromptTemplate =
    "Generate 10 sentences each in German for the following expressions. The "
    "sentences should represent the wording of a person being in this kind of "
    "mental state:";
inline constexpr std::string_view kExpressionSeparator = ", ";
inline constexpr int kDefaultBatchSize = 20;
inline constexpr int kSentencesPerExpression = 10;

struct AugmentationJob {
  int index = 0;
  // Inherited by every sentence generated from this batch.
  Label label = Label::kBurnout;
  std::vector<std::string> expressions;
  std::string prompt;
  int requested_sentences_per_expression = kSentencesPerExpression;
};

// kPromptTemplate, one space, then the expressions joined by ", ".
std::string BuildPrompt(std::span<const std::string> expressions);

// ceil(n / batch_size) jobs in input order. Job indices start at
// `first_index` so burnout and control batches can share one numbering.
std::vector<AugmentationJob> MakePrompts(
    std::span<const std::string> expressions, Label label = Label::kBurnout,
    int batch_size = kDefaultBatchSize, int first_index = 0);

// Raw text held back for manual review.
struct QuarantineEntry {
  int job_index = 0;
  std::string reason;
  std::string raw_text;
};

nlohmann::json QuarantineToJson(const QuarantineEntry& entry);

struct ParsedCompletion {
  std::vector<TextSample> candidates;
  std::vector<QuarantineEntry> quarantined;
};

// Every non-empty line is one candidate sentence. A line naming one of the
// job's expressions (optionally decorated as a markdown heading, list item or
// with a trailing colon) opens that expression's section. Lines outside any
// section are attributed to the single expression they mention, or to the
// only expression of a one-expression job; anything else is quarantined.
ParsedCompletion ParseCompletion(const AugmentationJob& job,
                                 std::string_view completion);

struct AugmentationOptions {
  int max_parallel = 4;
  int max_attempts = 3;
  std::chrono::milliseconds retry_backoff{200};
};

// One archived exchange, kept verbatim for audit and for replay.
struct CompletionRecord {
  int job_index = 0;
  Label label = Label::kBurnout;
  std::vector<std::string> expressions;
  std::string prompt;
  std::string completion;
  int attempts = 0;
};

nlohmann::json CompletionRecordToJson(const CompletionRecord& record);

// A job whose client calls kept failing; `expressions` preserves the batch so
// it can be retried later.
struct JobFailure {
  int job_index = 0;
  std::vector<std::string> expressions;
  absl::Status status;
  int attempts = 0;
};

struct AugmentationResult {
  std::vector<TextSample> candidates;
  std::vector<QuarantineEntry> quarantined;
  std::vector<CompletionRecord> completions;
  std::vector<JobFailure> failures;
};

// Runs jobs with at most `max_parallel` concurrent client calls and up to
// `max_attempts` attempts per job. Output order follows job order regardless
// of completion order. The client must tolerate concurrent calls.
AugmentationResult RunAugmentation(std::span<const AugmentationJob> jobs,
                                   TextGenerationClient& client,
                                   const AugmentationOptions& options = {});

}  // namespace burnscreen::corpus

#endif  // BURNSCREEN_CORPUS_AUGMENTATION_H_
