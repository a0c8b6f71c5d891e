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

#include <set>

#include "common/text.h"

namespace burnscreen::corpus {

std::string_view RemovalReasonName(RemovalReason reason) {
  switch (reason) {
    case RemovalReason::kEmpty:
      return "empty";
    case RemovalReason::kTooShort:
      return "too_short";
    case RemovalReason::kPartialSentence:
      return "partial_sentence";
    case RemovalReason::kDuplicate:
      return "duplicate";
  }
  return "unknown";
}

CleanReport CleanSamplesWithReport(std::span<const TextSample> samples,
                                   const CleanOptions& options) {
  CleanReport report;
  std::set<std::string> seen;
  for (const TextSample& original : samples) {
    TextSample sample = original;
    sample.text = text::NormalizeWhitespace(original.text);
    const int words = text::CountWords(sample.text);
    std::optional<RemovalReason> reason;
    if (words == 0) {
      reason = RemovalReason::kEmpty;
    } else if (words < options.min_words) {
      reason = RemovalReason::kTooShort;
    } else if (options.require_terminal_punctuation &&
               !text::EndsWithTerminalPunctuation(sample.text)) {
      reason = RemovalReason::kPartialSentence;
    } else if (options.deduplicate && !seen.insert(sample.text).second) {
      reason = RemovalReason::kDuplicate;
    }
    if (reason) {
      report.removed.push_back({std::move(sample), *reason});
    } else {
      report.kept.push_back(std::move(sample));
    }
  }
  return report;
}

std::vector<TextSample> CleanSamples(std::span<const TextSample> samples,
                                     const CleanOptions& options) {
  return CleanSamplesWithReport(samples, options).kept;
}

}  // namespace burnscreen::corpus
