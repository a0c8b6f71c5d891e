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

#ifndef BURNSCREEN_CORPUS_CLEANING_H_
#define BURNSCREEN_CORPUS_CLEANING_H_

#include <span>
#include <string>
#include <vector>

#include "corpus/dataset.h"

namespace burnscreen::corpus {

struct CleanOptions {
  bool deduplicate = true;
  // Texts not ending in '.', '!' or '?' count as partial sentences.
  bool require_terminal_punctuation = true;
  // Texts with fewer word tokens are dropped. 2 drops empty and single-word
  // texts only.
  int min_words = 3;

  // Rules for generated sentences.
  static CleanOptions GeneratedText() { return {}; }
  // Survey answers: only empty and single-word answers are dropped.
  static CleanOptions SurveyAnswer() { return {false, false, 2}; }
};

enum class RemovalReason { kEmpty, kTooShort, kPartialSentence, kDuplicate };

std::string_view RemovalReasonName(RemovalReason reason);

struct RemovedSample {
  TextSample sample;
  RemovalReason reason;
};

struct CleanReport {
  std::vector<TextSample> kept;
  // Removed samples go to a quarantine file so a reviewer can override.
  std::vector<RemovedSample> removed;
};

// Output texts are whitespace-normalized. Idempotent for any options.
CleanReport CleanSamplesWithReport(
    std::span<const TextSample> samples,
    const CleanOptions& options = CleanOptions::GeneratedText());

std::vector<TextSample> CleanSamples(
    std::span<const TextSample> samples,
    const CleanOptions& options = CleanOptions::GeneratedText());

}  // namespace burnscreen::corpus

#endif  // BURNSCREEN_CORPUS_CLEANING_H_
