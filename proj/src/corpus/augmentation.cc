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

#include <algorithm>
#include <atomic>
#include <optional>
#include <thread>

#include "common/strings.h"
#include "common/text.h"

namespace burnscreen::corpus {

namespace {

bool IsQuote(char32_t c) {
  return c == U'"' || c == U'\'' || c == 0x201E || c == 0x201C ||
         c == 0x201D || c == 0xAB || c == 0xBB || c == 0x2018 || c == 0x2019;
}

// Removes a leading "12." / "3)" / "-" / "*" / "•" list marker.
std::u32string StripListMarker(std::u32string line) {
  size_t i = 0;
  while (i < line.size() && line[i] >= U'0' && line[i] <= U'9') ++i;
  if (i > 0 && i < line.size() && (line[i] == U'.' || line[i] == U')')) {
    line.erase(0, i + 1);
  } else if (!line.empty() && (line[0] == U'-' || line[0] == U'*' ||
                               line[0] == 0x2022) &&
             (line.size() == 1 || line[1] == U' ')) {
    line.erase(0, 1);
  }
  return text::DecodeUtf8(text::Trim(text::EncodeUtf8(line)));
}

std::u32string StripQuotes(std::u32string line) {
  if (line.size() >= 2 && IsQuote(line.front()) && IsQuote(line.back())) {
    line = line.substr(1, line.size() - 2);
  }
  return line;
}

std::u32string Lowercase(std::u32string s) {
  for (char32_t& c : s) {
    if (c >= U'A' && c <= U'Z') {
      c = c - U'A' + U'a';
    } else if (c == U'Ä') {
      c = U'ä';
    } else if (c == U'Ö') {
      c = U'ö';
    } else if (c == U'Ü') {
      c = U'ü';
    }
  }
  return s;
}

// Heading key: markdown markers, list marker, trailing colon and quotes
// removed, lowercased.
std::u32string HeadingKey(std::string_view line) {
  std::u32string s = text::DecodeUtf8(text::Trim(line));
  std::u32string without_markup;
  for (char32_t c : s) {
    if (c != U'*' && c != U'_' && c != U'#') without_markup.push_back(c);
  }
  s = text::DecodeUtf8(text::Trim(text::EncodeUtf8(without_markup)));
  s = StripListMarker(s);
  while (!s.empty() && (s.back() == U':' || s.back() == U' ')) s.pop_back();
  s = StripQuotes(s);
  return Lowercase(s);
}

std::string CandidateText(std::string_view line) {
  std::u32string s = text::DecodeUtf8(text::Trim(line));
  s = StripListMarker(s);
  s = StripQuotes(s);
  return text::NormalizeWhitespace(text::EncodeUtf8(s));
}

}  // namespace

std::string BuildPrompt(std::span<const std::string> expressions) {
  std::string prompt(kPromptTemplate);
  prompt.push_back(' ');
  for (size_t i = 0; i < expressions.size(); ++i) {
    if (i > 0) prompt += kExpressionSeparator;
    prompt += expressions[i];
  }
  return prompt;
}

std::vector<AugmentationJob> MakePrompts(std::span<const std::string> expressions,
                                         Label label, int batch_size,
                                         int first_index) {
  std::vector<AugmentationJob> jobs;
  if (batch_size <= 0) batch_size = kDefaultBatchSize;
  for (size_t start = 0; start < expressions.size();
       start += static_cast<size_t>(batch_size)) {
    const size_t end =
        std::min(expressions.size(), start + static_cast<size_t>(batch_size));
    AugmentationJob job;
    job.index = first_index + static_cast<int>(jobs.size());
    job.label = label;
    job.expressions.assign(expressions.begin() + start,
                           expressions.begin() + end);
    job.prompt = BuildPrompt(job.expressions);
    jobs.push_back(std::move(job));
  }
  return jobs;
}

nlohmann::json QuarantineToJson(const QuarantineEntry& entry) {
  return {{"job_index", entry.job_index},
          {"reason", entry.reason},
          {"raw_text", entry.raw_text}};
}

ParsedCompletion ParseCompletion(const AugmentationJob& job,
                                 std::string_view completion) {
  ParsedCompletion parsed;
  if (text::Trim(completion).empty()) {
    parsed.quarantined.push_back(
        {job.index, "empty completion", std::string(completion)});
    return parsed;
  }
  std::vector<std::u32string> keys;
  keys.reserve(job.expressions.size());
  for (const std::string& expression : job.expressions) {
    keys.push_back(Lowercase(text::DecodeUtf8(expression)));
  }

  std::optional<size_t> current;
  for (const std::string& raw_line : text::SplitLines(completion)) {
    if (text::Trim(raw_line).empty()) continue;
    const std::u32string heading = HeadingKey(raw_line);
    const auto match = std::find(keys.begin(), keys.end(), heading);
    if (match != keys.end()) {
      current = static_cast<size_t>(match - keys.begin());
      continue;
    }
    const std::string candidate = CandidateText(raw_line);
    if (candidate.empty()) continue;

    std::optional<size_t> owner = current;
    if (!owner) {
      const std::u32string lowered = Lowercase(text::DecodeUtf8(candidate));
      std::vector<size_t> mentioned;
      for (size_t k = 0; k < keys.size(); ++k) {
        if (!keys[k].empty() && lowered.find(keys[k]) != std::u32string::npos) {
          mentioned.push_back(k);
        }
      }
      if (mentioned.size() == 1) {
        owner = mentioned.front();
      } else if (job.expressions.size() == 1) {
        owner = 0;
      }
    }
    if (!owner) {
      parsed.quarantined.push_back(
          {job.index, "line not attributable to an expression", raw_line});
      continue;
    }
    parsed.candidates.push_back({candidate, job.label, Source::kGenerated,
                                 job.expressions[*owner]});
  }
  if (parsed.candidates.empty() && parsed.quarantined.empty()) {
    parsed.quarantined.push_back(
        {job.index, "no candidate sentences", std::string(completion)});
  }
  return parsed;
}

nlohmann::json CompletionRecordToJson(const CompletionRecord& record) {
  return {{"job_index", record.job_index},
          {"label", LabelValue(record.label)},
          {"expressions", record.expressions},
          {"prompt", record.prompt},
          {"completion", record.completion},
          {"attempts", record.attempts}};
}

AugmentationResult RunAugmentation(std::span<const AugmentationJob> jobs,
                                   TextGenerationClient& client,
                                   const AugmentationOptions& options) {
  struct Outcome {
    std::optional<std::string> completion;
    absl::Status status;
    int attempts = 0;
  };
  std::vector<Outcome> outcomes(jobs.size());
  std::atomic<size_t> next{0};
  const int attempts_allowed = std::max(1, options.max_attempts);

  auto worker = [&] {
    for (size_t i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1)) {
      Outcome& outcome = outcomes[i];
      for (int attempt = 1; attempt <= attempts_allowed; ++attempt) {
        outcome.attempts = attempt;
        absl::StatusOr<std::string> completion = client.Complete(jobs[i].prompt);
        if (completion.ok()) {
          outcome.completion = *std::move(completion);
          outcome.status = absl::OkStatus();
          break;
        }
        outcome.status = completion.status();
        if (attempt < attempts_allowed && options.retry_backoff.count() > 0) {
          std::this_thread::sleep_for(options.retry_backoff * attempt);
        }
      }
    }
  };

  const size_t threads = std::min<size_t>(
      jobs.size(), static_cast<size_t>(std::max(1, options.max_parallel)));
  {
    std::vector<std::jthread> pool;
    for (size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }

  AugmentationResult result;
  for (size_t i = 0; i < jobs.size(); ++i) {
    const AugmentationJob& job = jobs[i];
    const Outcome& outcome = outcomes[i];
    if (!outcome.completion) {
      result.failures.push_back(
          {job.index, job.expressions, outcome.status, outcome.attempts});
      continue;
    }
    result.completions.push_back({job.index, job.label, job.expressions,
                                  job.prompt, *outcome.completion,
                                  outcome.attempts});
    ParsedCompletion parsed = ParseCompletion(job, *outcome.completion);
    std::move(parsed.candidates.begin(), parsed.candidates.end(),
              std::back_inserter(result.candidates));
    std::move(parsed.quarantined.begin(), parsed.quarantined.end(),
              std::back_inserter(result.quarantined));
  }
  return result;
}

}  // namespace burnscreen::corpus
