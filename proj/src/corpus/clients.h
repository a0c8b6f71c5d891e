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

#ifndef BURNSCREEN_CORPUS_CLIENTS_H_
#define BURNSCREEN_CORPUS_CLIENTS_H_

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"

namespace burnscreen::corpus {

// Anything that turns a prompt into a completion. Implementations must be
// safe to call from several threads at once.
class TextGenerationClient {
 public:
  virtual ~TextGenerationClient() = default;
  virtual absl::StatusOr<std::string> Complete(std::string_view prompt) = 0;
};

struct ChatCompletionConfig {
  std::string endpoint = "https://api.openai.com/v1/chat/completions";
  std::string model = "gpt-3.5-turbo-1106";
  double temperature = 1.0;
  std::string api_key;
  int timeout_seconds = 120;
};

// Request body for one single-message chat completion.
nlohmann::json BuildChatRequest(const ChatCompletionConfig& config,
                                std::string_view prompt);
// Extracts choices[0].message.content.
absl::StatusOr<std::string> ParseChatResponse(std::string_view body);

// Talks to a chat-completion style HTTP endpoint (http or https).
class ChatCompletionClient : public TextGenerationClient {
 public:
  explicit ChatCompletionClient(ChatCompletionConfig config);
  absl::StatusOr<std::string> Complete(std::string_view prompt) override;

 private:
  ChatCompletionConfig config_;
  std::string origin_;
  std::string path_;
};

// Replays archived completions keyed by exact prompt text.
class RecordedCompletionClient : public TextGenerationClient {
 public:
  explicit RecordedCompletionClient(std::map<std::string, std::string> replies)
      : replies_(std::move(replies)) {}

  // Reads a completion archive (JSONL with `prompt` and `completion`).
  static absl::StatusOr<std::unique_ptr<RecordedCompletionClient>> Load(
      const std::filesystem::path& path);

  absl::StatusOr<std::string> Complete(std::string_view prompt) override;
  size_t size() const { return replies_.size(); }

 private:
  std::map<std::string, std::string> replies_;
};

// Deterministic offline stand-in for a generative model. It splits the
// prompt back into expressions and writes templated first-person German
// sentences for each, formatted as a markdown heading plus numbered list.
// Like a real model it sometimes returns fewer sentences than requested,
// cuts the last sentence off or repeats one. Expressions containing ", "
// are not recoverable from the prompt.
class SyntheticCompletionClient : public TextGenerationClient {
 public:
  explicit SyntheticCompletionClient(uint64_t seed = 0) : seed_(seed) {}
  absl::StatusOr<std::string> Complete(std::string_view prompt) override;

  // Sentences for one expression, before formatting.
  std::vector<std::string> SentencesFor(std::string_view expression) const;

 private:
  uint64_t seed_;
};

}  // namespace burnscreen::corpus

#endif  // BURNSCREEN_CORPUS_CLIENTS_H_
