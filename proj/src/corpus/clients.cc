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

#include "corpus/clients.h"

#include "httplib.h"

#include "common/hash.h"
#include "common/io.h"
#include "common/random.h"
#include "common/status_macros.h"
#include "common/strings.h"
#include "common/text.h"
#include "corpus/augmentation.h"

namespace burnscreen::corpus {

namespace {

constexpr std::string_view kTemplates[] = {
    "In letzter Zeit trifft es auf mich zu: {}.",
    "Wenn ich ehrlich bin, beschreibt es meinen Zustand gut: {}.",
    "Seit einigen Wochen denke ich oft daran: {}.",
    "Meine Kollegen würden über mich sagen: {}.",
    "Morgens beim Aufstehen kommt mir sofort in den Sinn: {}.",
    "Am Abend spüre ich es besonders deutlich: {}.",
    "Auch am Wochenende bleibt es dabei: {}.",
    "Im Gespräch mit meiner Familie fällt mir auf: {}.",
    "Bei der Arbeit merke ich es jeden Tag: {}.",
    "So würde ich meine aktuelle Lage zusammenfassen: {}.",
    "Meine Ärztin hat gefragt, und ich habe geantwortet: {}.",
    "Rückblickend auf die letzte Woche gilt für mich: {}.",
    "Es fühlt sich gerade genau so an: {}.",
    "Ich schreibe es einfach einmal auf: {}.",
    "Wer mich im Moment kennt, würde sagen: {}.",
    "Nach einem langen Arbeitstag denke ich nur: {}.",
};

// Splits "scheme://host[:port]/path" into origin and path.
std::pair<std::string, std::string> SplitUrl(const std::string& url) {
  const size_t scheme_end = url.find("://");
  const size_t path_start =
      url.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

nlohmann::json BuildChatRequest(const ChatCompletionConfig& config,
                                std::string_view prompt) {
  return {
      {"model", config.model},
      {"temperature", config.temperature},
      {"messages",
       nlohmann::json::array({{{"role", "user"}, {"content", prompt}}})},
  };
}

absl::StatusOr<std::string> ParseChatResponse(std::string_view body) {
  const nlohmann::json parsed =
      nlohmann::json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (parsed.is_discarded()) {
    return absl::DataLossError("chat completion response is not JSON");
  }
  const nlohmann::json* content = nullptr;
  if (parsed.contains("choices") && parsed["choices"].is_array() &&
      !parsed["choices"].empty()) {
    const nlohmann::json& choice = parsed["choices"][0];
    if (choice.contains("message") && choice["message"].contains("content")) {
      content = &choice["message"]["content"];
    }
  }
  if (content == nullptr || !content->is_string()) {
    return absl::DataLossError(
        "chat completion response lacks choices[0].message.content");
  }
  return content->get<std::string>();
}

ChatCompletionClient::ChatCompletionClient(ChatCompletionConfig config)
    : config_(std::move(config)) {
  std::tie(origin_, path_) = SplitUrl(config_.endpoint);
}

absl::StatusOr<std::string> ChatCompletionClient::Complete(
    std::string_view prompt) {
  httplib::Client client(origin_);
  client.set_connection_timeout(config_.timeout_seconds, 0);
  client.set_read_timeout(config_.timeout_seconds, 0);
  httplib::Headers headers;
  if (!config_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + config_.api_key);
  }
  const std::string body = BuildChatRequest(config_, prompt).dump();
  httplib::Result response =
      client.Post(path_, headers, body, "application/json");
  if (!response) {
    return absl::UnavailableError(StrCat("request to ", config_.endpoint,
                                         " failed: ",
                                         httplib::to_string(response.error())));
  }
  if (response->status != 200) {
    const absl::StatusCode code = response->status == 429 ||
                                          response->status >= 500
                                      ? absl::StatusCode::kUnavailable
                                      : absl::StatusCode::kFailedPrecondition;
    return absl::Status(code, StrCat("chat completion returned HTTP ",
                                     response->status, ": ", response->body));
  }
  return ParseChatResponse(response->body);
}

absl::StatusOr<std::unique_ptr<RecordedCompletionClient>>
RecordedCompletionClient::Load(const std::filesystem::path& path) {
  BURNSCREEN_ASSIGN_OR_RETURN(auto records, io::ReadJsonLines(path));
  std::map<std::string, std::string> replies;
  for (const nlohmann::json& record : records) {
    if (!record.contains("prompt") || !record.contains("completion")) {
      return absl::InvalidArgumentError(StrCat(
          path.string(), ": every record needs 'prompt' and 'completion'"));
    }
    replies[record["prompt"].get<std::string>()] =
        record["completion"].get<std::string>();
  }
  return std::make_unique<RecordedCompletionClient>(std::move(replies));
}

absl::StatusOr<std::string> RecordedCompletionClient::Complete(
    std::string_view prompt) {
  auto it = replies_.find(std::string(prompt));
  if (it == replies_.end()) {
    return absl::NotFoundError("no recorded completion for this prompt");
  }
  return it->second;
}

std::vector<std::string> SyntheticCompletionClient::SentencesFor(
    std::string_view expression) const {
  const uint64_t hash = Fnv1a64(expression);
  Rng rng(hash ^ seed_);
  std::vector<size_t> order(std::size(kTemplates));
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.Shuffle(order);

  int count = kSentencesPerExpression;
  if (hash % 6 == 0) count = 7;
  std::vector<std::string> sentences;
  for (int i = 0; i < count; ++i) {
    sentences.push_back(
        fmt::format(fmt::runtime(kTemplates[order[i]]), expression));
  }
  if (hash % 9 == 0 && sentences.size() > 2) {
    sentences[sentences.size() - 1] = sentences[0];
  }
  if (hash % 5 == 0) {
    // Cut the last sentence off mid-word, as long generations sometimes are.
    std::u32string last = text::DecodeUtf8(sentences.back());
    last.resize(last.size() * 3 / 5);
    while (!last.empty() && (last.back() == U' ' || last.back() == U'.')) {
      last.pop_back();
    }
    sentences.back() = text::EncodeUtf8(last);
  }
  return sentences;
}

absl::StatusOr<std::string> SyntheticCompletionClient::Complete(
    std::string_view prompt) {
  if (!prompt.starts_with(kPromptTemplate)) {
    return absl::InvalidArgumentError(
        "synthetic client only understands augmentation prompts");
  }
  const std::string list(text::Trim(prompt.substr(kPromptTemplate.size())));
  std::vector<std::string> expressions;
  size_t start = 0;
  while (start <= list.size()) {
    size_t end = list.find(kExpressionSeparator, start);
    if (end == std::string::npos) end = list.size();
    std::string expression = text::Trim(list.substr(start, end - start));
    if (!expression.empty()) expressions.push_back(std::move(expression));
    start = end + kExpressionSeparator.size();
  }
  std::string out;
  for (const std::string& expression : expressions) {
    out += StrCat("**", expression, ":**\n");
    const std::vector<std::string> sentences = SentencesFor(expression);
    for (size_t i = 0; i < sentences.size(); ++i) {
      out += StrCat(i + 1, ". ", sentences[i], "\n");
    }
    out += "\n";
  }
  return out;
}

}  // namespace burnscreen::corpus
