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

#ifndef BURNSCREEN_EXPLAINER_PACKET_H_
#define BURNSCREEN_EXPLAINER_PACKET_H_

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "common/label.h"
#include "explainer/integrated_gradients.h"
#include "json.hpp"
#include "olbi/cutoff.h"

namespace burnscreen::explainer {

// A displayed word: consecutive word pieces glued together with the sum of
// their scores.
struct WordAttribution {
  std::string word;
  double score = 0.0;
  // Half-open range into the raw token list.
  int first_token = 0;
  int end_token = 0;

  friend bool operator==(const WordAttribution&, const WordAttribution&) =
      default;
};

// Merges "##" continuations into the preceding piece. Special markers are
// dropped; an unknown-token marker stays a word of its own.
std::vector<WordAttribution> MergeWordPieces(
    std::span<const TokenAttribution> tokens);

struct PacketSource {
  std::string text;
  std::string respondent_id;
  std::string question_id;
  // Questionnaire-derived labels; empty for texts without a respondent.
  std::map<olbi::CutoffName, Label> olbi_labels;
  std::string model_name;
  std::string dataset_name;
};

struct AttributionPacket {
  // SHA-256 over the canonical JSON of every other field.
  std::string id;
  PacketSource source;
  Label predicted = Label::kNoBurnout;
  double positive_score = 0.0;
  std::vector<TokenAttribution> tokens;
  std::vector<WordAttribution> words;
  double f_input = 0.0;
  double f_baseline = 0.0;
  double residual = 0.0;
  int steps = 0;
  std::string method;
  std::vector<std::string> warnings;
};

// Fails when `attribution` holds no token scores.
absl::StatusOr<AttributionPacket> BuildPacket(const PacketSource& source,
                                              const Attribution& attribution);

nlohmann::json PacketToJson(const AttributionPacket& packet);
// Verifies that the stored id matches the content.
absl::StatusOr<AttributionPacket> PacketFromJson(const nlohmann::json& json);

// Self-contained HTML view. Positive scores are shaded warm, negative cool,
// with opacity proportional to |score| relative to the largest word.
std::string RenderPacketHtml(const AttributionPacket& packet);

absl::Status WritePackets(std::span<const AttributionPacket> packets,
                          const std::filesystem::path& jsonl_path);
absl::StatusOr<std::vector<AttributionPacket>> LoadPackets(
    const std::filesystem::path& jsonl_path);

// Writes <id>.html per packet plus an index.html linking them.
absl::Status WritePacketViews(std::span<const AttributionPacket> packets,
                              const std::filesystem::path& dir);

}  // namespace burnscreen::explainer

#endif  // BURNSCREEN_EXPLAINER_PACKET_H_
