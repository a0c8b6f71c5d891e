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

#ifndef BURNSCREEN_TRAINER_TOKENIZER_H_
#define BURNSCREEN_TRAINER_TOKENIZER_H_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace burnscreen::trainer {

inline constexpr std::string_view kPadToken = "[PAD]";
inline constexpr std::string_view kUnkToken = "[UNK]";
inline constexpr std::string_view kClsToken = "[CLS]";
inline constexpr std::string_view kSepToken = "[SEP]";
inline constexpr std::string_view kMaskToken = "[MASK]";
inline constexpr std::string_view kContinuationPrefix = "##";

// Cased pre-tokenization: splits on whitespace and isolates every
// punctuation character. Control characters are dropped.
std::vector<std::string> BasicTokenize(std::string_view text);

// Words of the given expressions as vocabulary candidates: basic tokens with
// punctuation-only tokens removed, case preserved, first occurrence order,
// no repeats.
std::vector<std::string> ExtractVocabularyTerms(
    std::span<const std::string> expressions);

struct Encoding {
  std::vector<int> ids;
  // True when pieces were dropped to fit the maximum length.
  bool truncated = false;
};

// Greedy longest-match-first WordPiece tokenizer with "##" continuation
// pieces.
class WordPieceTokenizer {
 public:
  // `vocab` must be unique and contain the five special tokens.
  static absl::StatusOr<WordPieceTokenizer> FromVocab(
      std::vector<std::string> vocab);
  // One token per line.
  static absl::StatusOr<WordPieceTokenizer> LoadVocabFile(
      const std::filesystem::path& path);
  // Reads vocab.txt and added_tokens.json from `dir`.
  static absl::StatusOr<WordPieceTokenizer> Load(
      const std::filesystem::path& dir);
  absl::Status Save(const std::filesystem::path& dir) const;

  int size() const { return static_cast<int>(vocab_.size()); }
  int pad_id() const { return pad_id_; }
  int unk_id() const { return unk_id_; }
  int cls_id() const { return cls_id_; }
  int sep_id() const { return sep_id_; }
  bool IsSpecial(int id) const;

  bool Contains(std::string_view token) const;
  int TokenId(std::string_view token) const;  // unk_id() when absent
  const std::string& TokenText(int id) const { return vocab_[id]; }

  // Word pieces without special tokens.
  std::vector<std::string> Tokenize(std::string_view text) const;
  // [CLS] pieces [SEP], truncated to `max_length` ids in total.
  Encoding Encode(std::string_view text, int max_length) const;
  // Joins pieces, gluing "##" continuations to the previous piece and
  // skipping special tokens.
  std::string Decode(std::span<const int> ids) const;

  // Appends every term not yet in the vocabulary and returns how many were
  // added. Each term must be a single basic token.
  absl::StatusOr<int> AddTokens(std::span<const std::string> terms);
  const std::vector<std::string>& added_tokens() const {
    return added_tokens_;
  }

 private:
  std::vector<std::string> vocab_;
  std::unordered_map<std::string, int> ids_;
  std::vector<std::string> added_tokens_;
  int pad_id_ = 0;
  int unk_id_ = 0;
  int cls_id_ = 0;
  int sep_id_ = 0;
  int mask_id_ = 0;
};

}  // namespace burnscreen::trainer

#endif  // BURNSCREEN_TRAINER_TOKENIZER_H_
