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

#include "trainer/tokenizer.h"

#include <unordered_set>
#include <utility>

#include "common/io.h"
#include "common/status_macros.h"
#include "common/strings.h"
#include "common/text.h"
#include "json.hpp"

namespace burnscreen::trainer {

namespace {

constexpr size_t kMaxCharsPerWord = 100;

bool AllPunctuation(std::string_view token) {
  for (char32_t c : text::DecodeUtf8(token)) {
    if (!text::IsPunctuation(c)) return false;
  }
  return true;
}

}  // namespace

std::vector<std::string> BasicTokenize(std::string_view input) {
  std::vector<std::string> tokens;
  std::u32string current;
  auto flush = [&] {
    if (!current.empty()) {
      tokens.push_back(text::EncodeUtf8(current));
      current.clear();
    }
  };
  for (char32_t c : text::DecodeUtf8(input)) {
    if (text::IsWhitespace(c)) {
      flush();
    } else if (c == 0 || c == 0xFFFD || text::IsControl(c)) {
      continue;
    } else if (text::IsPunctuation(c)) {
      flush();
      tokens.push_back(text::EncodeUtf8(c));
    } else {
      current.push_back(c);
    }
  }
  flush();
  return tokens;
}

std::vector<std::string> ExtractVocabularyTerms(
    std::span<const std::string> expressions) {
  std::vector<std::string> terms;
  std::unordered_set<std::string> seen;
  for (const std::string& expression : expressions) {
    for (std::string& token : BasicTokenize(expression)) {
      if (AllPunctuation(token)) continue;
      if (seen.insert(token).second) terms.push_back(std::move(token));
    }
  }
  return terms;
}

absl::StatusOr<WordPieceTokenizer> WordPieceTokenizer::FromVocab(
    std::vector<std::string> vocab) {
  WordPieceTokenizer tokenizer;
  for (size_t i = 0; i < vocab.size(); ++i) {
    if (vocab[i].empty()) {
      return absl::InvalidArgumentError(
          StrCat("empty vocabulary entry at index ", i));
    }
    if (!tokenizer.ids_.emplace(vocab[i], static_cast<int>(i)).second) {
      return absl::InvalidArgumentError(
          StrCat("duplicate vocabulary entry '", vocab[i], "'"));
    }
  }
  tokenizer.vocab_ = std::move(vocab);
  for (auto [token, slot] :
       {std::pair{kPadToken, &tokenizer.pad_id_},
        std::pair{kUnkToken, &tokenizer.unk_id_},
        std::pair{kClsToken, &tokenizer.cls_id_},
        std::pair{kSepToken, &tokenizer.sep_id_},
        std::pair{kMaskToken, &tokenizer.mask_id_}}) {
    auto it = tokenizer.ids_.find(std::string(token));
    if (it == tokenizer.ids_.end()) {
      return absl::InvalidArgumentError(
          StrCat("vocabulary lacks special token ", token));
    }
    *slot = it->second;
  }
  return tokenizer;
}

absl::StatusOr<WordPieceTokenizer> WordPieceTokenizer::LoadVocabFile(
    const std::filesystem::path& path) {
  BURNSCREEN_ASSIGN_OR_RETURN(std::string contents, io::ReadFile(path));
  std::vector<std::string> vocab;
  for (const std::string& line : text::SplitLines(contents)) {
    if (line.empty()) continue;
    vocab.push_back(line);
  }
  auto tokenizer = FromVocab(std::move(vocab));
  if (!tokenizer.ok()) {
    return absl::InvalidArgumentError(
        StrCat(path.string(), ": ", tokenizer.status().message()));
  }
  return tokenizer;
}

absl::StatusOr<WordPieceTokenizer> WordPieceTokenizer::Load(
    const std::filesystem::path& dir) {
  BURNSCREEN_ASSIGN_OR_RETURN(WordPieceTokenizer tokenizer,
                              LoadVocabFile(dir / "vocab.txt"));
  BURNSCREEN_ASSIGN_OR_RETURN(nlohmann::json added,
                              io::ReadJson(dir / "added_tokens.json"));
  if (!added.is_array()) {
    return absl::InvalidArgumentError("added_tokens.json must be an array");
  }
  for (const auto& token : added) {
    if (!token.is_string() || !tokenizer.Contains(token.get<std::string>())) {
      return absl::InvalidArgumentError(
          "added_tokens.json lists a token missing from vocab.txt");
    }
    tokenizer.added_tokens_.push_back(token.get<std::string>());
  }
  return tokenizer;
}

absl::Status WordPieceTokenizer::Save(const std::filesystem::path& dir) const {
  std::string vocab;
  for (const std::string& token : vocab_) {
    vocab += token;
    vocab += '\n';
  }
  BURNSCREEN_RETURN_IF_ERROR(io::WriteFileAtomic(dir / "vocab.txt", vocab));
  return io::WriteFileAtomic(dir / "added_tokens.json",
                             nlohmann::json(added_tokens_).dump(2) + "\n");
}

bool WordPieceTokenizer::IsSpecial(int id) const {
  return id == pad_id_ || id == unk_id_ || id == cls_id_ || id == sep_id_ ||
         id == mask_id_;
}

bool WordPieceTokenizer::Contains(std::string_view token) const {
  return ids_.contains(std::string(token));
}

int WordPieceTokenizer::TokenId(std::string_view token) const {
  auto it = ids_.find(std::string(token));
  return it == ids_.end() ? unk_id_ : it->second;
}

std::vector<std::string> WordPieceTokenizer::Tokenize(
    std::string_view input) const {
  std::vector<std::string> pieces;
  for (const std::string& word : BasicTokenize(input)) {
    const std::u32string chars = text::DecodeUtf8(word);
    if (chars.size() > kMaxCharsPerWord) {
      pieces.emplace_back(kUnkToken);
      continue;
    }
    std::vector<std::string> word_pieces;
    size_t start = 0;
    bool bad = false;
    while (start < chars.size()) {
      size_t end = chars.size();
      std::string match;
      while (end > start) {
        std::string candidate =
            text::EncodeUtf8(std::u32string_view(chars).substr(start, end - start));
        if (start > 0) candidate = StrCat(kContinuationPrefix, candidate);
        if (Contains(candidate)) {
          match = std::move(candidate);
          break;
        }
        --end;
      }
      if (match.empty()) {
        bad = true;
        break;
      }
      word_pieces.push_back(std::move(match));
      start = end;
    }
    if (bad) {
      pieces.emplace_back(kUnkToken);
    } else {
      pieces.insert(pieces.end(), word_pieces.begin(), word_pieces.end());
    }
  }
  return pieces;
}

Encoding WordPieceTokenizer::Encode(std::string_view input,
                                    int max_length) const {
  Encoding encoding;
  encoding.ids.push_back(cls_id_);
  const std::vector<std::string> pieces = Tokenize(input);
  const size_t budget = max_length > 2 ? static_cast<size_t>(max_length - 2) : 0;
  for (size_t i = 0; i < pieces.size(); ++i) {
    if (i >= budget) {
      encoding.truncated = true;
      break;
    }
    encoding.ids.push_back(TokenId(pieces[i]));
  }
  encoding.ids.push_back(sep_id_);
  return encoding;
}

std::string WordPieceTokenizer::Decode(std::span<const int> ids) const {
  std::string out;
  for (int id : ids) {
    if (IsSpecial(id) && id != unk_id_) continue;
    const std::string& piece = vocab_[id];
    if (piece.starts_with(kContinuationPrefix) && !out.empty()) {
      out += piece.substr(kContinuationPrefix.size());
    } else {
      if (!out.empty()) out += ' ';
      out += piece;
    }
  }
  return out;
}

absl::StatusOr<int> WordPieceTokenizer::AddTokens(
    std::span<const std::string> terms) {
  for (const std::string& term : terms) {
    const std::vector<std::string> basic = BasicTokenize(term);
    if (basic.size() != 1 || basic[0] != term) {
      return absl::InvalidArgumentError(
          StrCat("'", term, "' is not a single word; extract terms first"));
    }
  }
  int added = 0;
  for (const std::string& term : terms) {
    if (Contains(term)) continue;
    ids_.emplace(term, size());
    vocab_.push_back(term);
    added_tokens_.push_back(term);
    ++added;
  }
  return added;
}

}  // namespace burnscreen::trainer
