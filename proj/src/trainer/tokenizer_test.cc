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

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <filesystem>

#include "common/hash.h"

namespace burnscreen::trainer {
namespace {

using ::testing::ElementsAre;

WordPieceTokenizer Small() {
  return *WordPieceTokenizer::FromVocab(
      {"[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]", "ich", "bin", "mü",
       "##de", "##d", "m", "##ü", ".", ",", "Ich", "Arbeit", "##s"});
}

TEST(BasicTokenizeTest, SplitsWhitespaceAndPunctuation) {
  EXPECT_THAT(BasicTokenize("Ich bin müde, sehr müde."),
              ElementsAre("Ich", "bin", "müde", ",", "sehr", "müde", "."));
  EXPECT_THAT(BasicTokenize("Magen-Darm-Geschwüre"),
              ElementsAre("Magen", "-", "Darm", "-", "Geschwüre"));
  EXPECT_TRUE(BasicTokenize(" \t\n").empty());
}

TEST(WordPieceTest, GreedyLongestMatch) {
  const WordPieceTokenizer t = Small();
  EXPECT_THAT(t.Tokenize("ich bin müde."),
              ElementsAre("ich", "bin", "mü", "##de", "."));
  EXPECT_THAT(t.Tokenize("Arbeits"), ElementsAre("Arbeit", "##s"));
  EXPECT_THAT(t.Tokenize("xyz"), ElementsAre("[UNK]"));
}

TEST(WordPieceTest, EncodeAddsMarkersAndTruncates) {
  const WordPieceTokenizer t = Small();
  const Encoding full = t.Encode("ich bin müde.", 16);
  EXPECT_THAT(full.ids, ElementsAre(t.cls_id(), 5, 6, 7, 8, 12, t.sep_id()));
  EXPECT_FALSE(full.truncated);
  const Encoding cut = t.Encode("ich bin müde.", 4);
  EXPECT_THAT(cut.ids, ElementsAre(t.cls_id(), 5, 6, t.sep_id()));
  EXPECT_TRUE(cut.truncated);
}

TEST(WordPieceTest, DecodeGluesContinuations) {
  const WordPieceTokenizer t = Small();
  EXPECT_EQ(t.Decode(t.Encode("ich bin müde", 16).ids), "ich bin müde");
}

TEST(WordPieceTest, RejectsBadVocabularies) {
  EXPECT_FALSE(WordPieceTokenizer::FromVocab({"a", "b"}).ok());
  EXPECT_FALSE(WordPieceTokenizer::FromVocab(
                   {"[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]", "a", "a"})
                   .ok());
}

TEST(ExtractVocabularyTermsTest, WordsWithoutPunctuation) {
  const std::vector<std::string> expressions = {
      "Magen-Darm-Geschwüre", "nahe am Wasser gebaut sein", "am Ende sein!"};
  EXPECT_THAT(ExtractVocabularyTerms(expressions),
              ElementsAre("Magen", "Darm", "Geschwüre", "nahe", "am", "Wasser",
                          "gebaut", "sein", "Ende"));
}

TEST(AddTokensTest, NovelTermsBecomeSingleTokens) {
  WordPieceTokenizer t = Small();
  const std::vector<std::string> terms = {"ich", "Zynismus", "Abstumpfung",
                                          "müde"};
  // Tokenize-before oracle: a term is novel iff it is not already one piece
  // that equals the term.
  int novel = 0;
  for (const auto& term : terms) {
    const auto pieces = t.Tokenize(term);
    if (!(pieces.size() == 1 && pieces[0] == term)) ++novel;
  }
  auto added = t.AddTokens(terms);
  ASSERT_TRUE(added.ok());
  EXPECT_EQ(*added, novel);
  EXPECT_EQ(*added, 3);
  for (const auto& term : terms) {
    const Encoding e = t.Encode(term, 16);
    ASSERT_EQ(e.ids.size(), 3u) << term;
    EXPECT_EQ(t.Decode(e.ids), term);
  }
  EXPECT_EQ(*t.AddTokens(terms), 0);
  EXPECT_EQ(*t.AddTokens({}), 0);
  EXPECT_THAT(t.added_tokens(), ElementsAre("Zynismus", "Abstumpfung", "müde"));
}

TEST(AddTokensTest, RejectsMultiWordTerms) {
  WordPieceTokenizer t = Small();
  const std::vector<std::string> terms = {"nahe am Wasser"};
  EXPECT_FALSE(t.AddTokens(terms).ok());
  EXPECT_EQ(t.size(), Small().size());
}

TEST(TokenizerPersistenceTest, SaveLoadRoundTrip) {
  WordPieceTokenizer t = Small();
  const std::vector<std::string> terms = {"Zynismus"};
  ASSERT_TRUE(t.AddTokens(terms).ok());
  const auto dir = std::filesystem::temp_directory_path() /
                   ("burnscreen_tok_" + RandomToken(4));
  std::filesystem::create_directories(dir);
  ASSERT_TRUE(t.Save(dir).ok());
  auto loaded = WordPieceTokenizer::Load(dir);
  ASSERT_TRUE(loaded.ok()) << loaded.status();
  EXPECT_EQ(loaded->size(), t.size());
  EXPECT_EQ(loaded->added_tokens(), t.added_tokens());
  EXPECT_EQ(loaded->Encode("Zynismus ich", 16).ids,
            t.Encode("Zynismus ich", 16).ids);
  std::filesystem::remove_all(dir);
}

TEST(TokenizerPersistenceTest, ShippedBaseVocabularyLoads) {
  auto t = WordPieceTokenizer::LoadVocabFile(std::string(BURNSCREEN_DATA_DIR) +
                                             "/base_vocab.txt");
  ASSERT_TRUE(t.ok()) << t.status();
  // Every word decomposes without [UNK] thanks to the character pieces.
  for (const auto& piece : t->Tokenize("Überforderung, Schlafstörungen!")) {
    EXPECT_NE(piece, kUnkToken);
  }
}

}  // namespace
}  // namespace burnscreen::trainer
