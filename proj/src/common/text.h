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

#ifndef BURNSCREEN_COMMON_TEXT_H_
#define BURNSCREEN_COMMON_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace burnscreen::text {

// Decodes UTF-8; invalid bytes map to U+FFFD.
std::u32string DecodeUtf8(std::string_view input);
std::string EncodeUtf8(char32_t code_point);
std::string EncodeUtf8(std::u32string_view code_points);

bool IsWhitespace(char32_t c);
bool IsControl(char32_t c);
// ASCII punctuation plus the Latin-1 and general punctuation blocks.
bool IsPunctuation(char32_t c);
bool IsAlphanumeric(char32_t c);

// Collapses whitespace runs into single spaces and trims both ends.
std::string NormalizeWhitespace(std::string_view input);

std::string Trim(std::string_view input);

std::vector<std::string> SplitWhitespace(std::string_view input);

// Splits on every occurrence of `delimiter`; empty pieces are kept.
std::vector<std::string> Split(std::string_view input, char delimiter);

// Splits on '\n' and strips a trailing '\r' from each line.
std::vector<std::string> SplitLines(std::string_view input);

// Number of whitespace-separated tokens that carry at least one letter or
// digit.
int CountWords(std::string_view input);

// True when the text ends with '.', '!' or '?', optionally followed by closing
// quotes or brackets.
bool EndsWithTerminalPunctuation(std::string_view input);

// Escapes characters that would break a tab-separated line.
std::string EscapeTsvField(std::string_view field);
std::string UnescapeTsvField(std::string_view field);

// HTML-escapes &, <, >, " and '.
std::string EscapeHtml(std::string_view input);

}  // namespace burnscreen::text

#endif  // BURNSCREEN_COMMON_TEXT_H_
