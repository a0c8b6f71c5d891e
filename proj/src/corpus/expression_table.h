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

#ifndef BURNSCREEN_CORPUS_EXPRESSION_TABLE_H_
#define BURNSCREEN_CORPUS_EXPRESSION_TABLE_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace burnscreen::corpus {

// A seed symptom expression, its colloquial variants and the authored control
// counterpart. `variant_opposites` optionally pairs each variant with its own
// control phrase; a missing or empty entry falls back to `opposite`.
struct ExpressionRecord {
  std::string seed;
  std::vector<std::string> variants;
  std::string opposite;
  std::vector<std::string> variant_opposites;
  std::string language = "de";

  // The control phrase paired with variants[index].
  const std::string& OppositeForVariant(size_t index) const;
};

// Separator between list entries inside one TSV cell.
inline constexpr std::string_view kListSeparator = "|";

absl::Status ValidateRecord(const ExpressionRecord& record);

// TSV with header seed, variants, opposite and optional variant_opposites.
// Lists inside a cell are '|'-separated. Rejects duplicate seeds.
absl::StatusOr<std::vector<ExpressionRecord>> ParseExpressionTable(
    std::string_view contents, std::string_view source_name);
absl::StatusOr<std::vector<ExpressionRecord>> LoadExpressionTable(
    const std::filesystem::path& path);

}  // namespace burnscreen::corpus

#endif  // BURNSCREEN_CORPUS_EXPRESSION_TABLE_H_
