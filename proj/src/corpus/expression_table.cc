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

#include "corpus/expression_table.h"

#include <set>

#include "common/io.h"
#include "common/status_macros.h"
#include "common/strings.h"
#include "common/text.h"

namespace burnscreen::corpus {

namespace {

std::vector<std::string> SplitList(std::string_view cell) {
  std::vector<std::string> out;
  if (text::Trim(cell).empty()) return out;
  for (const std::string& piece : text::Split(cell, kListSeparator[0])) {
    out.push_back(text::NormalizeWhitespace(piece));
  }
  return out;
}

}  // namespace

const std::string& ExpressionRecord::OppositeForVariant(size_t index) const {
  if (index < variant_opposites.size() && !variant_opposites[index].empty()) {
    return variant_opposites[index];
  }
  return opposite;
}

absl::Status ValidateRecord(const ExpressionRecord& record) {
  if (record.seed.empty()) {
    return absl::InvalidArgumentError("expression record has an empty seed");
  }
  if (record.opposite.empty()) {
    return absl::InvalidArgumentError(
        StrCat("seed '", record.seed, "' has an empty opposite"));
  }
  std::set<std::string> seen;
  for (const std::string& variant : record.variants) {
    if (variant.empty()) {
      return absl::InvalidArgumentError(
          StrCat("seed '", record.seed, "' has an empty variant"));
    }
    if (!seen.insert(variant).second) {
      return absl::InvalidArgumentError(StrCat(
          "seed '", record.seed, "' lists variant '", variant, "' twice"));
    }
  }
  if (record.variant_opposites.size() > record.variants.size()) {
    return absl::InvalidArgumentError(StrCat(
        "seed '", record.seed, "' has more variant opposites than variants"));
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<ExpressionRecord>> ParseExpressionTable(
    std::string_view contents, std::string_view source_name) {
  BURNSCREEN_ASSIGN_OR_RETURN(
      auto rows,
      io::ParseTsv(contents, {"seed", "variants", "opposite"}, source_name));
  std::vector<ExpressionRecord> records;
  std::set<std::string> seeds;
  for (const io::TsvRow& row : rows) {
    ExpressionRecord record;
    record.seed = text::NormalizeWhitespace(row.Get("seed"));
    record.variants = SplitList(row.Get("variants"));
    record.opposite = text::NormalizeWhitespace(row.Get("opposite"));
    record.variant_opposites = SplitList(row.Get("variant_opposites"));
    if (absl::Status status = ValidateRecord(record); !status.ok()) {
      return absl::InvalidArgumentError(StrCat(source_name, ":", row.line_number,
                                               ": ", status.message()));
    }
    if (!seeds.insert(record.seed).second) {
      return absl::InvalidArgumentError(StrCat(source_name, ":", row.line_number,
                                               ": duplicate seed '",
                                               record.seed, "'"));
    }
    records.push_back(std::move(record));
  }
  return records;
}

absl::StatusOr<std::vector<ExpressionRecord>> LoadExpressionTable(
    const std::filesystem::path& path) {
  BURNSCREEN_ASSIGN_OR_RETURN(std::string contents, io::ReadFile(path));
  return ParseExpressionTable(contents, path.string());
}

}  // namespace burnscreen::corpus
