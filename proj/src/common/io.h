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

#ifndef BURNSCREEN_COMMON_IO_H_
#define BURNSCREEN_COMMON_IO_H_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "json.hpp"

namespace burnscreen::io {

absl::StatusOr<std::string> ReadFile(const std::filesystem::path& path);

// Writes through a temporary sibling and renames it into place.
absl::Status WriteFileAtomic(const std::filesystem::path& path,
                             std::string_view contents);

// Appends one line and flushes it to stable storage before returning.
absl::Status AppendLineDurable(const std::filesystem::path& path,
                               std::string_view line);

// One data row of a tab-separated file keyed by header column name.
struct TsvRow {
  int line_number = 0;
  std::map<std::string, std::string> fields;

  // Empty string when the column is absent.
  const std::string& Get(const std::string& column) const;
  bool Has(const std::string& column) const {
    return fields.contains(column);
  }
};

// Parses a header-first TSV file. Blank lines and lines starting with '#' are
// skipped. Fields are unescaped with text::UnescapeTsvField.
absl::StatusOr<std::vector<TsvRow>> ReadTsv(
    const std::filesystem::path& path,
    const std::vector<std::string>& required_columns);
absl::StatusOr<std::vector<TsvRow>> ParseTsv(
    std::string_view contents, const std::vector<std::string>& required_columns,
    std::string_view source_name);

std::string FormatTsvLine(const std::vector<std::string>& fields);

absl::StatusOr<std::vector<nlohmann::json>> ReadJsonLines(
    const std::filesystem::path& path);
absl::StatusOr<std::vector<nlohmann::json>> ParseJsonLines(
    std::string_view contents, std::string_view source_name);

std::string FormatJsonLines(const std::vector<nlohmann::json>& records);

absl::StatusOr<nlohmann::json> ReadJson(const std::filesystem::path& path);

}  // namespace burnscreen::io

#endif  // BURNSCREEN_COMMON_IO_H_
