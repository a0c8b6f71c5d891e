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

#include "common/io.h"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include "common/strings.h"
#include "fmt/format.h"
#include "fmt/ranges.h"
#include "common/text.h"

namespace burnscreen::io {

namespace fs = std::filesystem;

absl::StatusOr<std::string> ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return absl::NotFoundError(
        StrCat("cannot open ", path.string(), ": ", std::strerror(errno)));
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

absl::Status WriteFileAtomic(const fs::path& path, std::string_view contents) {
  std::error_code ec;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path(), ec);
    if (ec) {
      return absl::InternalError(StrCat("cannot create directory ",
                                              path.parent_path().string(),
                                              ": ", ec.message()));
    }
  }
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      return absl::InternalError(StrCat("cannot write ", tmp.string()));
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) {
      return absl::InternalError(StrCat("short write to ", tmp.string()));
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    return absl::InternalError(
        StrCat("cannot rename into ", path.string(), ": ", ec.message()));
  }
  return absl::OkStatus();
}

absl::Status AppendLineDurable(const fs::path& path, std::string_view line) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  const int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
  if (fd < 0) {
    return absl::InternalError(
        StrCat("cannot open ", path.string(), ": ", std::strerror(errno)));
  }
  std::string buffer(line);
  buffer.push_back('\n');
  size_t written = 0;
  while (written < buffer.size()) {
    const ssize_t n =
        ::write(fd, buffer.data() + written, buffer.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      const std::string reason = std::strerror(errno);
      ::close(fd);
      return absl::InternalError(
          StrCat("append to ", path.string(), " failed: ", reason));
    }
    written += static_cast<size_t>(n);
  }
  ::fsync(fd);
  ::close(fd);
  return absl::OkStatus();
}

const std::string& TsvRow::Get(const std::string& column) const {
  static const std::string kEmpty;
  auto it = fields.find(column);
  return it == fields.end() ? kEmpty : it->second;
}

absl::StatusOr<std::vector<TsvRow>> ParseTsv(
    std::string_view contents, const std::vector<std::string>& required_columns,
    std::string_view source_name) {
  std::vector<std::string> header;
  std::vector<TsvRow> rows;
  int line_number = 0;
  for (std::string_view raw : text::SplitLines(contents)) {
    ++line_number;
    std::string line(raw);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::Trim(line).empty() || line.front() == '#') continue;
    std::vector<std::string> cells = text::Split(line, '\t');
    if (header.empty()) {
      for (std::string& cell : cells) header.push_back(text::Trim(cell));
      for (const std::string& column : required_columns) {
        if (std::find(header.begin(), header.end(), column) == header.end()) {
          return absl::InvalidArgumentError(
              StrCat(source_name, ":", line_number,
                           ": header is missing column '", column, "'"));
        }
      }
      continue;
    }
    if (cells.size() > header.size()) {
      return absl::InvalidArgumentError(StrCat(
          source_name, ":", line_number, ": expected at most ", header.size(),
          " columns, found ", cells.size()));
    }
    TsvRow row;
    row.line_number = line_number;
    for (size_t i = 0; i < cells.size(); ++i) {
      row.fields[header[i]] = text::UnescapeTsvField(cells[i]);
    }
    rows.push_back(std::move(row));
  }
  if (header.empty()) {
    return absl::InvalidArgumentError(
        StrCat(source_name, ": missing header line"));
  }
  return rows;
}

absl::StatusOr<std::vector<TsvRow>> ReadTsv(
    const fs::path& path, const std::vector<std::string>& required_columns) {
  auto contents = ReadFile(path);
  if (!contents.ok()) return contents.status();
  return ParseTsv(*contents, required_columns, path.string());
}

std::string FormatTsvLine(const std::vector<std::string>& fields) {
  std::vector<std::string> escaped;
  escaped.reserve(fields.size());
  for (const std::string& field : fields) {
    escaped.push_back(text::EscapeTsvField(field));
  }
  return fmt::format("{}\n", fmt::join(escaped, "\t"));
}

absl::StatusOr<std::vector<nlohmann::json>> ParseJsonLines(
    std::string_view contents, std::string_view source_name) {
  std::vector<nlohmann::json> records;
  int line_number = 0;
  for (std::string_view raw : text::SplitLines(contents)) {
    ++line_number;
    const std::string line = text::Trim(raw);
    if (line.empty()) continue;
    nlohmann::json record =
        nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (record.is_discarded()) {
      return absl::InvalidArgumentError(StrCat(
          source_name, ":", line_number, ": malformed JSON record"));
    }
    records.push_back(std::move(record));
  }
  return records;
}

absl::StatusOr<std::vector<nlohmann::json>> ReadJsonLines(const fs::path& path) {
  auto contents = ReadFile(path);
  if (!contents.ok()) return contents.status();
  return ParseJsonLines(*contents, path.string());
}

std::string FormatJsonLines(const std::vector<nlohmann::json>& records) {
  std::string out;
  for (const nlohmann::json& record : records) {
    out += record.dump();
    out.push_back('\n');
  }
  return out;
}

absl::StatusOr<nlohmann::json> ReadJson(const fs::path& path) {
  auto contents = ReadFile(path);
  if (!contents.ok()) return contents.status();
  nlohmann::json parsed =
      nlohmann::json::parse(*contents, nullptr, /*allow_exceptions=*/false);
  if (parsed.is_discarded()) {
    return absl::InvalidArgumentError(
        StrCat(path.string(), ": malformed JSON"));
  }
  return parsed;
}

}  // namespace burnscreen::io
