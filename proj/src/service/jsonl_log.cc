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

#include "service/jsonl_log.h"

#include "common/io.h"
#include "common/status_macros.h"
#include "common/strings.h"

namespace burnscreen::service {

namespace fs = std::filesystem;

absl::StatusOr<JsonlLog::Opened> JsonlLog::Open(const fs::path& path) {
  Opened opened{JsonlLog(path), {}, false};
  std::error_code ec;
  if (!fs::exists(path, ec)) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
    if (ec) {
      return absl::InternalError(
          StrCat("cannot create ", path.parent_path().string(), ": ", ec.message()));
    }
    return opened;
  }
  BURNSCREEN_ASSIGN_OR_RETURN(std::string contents, io::ReadFile(path));
  const size_t last_newline = contents.rfind('\n');
  const size_t complete = last_newline == std::string::npos ? 0 : last_newline + 1;
  if (complete < contents.size()) {
    opened.dropped_torn_record = true;
    contents.resize(complete);
    fs::resize_file(path, complete, ec);
    if (ec) {
      return absl::InternalError(
          StrCat("cannot repair ", path.string(), ": ", ec.message()));
    }
  }
  BURNSCREEN_ASSIGN_OR_RETURN(opened.records,
                              io::ParseJsonLines(contents, path.string()));
  return opened;
}

absl::Status JsonlLog::Append(const nlohmann::json& record) {
  return io::AppendLineDurable(path_, record.dump());
}

}  // namespace burnscreen::service
