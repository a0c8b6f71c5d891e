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

#ifndef BURNSCREEN_SERVICE_JSONL_LOG_H_
#define BURNSCREEN_SERVICE_JSONL_LOG_H_

#include <filesystem>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "json.hpp"

namespace burnscreen::service {

// Append-only file of one JSON object per line. Each append is a single
// write followed by fsync, so a record is either fully present or missing.
class JsonlLog {
 public:
  struct Opened;

  // Reads every complete record. A trailing fragment without its newline is
  // the remains of an interrupted append; it is cut off so later appends
  // start on a clean line.
  static absl::StatusOr<Opened> Open(const std::filesystem::path& path);

  absl::Status Append(const nlohmann::json& record);
  const std::filesystem::path& path() const { return path_; }

 private:
  explicit JsonlLog(std::filesystem::path path) : path_(std::move(path)) {}
  std::filesystem::path path_;
};

struct JsonlLog::Opened {
  JsonlLog log;
  std::vector<nlohmann::json> records;
  bool dropped_torn_record = false;
};

}  // namespace burnscreen::service

#endif  // BURNSCREEN_SERVICE_JSONL_LOG_H_
