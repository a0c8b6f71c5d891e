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

#include "cli/manifest.h"

#include "common/hash.h"
#include "common/io.h"
#include "common/status_macros.h"

namespace burnscreen::cli {

absl::StatusOr<nlohmann::json> FileEntry(const std::filesystem::path& path) {
  BURNSCREEN_ASSIGN_OR_RETURN(std::string contents, io::ReadFile(path));
  return nlohmann::json{{"file", path.filename().string()},
                        {"bytes", contents.size()},
                        {"sha256", Sha256Hex(contents)}};
}

absl::Status WriteManifest(const std::filesystem::path& path,
                           const nlohmann::json& manifest) {
  return io::WriteFileAtomic(path, manifest.dump(2) + "\n");
}

}  // namespace burnscreen::cli
