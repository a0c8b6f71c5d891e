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

#ifndef BURNSCREEN_TOOLS_CLI_MANIFEST_H_
#define BURNSCREEN_TOOLS_CLI_MANIFEST_H_

#include <filesystem>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "json.hpp"

namespace burnscreen::cli {

// {"file", "bytes", "sha256"} for one file, named without its directory. Manifests carry no timestamps,
// so re-running a command on unchanged inputs rewrites them byte for byte.
absl::StatusOr<nlohmann::json> FileEntry(const std::filesystem::path& path);

// Pretty-printed with sorted keys and a trailing newline.
absl::Status WriteManifest(const std::filesystem::path& path,
                           const nlohmann::json& manifest);

}  // namespace burnscreen::cli

#endif  // BURNSCREEN_TOOLS_CLI_MANIFEST_H_
