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

#ifndef BURNSCREEN_SERVICE_CONFIG_H_
#define BURNSCREEN_SERVICE_CONFIG_H_

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "olbi/cutoff.h"

namespace burnscreen::service {

inline constexpr std::string_view kPortVariable = "BURNSCREEN_PORT";
inline constexpr std::string_view kBindVariable = "BURNSCREEN_BIND";
inline constexpr std::string_view kStoreDirVariable = "BURNSCREEN_STORE_DIR";
inline constexpr std::string_view kModelDirVariable = "BURNSCREEN_MODEL_DIR";
inline constexpr std::string_view kReviewerTokensVariable =
    "BURNSCREEN_REVIEWER_TOKENS";
inline constexpr std::string_view kCutoff2Variable = "BURNSCREEN_CUTOFF2";
inline constexpr std::string_view kInventoryVariable = "BURNSCREEN_INVENTORY";

struct ServiceConfig {
  std::string host = "127.0.0.1";
  // 0 picks a free port.
  int port = 8080;
  // surveys.jsonl, verdicts.jsonl and packets.jsonl live here.
  std::filesystem::path store_dir;
  // One trained artifact per dataset subdirectory (online, v1, v2, combined).
  std::filesystem::path model_dir;
  // Invite tokens accepted on X-Reviewer-Token.
  std::vector<std::string> reviewer_tokens;
  olbi::Cutoff2Variant cutoff2 = olbi::Cutoff2Variant::kWorking;
  // Keying file; the built-in default keying when unset.
  std::optional<std::filesystem::path> inventory_path;
};

using EnvironmentLookup =
    std::function<std::optional<std::string>(std::string_view name)>;

// Reads the process environment.
std::optional<std::string> ProcessEnvironment(std::string_view name);

// Store and model directories are mandatory; tokens are comma separated.
absl::StatusOr<ServiceConfig> ServiceConfigFromEnvironment(
    const EnvironmentLookup& lookup = ProcessEnvironment);

}  // namespace burnscreen::service

#endif  // BURNSCREEN_SERVICE_CONFIG_H_
