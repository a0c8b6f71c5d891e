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

#include "service/config.h"

#include <charconv>
#include <cstdlib>

#include "common/strings.h"
#include "common/text.h"

namespace burnscreen::service {

std::optional<std::string> ProcessEnvironment(std::string_view name) {
  const char* value = std::getenv(std::string(name).c_str());
  if (value == nullptr) return std::nullopt;
  return std::string(value);
}

absl::StatusOr<ServiceConfig> ServiceConfigFromEnvironment(
    const EnvironmentLookup& lookup) {
  ServiceConfig config;
  if (auto port = lookup(kPortVariable)) {
    int value = -1;
    const auto [end, ec] =
        std::from_chars(port->data(), port->data() + port->size(), value);
    if (ec != std::errc() || end != port->data() + port->size() || value < 0 ||
        value > 65535) {
      return absl::InvalidArgumentError(
          StrCat(kPortVariable, " must be a port number, got '", *port, "'"));
    }
    config.port = value;
  }
  if (auto host = lookup(kBindVariable)) config.host = *host;
  auto store = lookup(kStoreDirVariable);
  if (!store || store->empty()) {
    return absl::InvalidArgumentError(StrCat(kStoreDirVariable, " is not set"));
  }
  config.store_dir = *store;
  auto models = lookup(kModelDirVariable);
  if (!models || models->empty()) {
    return absl::InvalidArgumentError(StrCat(kModelDirVariable, " is not set"));
  }
  config.model_dir = *models;
  if (auto tokens = lookup(kReviewerTokensVariable)) {
    for (const std::string& token : text::Split(*tokens, ',')) {
      std::string trimmed = text::Trim(token);
      if (!trimmed.empty()) config.reviewer_tokens.push_back(std::move(trimmed));
    }
  }
  if (auto cutoff2 = lookup(kCutoff2Variable)) {
    if (*cutoff2 == "2w") {
      config.cutoff2 = olbi::Cutoff2Variant::kWorking;
    } else if (*cutoff2 == "2c") {
      config.cutoff2 = olbi::Cutoff2Variant::kClinical;
    } else {
      return absl::InvalidArgumentError(
          StrCat(kCutoff2Variable, " must be 2w or 2c, got '", *cutoff2, "'"));
    }
  }
  if (auto inventory = lookup(kInventoryVariable)) config.inventory_path = *inventory;
  return config;
}

}  // namespace burnscreen::service
