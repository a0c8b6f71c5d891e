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

#include "cli/pipeline_config.h"

#include <set>

#include "common/io.h"
#include "common/status_macros.h"
#include "common/strings.h"
#include "corpus/dataset.h"

namespace burnscreen::cli {

namespace fs = std::filesystem;

fs::path PipelineConfig::Input(const fs::path& path) const {
  return path.is_absolute() ? path : data_dir / path;
}

absl::StatusOr<trainer::TrainConfig> PipelineConfig::TrainConfigFor(
    const std::string& dataset) const {
  trainer::TrainConfig config;
  config.base_vocab = Input(base_vocab).string();
  if (!train.empty()) {
    BURNSCREEN_ASSIGN_OR_RETURN(config, trainer::TrainConfigFromJson(train, config));
  }
  if (auto it = train_overrides.find(dataset); it != train_overrides.end()) {
    BURNSCREEN_ASSIGN_OR_RETURN(config,
                                trainer::TrainConfigFromJson(it->second, config));
  }
  return config;
}

absl::StatusOr<PipelineConfig> PipelineConfigFromJson(const nlohmann::json& json) {
  if (!json.is_object()) {
    return absl::InvalidArgumentError("pipeline config must be a JSON object");
  }
  static const std::set<std::string> kKeys = {
      "data_dir", "work_dir", "model_dir", "store_dir", "expression_table",
      "online_corpus", "survey_records", "base_vocab", "recorded_completions",
      "inventory", "split_ratio", "augmentation_batch_size",
      "augmentation_parallelism", "llm", "train", "train_overrides"};
  for (const auto& [key, value] : json.items()) {
    if (!kKeys.contains(key)) {
      return absl::InvalidArgumentError(StrCat("unknown config key '", key, "'"));
    }
  }
  PipelineConfig config;
  try {
    auto path = [&](const char* key, fs::path& out) {
      if (json.contains(key)) out = json[key].get<std::string>();
    };
    path("data_dir", config.data_dir);
    path("work_dir", config.work_dir);
    path("model_dir", config.model_dir);
    path("store_dir", config.store_dir);
    path("expression_table", config.expression_table);
    path("online_corpus", config.online_corpus);
    path("survey_records", config.survey_records);
    path("base_vocab", config.base_vocab);
    path("recorded_completions", config.recorded_completions);
    if (json.contains("inventory") && !json["inventory"].is_null()) {
      config.inventory = json["inventory"].get<std::string>();
    }
    config.split_ratio = json.value("split_ratio", config.split_ratio);
    config.augmentation_batch_size =
        json.value("augmentation_batch_size", config.augmentation_batch_size);
    config.augmentation_parallelism =
        json.value("augmentation_parallelism", config.augmentation_parallelism);
    if (json.contains("llm")) {
      const nlohmann::json& llm = json["llm"];
      config.llm.endpoint = llm.value("endpoint", config.llm.endpoint);
      config.llm.model = llm.value("model", config.llm.model);
      config.llm.temperature = llm.value("temperature", config.llm.temperature);
      config.llm.timeout_seconds =
          llm.value("timeout_seconds", config.llm.timeout_seconds);
      config.llm_api_key_env = llm.value("api_key_env", config.llm_api_key_env);
    }
    if (json.contains("train")) config.train = json["train"];
    if (json.contains("train_overrides")) {
      config.train_overrides.clear();
      for (const auto& [dataset, overrides] : json["train_overrides"].items()) {
        config.train_overrides[dataset] = overrides;
      }
    }
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(StrCat("bad pipeline config: ", e.what()));
  }
  if (!(config.split_ratio > 0.0 && config.split_ratio < 1.0)) {
    return absl::InvalidArgumentError("split_ratio must lie strictly between 0 and 1");
  }
  if (config.augmentation_batch_size < 1 || config.augmentation_parallelism < 1) {
    return absl::InvalidArgumentError(
        "augmentation batch size and parallelism must be positive");
  }
  BURNSCREEN_RETURN_IF_ERROR(config.TrainConfigFor("online").status());
  for (const auto& [dataset, overrides] : config.train_overrides) {
    if (!corpus::ParseDatasetId(dataset)) {
      return absl::InvalidArgumentError(
          StrCat("train_overrides names unknown dataset '", dataset, "'"));
    }
    BURNSCREEN_RETURN_IF_ERROR(config.TrainConfigFor(dataset).status());
  }
  return config;
}

absl::StatusOr<PipelineConfig> LoadPipelineConfig(const fs::path& path) {
  BURNSCREEN_ASSIGN_OR_RETURN(std::string contents, io::ReadFile(path));
  const nlohmann::json json = nlohmann::json::parse(contents, nullptr, false);
  if (json.is_discarded()) {
    return absl::InvalidArgumentError(StrCat(path.string(), " is not valid JSON"));
  }
  auto config = PipelineConfigFromJson(json);
  if (!config.ok()) {
    return absl::InvalidArgumentError(
        StrCat(path.string(), ": ", config.status().message()));
  }
  return config;
}

void ResolveDefaultDirectories(PipelineConfig& config) {
  if (config.model_dir.empty()) config.model_dir = config.work_dir / "models";
  if (config.store_dir.empty()) config.store_dir = config.work_dir / "store";
}

}  // namespace burnscreen::cli
