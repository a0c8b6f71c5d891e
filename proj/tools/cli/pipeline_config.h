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

#ifndef BURNSCREEN_TOOLS_CLI_PIPELINE_CONFIG_H_
#define BURNSCREEN_TOOLS_CLI_PIPELINE_CONFIG_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "absl/status/statusor.h"
#include "corpus/clients.h"
#include "json.hpp"
#include "trainer/train.h"

namespace burnscreen::cli {

// Every input and output location of the pipeline plus training settings.
// Relative input paths resolve against the data directory.
struct PipelineConfig {
  std::filesystem::path data_dir = "data";
  std::filesystem::path work_dir = "work";
  // Defaults to <work_dir>/models.
  std::filesystem::path model_dir;
  // Defaults to <work_dir>/store, shared by `explain` and `serve`.
  std::filesystem::path store_dir;

  std::filesystem::path expression_table = "demo/expressions.tsv";
  std::filesystem::path online_corpus = "demo/online_corpus.tsv";
  std::filesystem::path survey_records = "demo/survey_fixture.jsonl";
  std::filesystem::path base_vocab = "base_vocab.txt";
  std::filesystem::path recorded_completions = "demo/recorded_completions.jsonl";
  // Built-in keying when unset.
  std::optional<std::filesystem::path> inventory;

  double split_ratio = 0.8;
  int augmentation_batch_size = 20;
  int augmentation_parallelism = 4;

  corpus::ChatCompletionConfig llm;
  // Environment variable holding the API key.
  std::string llm_api_key_env = "OPENAI_API_KEY";

  nlohmann::json train = nlohmann::json::object();
  // Per-dataset training overrides, applied after `train`.
  std::map<std::string, nlohmann::json> train_overrides = {
      {"v2", {{"epochs", 2}}}};

  std::filesystem::path Input(const std::filesystem::path& path) const;
  std::filesystem::path DatasetsDir() const { return work_dir / "datasets"; }
  std::filesystem::path ReportsDir() const { return work_dir / "reports"; }

  // Training settings for one dataset with the base vocabulary resolved.
  absl::StatusOr<trainer::TrainConfig> TrainConfigFor(const std::string& dataset) const;
};

// Keys: data_dir, work_dir, model_dir, store_dir, expression_table,
// online_corpus, survey_records, base_vocab, recorded_completions, inventory,
// split_ratio, augmentation_batch_size, augmentation_parallelism, llm
// {endpoint, model, temperature, api_key_env, timeout_seconds}, train,
// train_overrides. Unknown keys are rejected.
absl::StatusOr<PipelineConfig> PipelineConfigFromJson(const nlohmann::json& json);
absl::StatusOr<PipelineConfig> LoadPipelineConfig(const std::filesystem::path& path);

// Fills model_dir and store_dir when they are still empty.
void ResolveDefaultDirectories(PipelineConfig& config);

}  // namespace burnscreen::cli

#endif  // BURNSCREEN_TOOLS_CLI_PIPELINE_CONFIG_H_
