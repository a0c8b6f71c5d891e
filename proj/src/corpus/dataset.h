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

#ifndef BURNSCREEN_CORPUS_DATASET_H_
#define BURNSCREEN_CORPUS_DATASET_H_

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "common/label.h"
#include "json.hpp"

namespace burnscreen::corpus {

enum class Source { kOnline, kCurated, kGenerated, kSurvey };

std::string_view SourceName(Source source);
std::optional<Source> ParseSource(std::string_view name);

struct TextSample {
  std::string text;
  Label label = Label::kNoBurnout;
  Source source = Source::kCurated;
  // Expression the sample was generated from; set for generated samples.
  std::optional<std::string> origin_expression;

  friend bool operator==(const TextSample&, const TextSample&) = default;
};

enum class DatasetName { kOnline, kV1, kV2, kCombined };

std::string_view DatasetId(DatasetName name);
std::optional<DatasetName> ParseDatasetId(std::string_view id);

struct Dataset {
  DatasetName name = DatasetName::kV1;
  std::vector<TextSample> samples;

  LabelCounts Counts() const;
};

nlohmann::json SampleToJson(const TextSample& sample);
absl::StatusOr<TextSample> SampleFromJson(const nlohmann::json& record);

// Line-delimited records with fields text, label, source, origin_expression.
std::string SamplesToJsonLines(std::span<const TextSample> samples);
absl::StatusOr<std::vector<TextSample>> SamplesFromJsonLines(
    std::string_view contents, std::string_view source_name);

// Tab-separated with header text, label, source, origin_expression.
std::string SamplesToTsv(std::span<const TextSample> samples);

absl::Status SaveDataset(const Dataset& dataset,
                         const std::filesystem::path& jsonl_path);
absl::StatusOr<Dataset> LoadDataset(DatasetName name,
                                    const std::filesystem::path& jsonl_path);

// Loads the online baseline corpus: a TSV with at least `text` and `label`
// columns. Every sample is tagged Source::kOnline.
absl::StatusOr<Dataset> LoadOnlineCorpus(const std::filesystem::path& path);

}  // namespace burnscreen::corpus

#endif  // BURNSCREEN_CORPUS_DATASET_H_
