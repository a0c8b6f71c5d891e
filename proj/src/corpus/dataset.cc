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

#include "corpus/dataset.h"

#include "common/io.h"
#include "common/status_macros.h"
#include "common/strings.h"
#include "common/text.h"

namespace burnscreen::corpus {

namespace {

constexpr std::array<std::pair<std::string_view, Source>, 4> kSources = {{
    {"online", Source::kOnline},
    {"curated", Source::kCurated},
    {"generated", Source::kGenerated},
    {"survey", Source::kSurvey},
}};

constexpr std::array<std::pair<std::string_view, DatasetName>, 4> kDatasets = {{
    {"online", DatasetName::kOnline},
    {"v1", DatasetName::kV1},
    {"v2", DatasetName::kV2},
    {"combined", DatasetName::kCombined},
}};

absl::StatusOr<Label> ParseLabelField(std::string_view field) {
  if (field == "0") return Label::kNoBurnout;
  if (field == "1") return Label::kBurnout;
  return absl::InvalidArgumentError(
      StrCat("label must be 0 or 1, got '", field, "'"));
}

}  // namespace

std::string_view SourceName(Source source) {
  for (const auto& [name, value] : kSources) {
    if (value == source) return name;
  }
  return "unknown";
}

std::optional<Source> ParseSource(std::string_view name) {
  for (const auto& [candidate, value] : kSources) {
    if (candidate == name) return value;
  }
  return std::nullopt;
}

std::string_view DatasetId(DatasetName name) {
  for (const auto& [id, value] : kDatasets) {
    if (value == name) return id;
  }
  return "unknown";
}

std::optional<DatasetName> ParseDatasetId(std::string_view id) {
  for (const auto& [candidate, value] : kDatasets) {
    if (candidate == id) return value;
  }
  return std::nullopt;
}

LabelCounts Dataset::Counts() const {
  LabelCounts counts;
  for (const TextSample& sample : samples) counts.Add(sample.label);
  return counts;
}

nlohmann::json SampleToJson(const TextSample& sample) {
  nlohmann::json record = {
      {"text", sample.text},
      {"label", LabelValue(sample.label)},
      {"source", SourceName(sample.source)},
  };
  record["origin_expression"] = sample.origin_expression.has_value()
                                    ? nlohmann::json(*sample.origin_expression)
                                    : nlohmann::json(nullptr);
  return record;
}

absl::StatusOr<TextSample> SampleFromJson(const nlohmann::json& record) {
  if (!record.is_object() || !record.contains("text") ||
      !record["text"].is_string() || !record.contains("label") ||
      !record["label"].is_number_integer()) {
    return absl::InvalidArgumentError("sample needs string 'text' and integer 'label'");
  }
  TextSample sample;
  sample.text = record["text"].get<std::string>();
  const auto label = LabelFromInt(record["label"].get<long long>());
  if (!label) return absl::InvalidArgumentError("label must be 0 or 1");
  sample.label = *label;
  const auto source = ParseSource(record.value("source", std::string("curated")));
  if (!source) return absl::InvalidArgumentError("unknown sample source");
  sample.source = *source;
  if (record.contains("origin_expression") &&
      record["origin_expression"].is_string()) {
    sample.origin_expression = record["origin_expression"].get<std::string>();
  }
  return sample;
}

std::string SamplesToJsonLines(std::span<const TextSample> samples) {
  std::string out;
  for (const TextSample& sample : samples) {
    out += SampleToJson(sample).dump();
    out.push_back('\n');
  }
  return out;
}

absl::StatusOr<std::vector<TextSample>> SamplesFromJsonLines(
    std::string_view contents, std::string_view source_name) {
  BURNSCREEN_ASSIGN_OR_RETURN(auto records,
                              io::ParseJsonLines(contents, source_name));
  std::vector<TextSample> samples;
  samples.reserve(records.size());
  for (size_t i = 0; i < records.size(); ++i) {
    auto sample = SampleFromJson(records[i]);
    if (!sample.ok()) {
      return absl::InvalidArgumentError(StrCat(source_name, " record ", i + 1,
                                               ": ", sample.status().message()));
    }
    samples.push_back(*std::move(sample));
  }
  return samples;
}

std::string SamplesToTsv(std::span<const TextSample> samples) {
  std::string out =
      io::FormatTsvLine({"text", "label", "source", "origin_expression"});
  for (const TextSample& sample : samples) {
    out += io::FormatTsvLine({sample.text, StrCat(LabelValue(sample.label)),
                              std::string(SourceName(sample.source)),
                              sample.origin_expression.value_or("")});
  }
  return out;
}

absl::Status SaveDataset(const Dataset& dataset,
                         const std::filesystem::path& jsonl_path) {
  BURNSCREEN_RETURN_IF_ERROR(
      io::WriteFileAtomic(jsonl_path, SamplesToJsonLines(dataset.samples)));
  std::filesystem::path tsv_path = jsonl_path;
  tsv_path.replace_extension(".tsv");
  return io::WriteFileAtomic(tsv_path, SamplesToTsv(dataset.samples));
}

absl::StatusOr<Dataset> LoadDataset(DatasetName name,
                                    const std::filesystem::path& jsonl_path) {
  BURNSCREEN_ASSIGN_OR_RETURN(std::string contents, io::ReadFile(jsonl_path));
  Dataset dataset;
  dataset.name = name;
  BURNSCREEN_ASSIGN_OR_RETURN(
      dataset.samples, SamplesFromJsonLines(contents, jsonl_path.string()));
  return dataset;
}

absl::StatusOr<Dataset> LoadOnlineCorpus(const std::filesystem::path& path) {
  BURNSCREEN_ASSIGN_OR_RETURN(auto rows, io::ReadTsv(path, {"text", "label"}));
  Dataset dataset;
  dataset.name = DatasetName::kOnline;
  for (const io::TsvRow& row : rows) {
    auto label = ParseLabelField(text::Trim(row.Get("label")));
    if (!label.ok()) {
      return absl::InvalidArgumentError(StrCat(path.string(), ":",
                                               row.line_number, ": ",
                                               label.status().message()));
    }
    const std::string normalized = text::NormalizeWhitespace(row.Get("text"));
    if (normalized.empty()) {
      return absl::InvalidArgumentError(
          StrCat(path.string(), ":", row.line_number, ": empty text"));
    }
    dataset.samples.push_back({normalized, *label, Source::kOnline, std::nullopt});
  }
  return dataset;
}

}  // namespace burnscreen::corpus
