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

#ifndef BURNSCREEN_EVALUATOR_CROSS_EVAL_H_
#define BURNSCREEN_EVALUATOR_CROSS_EVAL_H_

#include <array>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "common/label.h"
#include "evaluator/metrics.h"
#include "evaluator/test_set.h"
#include "json.hpp"
#include "olbi/cutoff.h"
#include "trainer/train.h"

namespace burnscreen::evaluator {

// Anything that labels a batch of texts.
class TextClassifier {
 public:
  virtual ~TextClassifier() = default;
  virtual absl::StatusOr<std::vector<Label>> Classify(
      std::span<const std::string> texts) const = 0;
};

class ArtifactClassifier : public TextClassifier {
 public:
  explicit ArtifactClassifier(trainer::ClassifierArtifact artifact)
      : artifact_(std::move(artifact)) {}
  absl::StatusOr<std::vector<Label>> Classify(
      std::span<const std::string> texts) const override;
  const trainer::ClassifierArtifact& artifact() const { return artifact_; }

 private:
  trainer::ClassifierArtifact artifact_;
};

// One Table-4 row. `classifier` is null when the model could not be loaded;
// `load_error` then says why.
struct ModelSlot {
  std::string model_name;
  std::string dataset;
  int epochs = 0;
  const TextClassifier* classifier = nullptr;
  std::string load_error;
};

// Dataset subdirectories a model directory may hold, in report order.
inline constexpr std::array<std::string_view, 4> kModelDatasets = {
    "online", "v1", "v2", "combined"};

// Artifacts found under <dir>/<dataset>. Every dataset gets a slot; missing
// or unreadable artifacts leave a null classifier and a load error.
struct ModelDirectory {
  std::vector<std::unique_ptr<ArtifactClassifier>> classifiers;
  std::vector<ModelSlot> slots;

  int loaded() const { return static_cast<int>(classifiers.size()); }
};

ModelDirectory LoadModelDirectory(const std::filesystem::path& dir);

struct ReportCell {
  olbi::CutoffName rule = olbi::CutoffName::kCutoff1;
  // Per-answer metrics; absent when the row has no usable model.
  std::optional<Metrics> metrics;
  // Per-respondent majority vote (ties count as burnout).
  std::optional<Metrics> respondent_metrics;
};

struct ReportRow {
  std::string model_name;
  std::string dataset;
  int epochs = 0;
  std::string error;
  std::vector<ReportCell> cells;
};

struct CrossEvalReport {
  std::vector<olbi::CutoffName> rules;
  std::vector<ReportRow> rows;
  int text_count = 0;
  int respondent_count = 0;

  // True when every cell has metrics.
  bool complete() const;
  int cell_count() const;
};

// Classifies the test set once per model, then scores the predictions
// against each rule's labels. Rows follow `models` order.
CrossEvalReport CrossEvaluate(std::span<const ModelSlot> models,
                              const TestSet& test_set,
                              std::span<const olbi::CutoffRule> rules);

// Column header for a rule in the F1 table, e.g. "Cut-Off 2".
std::string CutoffColumnName(olbi::CutoffName rule);

nlohmann::json CrossEvalReportToJson(const CrossEvalReport& report);
// Model | Dataset | Epochs | F1 per rule, blank cells shown as "n/a".
std::string RenderTable4Text(const CrossEvalReport& report);
// One line per cell with the confusion counts.
std::string Table4Tsv(const CrossEvalReport& report);
std::string RenderTable4Html(const CrossEvalReport& report);

// Respondent-level label distribution for the reporting rules.
std::vector<olbi::RuleLabelCount> Table3(const TestSet& test_set,
                                         std::span<const olbi::CutoffRule> rules);
nlohmann::json Table3ToJson(std::span<const olbi::RuleLabelCount> table);
std::string RenderTable3Html(std::span<const olbi::RuleLabelCount> table);

}  // namespace burnscreen::evaluator

#endif  // BURNSCREEN_EVALUATOR_CROSS_EVAL_H_
