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

#ifndef BURNSCREEN_TRAINER_TRAIN_H_
#define BURNSCREEN_TRAINER_TRAIN_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "common/label.h"
#include "corpus/dataset.h"
#include "evaluator/metrics.h"
#include "json.hpp"
#include "trainer/encoder.h"
#include "trainer/timeline.h"
#include "trainer/tokenizer.h"

namespace burnscreen::trainer {

inline constexpr std::string_view kScratchModelId = "scratch";

struct TrainConfig {
  int epochs = 3;
  int train_batch_size = 16;
  int eval_batch_size = 64;
  int warmup_steps = 500;
  double weight_decay = 0.01;
  uint64_t rng_seed = 42;
  // "scratch" for a freshly initialized encoder over `base_vocab`, otherwise
  // the directory of a saved artifact to continue from.
  std::string base_model_id = std::string(kScratchModelId);
  std::string base_vocab;
  double learning_rate = 3e-3;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_epsilon = 1e-8;
  double max_grad_norm = 1.0;
  int max_length = 128;
  // Lower bound on evaluation points per run.
  int min_eval_points = 10;
  EncoderConfig encoder;
};

absl::Status ValidateTrainConfig(const TrainConfig& config);
nlohmann::json TrainConfigToJson(const TrainConfig& config);
// Missing keys keep their defaults; unknown keys are rejected.
absl::StatusOr<TrainConfig> TrainConfigFromJson(const nlohmann::json& json,
                                                TrainConfig base = {});

struct BaseModel {
  WordPieceTokenizer tokenizer;
  EncoderClassifier model;
};

// Fresh encoder over the base vocabulary, or a saved artifact's tokenizer
// and weights.
absl::StatusOr<BaseModel> LoadBaseModel(const TrainConfig& config);

struct ClassifierArtifact {
  std::string dataset_name;
  TrainConfig config;
  WordPieceTokenizer tokenizer;
  EncoderClassifier model;
  evaluator::Metrics final_metrics;
  int train_size = 0;
  int eval_size = 0;
  int added_tokens = 0;
};

struct TrainResult {
  ClassifierArtifact artifact;
  MetricsTimeline timeline;
};

using ProgressCallback = std::function<void(const TimelinePoint&)>;

// Trains `base` on `train`, evaluating on `eval` every
// max(1, total_steps / min_eval_points) updates and once more at the end.
absl::StatusOr<TrainResult> FineTune(BaseModel base,
                                     const corpus::Dataset& train,
                                     const corpus::Dataset& eval,
                                     const TrainConfig& config,
                                     const ProgressCallback& progress = {});

struct Prediction {
  Label label = Label::kNoBurnout;
  // Positive-class probability.
  double score = 0.0;

  friend bool operator==(const Prediction&, const Prediction&) = default;
};

// Label is burnout iff score >= kDecisionThreshold.
inline constexpr double kDecisionThreshold = 0.5;
Prediction PredictionFromScore(double score);

absl::StatusOr<Prediction> Predict(const ClassifierArtifact& artifact,
                                   std::string_view text);
absl::StatusOr<std::vector<Prediction>> PredictBatch(
    const ClassifierArtifact& artifact, std::span<const std::string> texts);

// Writes config.json, metrics.json, vocab.txt, added_tokens.json,
// weights.bin, timeline.tsv and curves.svg into `dir`.
absl::Status SaveArtifact(const ClassifierArtifact& artifact,
                          const MetricsTimeline& timeline,
                          const std::filesystem::path& dir);
absl::StatusOr<ClassifierArtifact> LoadArtifact(
    const std::filesystem::path& dir);

struct RepeatSummary {
  std::vector<double> values;
  double mean = 0.0;
  // Sample standard deviation; 0 for a single value.
  double stddev = 0.0;
  double min = 0.0;
  double max = 0.0;
};
RepeatSummary SummarizeRepeats(std::span<const double> values);

}  // namespace burnscreen::trainer

#endif  // BURNSCREEN_TRAINER_TRAIN_H_
