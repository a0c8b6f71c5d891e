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

#include "trainer/train.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <utility>

#include "common/io.h"
#include "common/random.h"
#include "common/status_macros.h"
#include "common/strings.h"
#include "common/text.h"
#include "trainer/graph.h"
#include "trainer/optimizer.h"

namespace burnscreen::trainer {

namespace {

constexpr uint64_t kInitSeedSalt = 0x9e3779b97f4a7c15ULL;

struct Encoded {
  std::vector<int> ids;
  int target = 0;
};

std::vector<Encoded> EncodeDataset(const WordPieceTokenizer& tokenizer,
                                   const corpus::Dataset& dataset,
                                   int max_length) {
  std::vector<Encoded> out;
  out.reserve(dataset.samples.size());
  for (const corpus::TextSample& s : dataset.samples) {
    out.push_back({tokenizer.Encode(s.text, max_length).ids, LabelValue(s.label)});
  }
  return out;
}

struct EvalResult {
  double loss = 0.0;
  evaluator::Metrics metrics;
};

EvalResult Evaluate(const EncoderClassifier& model,
                    std::span<const Encoded> samples) {
  std::vector<Label> predictions;
  std::vector<Label> labels;
  double loss = 0.0;
  for (const Encoded& s : samples) {
    const auto probs = model.Probabilities(s.ids);
    loss -= std::log(std::max(probs[s.target], 1e-300));
    predictions.push_back(PredictionFromScore(probs[1]).label);
    labels.push_back(*LabelFromInt(s.target));
  }
  EvalResult result;
  result.loss = loss / static_cast<double>(samples.size());
  result.metrics = *evaluator::ComputeMetrics(predictions, labels);
  return result;
}

template <typename T>
void Read(const nlohmann::json& json, const char* key, T& field,
          std::set<std::string>& seen) {
  if (json.contains(key)) {
    field = json.at(key).get<T>();
    seen.insert(key);
  }
}

}  // namespace

absl::Status ValidateTrainConfig(const TrainConfig& config) {
  if (config.epochs < 2 || config.epochs > 4) {
    return absl::InvalidArgumentError(
        StrCat("epochs must be 2, 3 or 4, got ", config.epochs));
  }
  if (config.train_batch_size < 1 || config.eval_batch_size < 1) {
    return absl::InvalidArgumentError("batch sizes must be positive");
  }
  if (config.warmup_steps < 0) {
    return absl::InvalidArgumentError("warmup_steps must be non-negative");
  }
  if (config.weight_decay < 0.0 || !(config.learning_rate > 0.0)) {
    return absl::InvalidArgumentError(
        "learning_rate must be positive and weight_decay non-negative");
  }
  if (config.max_length < 3 || config.min_eval_points < 1) {
    return absl::InvalidArgumentError(
        "max_length must be at least 3 and min_eval_points positive");
  }
  if (config.base_model_id.empty()) {
    return absl::InvalidArgumentError("base_model_id is empty");
  }
  return absl::OkStatus();
}

nlohmann::json TrainConfigToJson(const TrainConfig& config) {
  nlohmann::json encoder = EncoderConfigToJson(config.encoder);
  encoder.erase("vocab_size");
  return {{"epochs", config.epochs},
          {"train_batch_size", config.train_batch_size},
          {"eval_batch_size", config.eval_batch_size},
          {"warmup_steps", config.warmup_steps},
          {"weight_decay", config.weight_decay},
          {"rng_seed", config.rng_seed},
          {"base_model_id", config.base_model_id},
          {"base_vocab", config.base_vocab},
          {"optimizer", "adamw"},
          {"lr_scheduler", "linear"},
          {"learning_rate", config.learning_rate},
          {"adam_beta1", config.adam_beta1},
          {"adam_beta2", config.adam_beta2},
          {"adam_epsilon", config.adam_epsilon},
          {"max_grad_norm", config.max_grad_norm},
          {"max_length", config.max_length},
          {"min_eval_points", config.min_eval_points},
          {"encoder", encoder}};
}

absl::StatusOr<TrainConfig> TrainConfigFromJson(const nlohmann::json& json,
                                                TrainConfig base) {
  if (!json.is_object()) {
    return absl::InvalidArgumentError("train config must be a JSON object");
  }
  TrainConfig config = std::move(base);
  std::set<std::string> seen = {"optimizer", "lr_scheduler"};
  try {
    Read(json, "epochs", config.epochs, seen);
    Read(json, "train_batch_size", config.train_batch_size, seen);
    Read(json, "eval_batch_size", config.eval_batch_size, seen);
    Read(json, "warmup_steps", config.warmup_steps, seen);
    Read(json, "weight_decay", config.weight_decay, seen);
    Read(json, "rng_seed", config.rng_seed, seen);
    Read(json, "base_model_id", config.base_model_id, seen);
    Read(json, "base_vocab", config.base_vocab, seen);
    Read(json, "learning_rate", config.learning_rate, seen);
    Read(json, "adam_beta1", config.adam_beta1, seen);
    Read(json, "adam_beta2", config.adam_beta2, seen);
    Read(json, "adam_epsilon", config.adam_epsilon, seen);
    Read(json, "max_grad_norm", config.max_grad_norm, seen);
    Read(json, "max_length", config.max_length, seen);
    Read(json, "min_eval_points", config.min_eval_points, seen);
    if (json.contains("encoder")) {
      seen.insert("encoder");
      const nlohmann::json& e = json.at("encoder");
      std::set<std::string> encoder_seen;
      Read(e, "hidden_size", config.encoder.hidden_size, encoder_seen);
      Read(e, "num_layers", config.encoder.num_layers, encoder_seen);
      Read(e, "num_heads", config.encoder.num_heads, encoder_seen);
      Read(e, "intermediate_size", config.encoder.intermediate_size,
           encoder_seen);
      Read(e, "max_positions", config.encoder.max_positions, encoder_seen);
      Read(e, "dropout", config.encoder.dropout, encoder_seen);
      Read(e, "initializer_range", config.encoder.initializer_range,
           encoder_seen);
      Read(e, "layer_norm_eps", config.encoder.layer_norm_eps, encoder_seen);
      Read(e, "num_labels", config.encoder.num_labels, encoder_seen);
      Read(e, "vocab_size", config.encoder.vocab_size, encoder_seen);
    }
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(StrCat("train config: ", e.what()));
  }
  for (const auto& [key, value] : json.items()) {
    if (!seen.contains(key)) {
      return absl::InvalidArgumentError(
          StrCat("unknown train config key '", key, "'"));
    }
  }
  BURNSCREEN_RETURN_IF_ERROR(ValidateTrainConfig(config));
  return config;
}

absl::StatusOr<BaseModel> LoadBaseModel(const TrainConfig& config) {
  BURNSCREEN_RETURN_IF_ERROR(ValidateTrainConfig(config));
  if (config.base_model_id != kScratchModelId) {
    BURNSCREEN_ASSIGN_OR_RETURN(ClassifierArtifact artifact,
                                LoadArtifact(config.base_model_id));
    return BaseModel{std::move(artifact.tokenizer), std::move(artifact.model)};
  }
  if (config.base_vocab.empty()) {
    return absl::InvalidArgumentError(
        "a scratch base model needs a base vocabulary file");
  }
  BURNSCREEN_ASSIGN_OR_RETURN(
      WordPieceTokenizer tokenizer,
      WordPieceTokenizer::LoadVocabFile(config.base_vocab));
  EncoderConfig encoder = config.encoder;
  encoder.vocab_size = tokenizer.size();
  encoder.max_positions = std::max(encoder.max_positions, config.max_length);
  Rng rng(config.rng_seed ^ kInitSeedSalt);
  BURNSCREEN_ASSIGN_OR_RETURN(EncoderClassifier model,
                              EncoderClassifier::Initialize(encoder, rng));
  return BaseModel{std::move(tokenizer), std::move(model)};
}

absl::StatusOr<TrainResult> FineTune(BaseModel base,
                                     const corpus::Dataset& train,
                                     const corpus::Dataset& eval,
                                     const TrainConfig& config,
                                     const ProgressCallback& progress) {
  BURNSCREEN_RETURN_IF_ERROR(ValidateTrainConfig(config));
  if (train.samples.empty()) {
    return absl::InvalidArgumentError("training set is empty");
  }
  if (eval.samples.empty()) {
    return absl::InvalidArgumentError("evaluation set is empty");
  }
  const LabelCounts counts = train.Counts();
  if (counts.burnout == 0 || counts.no_burnout == 0) {
    return absl::InvalidArgumentError(StrCat(
        "training set has a single class (", counts.burnout, " burnout, ",
        counts.no_burnout, " no burnout); both labels 0 and 1 are required"));
  }
  if (base.tokenizer.size() != base.model.config().vocab_size) {
    return absl::FailedPreconditionError(
        StrCat("tokenizer size ", base.tokenizer.size(),
               " differs from model vocabulary ", base.model.config().vocab_size));
  }
  const int max_length =
      std::min(config.max_length, base.model.config().max_positions);
  const std::vector<Encoded> train_set =
      EncodeDataset(base.tokenizer, train, max_length);
  const std::vector<Encoded> eval_set =
      EncodeDataset(base.tokenizer, eval, max_length);

  const int batch = config.train_batch_size;
  const int steps_per_epoch =
      (static_cast<int>(train_set.size()) + batch - 1) / batch;
  const int total_steps = steps_per_epoch * config.epochs;
  const int eval_interval = std::max(1, total_steps / config.min_eval_points);

  EncoderClassifier& model = base.model;
  std::vector<Parameter*> params = model.parameters();
  for (Parameter* p : params) p->ResetState();
  AdamW optimizer({config.adam_beta1, config.adam_beta2, config.adam_epsilon,
                   config.weight_decay});
  Rng rng(config.rng_seed);
  std::vector<size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), 0);

  MetricsTimeline timeline;
  double loss_sum = 0.0;
  int loss_steps = 0;
  int step = 0;
  EvalResult last_eval;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    rng.Shuffle(order);
    for (int b = 0; b < steps_per_epoch; ++b) {
      const size_t begin = static_cast<size_t>(b) * batch;
      const size_t end = std::min(order.size(), begin + batch);
      const double weight = 1.0 / static_cast<double>(end - begin);
      for (Parameter* p : params) p->ZeroGrad();
      double batch_loss = 0.0;
      for (size_t i = begin; i < end; ++i) {
        const Encoded& sample = train_set[order[i]];
        Graph graph;
        const Graph::NodeId logits = model.Forward(graph, sample.ids, true, &rng);
        const Graph::NodeId loss = graph.SoftmaxCrossEntropy(logits, sample.target);
        const double value = graph.value(loss)(0, 0);
        if (!std::isfinite(value)) {
          return absl::InternalError(
              StrCat("non-finite loss at step ", step + 1, " (epoch ",
                     epoch + 1, ", sample ", order[i], ": '",
                     train.samples[order[i]].text, "')"));
        }
        batch_loss += value * weight;
        graph.Backward(loss, weight);
      }
      ClipGradNorm(params, config.max_grad_norm);
      optimizer.Step(params, LinearScheduleRate(step, config.warmup_steps,
                                                total_steps,
                                                config.learning_rate));
      ++step;
      loss_sum += batch_loss;
      ++loss_steps;
      if (step % eval_interval == 0 || step == total_steps) {
        last_eval = Evaluate(model, eval_set);
        TimelinePoint point;
        point.step = step;
        point.epoch = static_cast<double>(step) / steps_per_epoch;
        point.training_loss = loss_sum / loss_steps;
        point.eval_loss = last_eval.loss;
        point.eval_f1 = last_eval.metrics.f1;
        point.eval_accuracy = last_eval.metrics.accuracy;
        if (!std::isfinite(point.eval_loss)) {
          return absl::InternalError(
              StrCat("non-finite eval loss at step ", step));
        }
        timeline.points.push_back(point);
        if (progress) progress(point);
        loss_sum = 0.0;
        loss_steps = 0;
      }
    }
  }
  for (Parameter* p : params) p->ResetState();

  TrainResult result;
  result.artifact.dataset_name = std::string(corpus::DatasetId(train.name));
  result.artifact.config = config;
  result.artifact.config.encoder = model.config();
  result.artifact.tokenizer = std::move(base.tokenizer);
  result.artifact.model = std::move(base.model);
  result.artifact.final_metrics = last_eval.metrics;
  result.artifact.train_size = static_cast<int>(train_set.size());
  result.artifact.eval_size = static_cast<int>(eval_set.size());
  result.artifact.added_tokens =
      static_cast<int>(result.artifact.tokenizer.added_tokens().size());
  result.timeline = std::move(timeline);
  return result;
}

Prediction PredictionFromScore(double score) {
  return {score >= kDecisionThreshold ? Label::kBurnout : Label::kNoBurnout,
          score};
}

absl::StatusOr<Prediction> Predict(const ClassifierArtifact& artifact,
                                   std::string_view text) {
  if (text::Trim(text).empty()) {
    return absl::InvalidArgumentError("cannot classify an empty text");
  }
  const int max_length = std::min(artifact.config.max_length,
                                  artifact.model.config().max_positions);
  const Encoding encoding = artifact.tokenizer.Encode(text, max_length);
  return PredictionFromScore(artifact.model.Probabilities(encoding.ids)[1]);
}

absl::StatusOr<std::vector<Prediction>> PredictBatch(
    const ClassifierArtifact& artifact, std::span<const std::string> texts) {
  std::vector<Prediction> out;
  out.reserve(texts.size());
  for (size_t i = 0; i < texts.size(); ++i) {
    auto prediction = Predict(artifact, texts[i]);
    if (!prediction.ok()) {
      return absl::InvalidArgumentError(
          StrCat("text ", i, ": ", prediction.status().message()));
    }
    out.push_back(*prediction);
  }
  return out;
}

absl::Status SaveArtifact(const ClassifierArtifact& artifact,
                          const MetricsTimeline& timeline,
                          const std::filesystem::path& dir) {
  std::error_code error;
  std::filesystem::create_directories(dir, error);
  if (error) {
    return absl::UnavailableError(
        StrCat("cannot create ", dir.string(), ": ", error.message()));
  }
  if (artifact.tokenizer.size() != artifact.model.config().vocab_size) {
    return absl::FailedPreconditionError(
        "tokenizer and model vocabulary sizes disagree");
  }
  const nlohmann::json config = {
      {"dataset", artifact.dataset_name},
      {"train_config", TrainConfigToJson(artifact.config)},
      {"encoder", EncoderConfigToJson(artifact.model.config())},
      {"train_size", artifact.train_size},
      {"eval_size", artifact.eval_size},
      {"added_tokens", artifact.added_tokens},
      {"decision_threshold", kDecisionThreshold}};
  BURNSCREEN_RETURN_IF_ERROR(
      io::WriteFileAtomic(dir / "config.json", config.dump(2) + "\n"));
  BURNSCREEN_RETURN_IF_ERROR(io::WriteFileAtomic(
      dir / "metrics.json",
      evaluator::MetricsToJson(artifact.final_metrics).dump(2) + "\n"));
  BURNSCREEN_RETURN_IF_ERROR(artifact.tokenizer.Save(dir));
  BURNSCREEN_RETURN_IF_ERROR(artifact.model.SaveWeights(dir / "weights.bin"));
  BURNSCREEN_RETURN_IF_ERROR(
      io::WriteFileAtomic(dir / "timeline.tsv", timeline.ToTsv()));
  return io::WriteFileAtomic(
      dir / "curves.svg",
      timeline.ToSvg(StrCat("Training curves: ", artifact.dataset_name)));
}

absl::StatusOr<ClassifierArtifact> LoadArtifact(
    const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    return absl::NotFoundError(StrCat("no artifact directory at ", dir.string()));
  }
  BURNSCREEN_ASSIGN_OR_RETURN(nlohmann::json config,
                              io::ReadJson(dir / "config.json"));
  ClassifierArtifact artifact;
  if (!config.contains("dataset") || !config["dataset"].is_string() ||
      !config.contains("train_config") || !config.contains("encoder")) {
    return absl::DataLossError(
        StrCat((dir / "config.json").string(), ": missing fields"));
  }
  artifact.dataset_name = config["dataset"].get<std::string>();
  BURNSCREEN_ASSIGN_OR_RETURN(artifact.config,
                              TrainConfigFromJson(config["train_config"]));
  BURNSCREEN_ASSIGN_OR_RETURN(EncoderConfig encoder,
                              EncoderConfigFromJson(config["encoder"]));
  artifact.config.encoder = encoder;
  artifact.train_size = config.value("train_size", 0);
  artifact.eval_size = config.value("eval_size", 0);
  artifact.added_tokens = config.value("added_tokens", 0);
  BURNSCREEN_ASSIGN_OR_RETURN(artifact.tokenizer, WordPieceTokenizer::Load(dir));
  if (artifact.tokenizer.size() != encoder.vocab_size) {
    return absl::DataLossError(StrCat(
        dir.string(), ": tokenizer has ", artifact.tokenizer.size(),
        " entries but the encoder expects ", encoder.vocab_size));
  }
  Rng unused(0);
  BURNSCREEN_ASSIGN_OR_RETURN(artifact.model,
                              EncoderClassifier::Initialize(encoder, unused));
  BURNSCREEN_RETURN_IF_ERROR(artifact.model.LoadWeights(dir / "weights.bin"));
  BURNSCREEN_ASSIGN_OR_RETURN(nlohmann::json metrics,
                              io::ReadJson(dir / "metrics.json"));
  BURNSCREEN_ASSIGN_OR_RETURN(artifact.final_metrics,
                              evaluator::MetricsFromJson(metrics));
  return artifact;
}

RepeatSummary SummarizeRepeats(std::span<const double> values) {
  RepeatSummary summary;
  summary.values.assign(values.begin(), values.end());
  if (values.empty()) return summary;
  summary.mean = std::accumulate(values.begin(), values.end(), 0.0) /
                 static_cast<double>(values.size());
  summary.min = *std::min_element(values.begin(), values.end());
  summary.max = *std::max_element(values.begin(), values.end());
  if (values.size() > 1) {
    double squared = 0.0;
    for (double v : values) squared += (v - summary.mean) * (v - summary.mean);
    summary.stddev = std::sqrt(squared / static_cast<double>(values.size() - 1));
  }
  return summary;
}

}  // namespace burnscreen::trainer
