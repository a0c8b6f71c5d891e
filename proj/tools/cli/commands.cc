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

#include "cli/commands.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <memory>
#include <numeric>
#include <set>

#include "CLI11.hpp"
#include "cli/manifest.h"
#include "common/io.h"
#include "common/random.h"
#include "common/status_macros.h"
#include "common/strings.h"
#include "corpus/builder.h"
#include "corpus/clients.h"
#include "corpus/expression_table.h"
#include "corpus/pipeline.h"
#include "evaluator/cross_eval.h"
#include "evaluator/survey.h"
#include "evaluator/test_set.h"
#include "explainer/integrated_gradients.h"
#include "explainer/packet.h"
#include "service/config.h"
#include "service/server.h"
#include "trainer/encoder.h"
#include "trainer/tokenizer.h"
#include "trainer/train.h"

namespace burnscreen::cli {

namespace fs = std::filesystem;

namespace {

absl::StatusOr<corpus::DatasetName> DatasetFor(const std::string& id) {
  auto name = corpus::ParseDatasetId(id);
  if (!name) {
    return absl::InvalidArgumentError(
        StrCat("unknown dataset '", id, "' (expected online, v1, v2 or combined)"));
  }
  return *name;
}

fs::path DatasetPath(const PipelineConfig& config, std::string_view id) {
  return config.DatasetsDir() / StrCat(id, ".jsonl");
}

// Loads a dataset produced by an earlier build-dataset run.
absl::StatusOr<corpus::Dataset> LoadBuilt(const PipelineConfig& config,
                                          corpus::DatasetName name) {
  const fs::path path = DatasetPath(config, corpus::DatasetId(name));
  if (!fs::exists(path)) {
    return absl::FailedPreconditionError(
        StrCat("dataset ", corpus::DatasetId(name), " not found at ", path.string(),
               "; run `burnscreen build-dataset ", corpus::DatasetId(name),
               "` first"));
  }
  return corpus::LoadDataset(name, path);
}

nlohmann::json CountsJson(const LabelCounts& counts) {
  return {{"burnout", counts.burnout},
          {"no_burnout", counts.no_burnout},
          {"total", counts.burnout + counts.no_burnout}};
}

absl::Status WriteJsonLines(const fs::path& path,
                            const std::vector<nlohmann::json>& records) {
  return io::WriteFileAtomic(path, io::FormatJsonLines(records));
}

absl::StatusOr<nlohmann::json> FileEntries(const std::vector<fs::path>& paths) {
  nlohmann::json entries = nlohmann::json::array();
  for (const fs::path& path : paths) {
    BURNSCREEN_ASSIGN_OR_RETURN(nlohmann::json entry, FileEntry(path));
    entries.push_back(std::move(entry));
  }
  return entries;
}

absl::StatusOr<std::unique_ptr<corpus::TextGenerationClient>> MakeClient(
    const PipelineConfig& config, LlmChoice llm, uint64_t seed) {
  switch (llm) {
    case LlmChoice::kRecorded: {
      BURNSCREEN_ASSIGN_OR_RETURN(
          auto client,
          corpus::RecordedCompletionClient::Load(config.Input(config.recorded_completions)));
      return std::unique_ptr<corpus::TextGenerationClient>(std::move(client));
    }
    case LlmChoice::kSynthetic:
      return std::unique_ptr<corpus::TextGenerationClient>(
          std::make_unique<corpus::SyntheticCompletionClient>(seed));
    case LlmChoice::kHttp: {
      corpus::ChatCompletionConfig llm_config = config.llm;
      const char* key = std::getenv(config.llm_api_key_env.c_str());
      if (key == nullptr || *key == '\0') {
        return absl::FailedPreconditionError(
            StrCat("environment variable ", config.llm_api_key_env,
                   " is not set; pass --mock-llm to replay recorded completions"));
      }
      llm_config.api_key = key;
      return std::unique_ptr<corpus::TextGenerationClient>(
          std::make_unique<corpus::ChatCompletionClient>(std::move(llm_config)));
    }
  }
  return absl::InternalError("unhandled LLM choice");
}

std::string_view LlmChoiceName(LlmChoice llm) {
  switch (llm) {
    case LlmChoice::kHttp:
      return "http";
    case LlmChoice::kRecorded:
      return "recorded";
    case LlmChoice::kSynthetic:
      return "synthetic";
  }
  return "unknown";
}

struct BuiltDataset {
  corpus::Dataset dataset;
  std::vector<fs::path> inputs;
  std::vector<fs::path> extra_outputs;
  nlohmann::json details = nlohmann::json::object();
  absl::Status status;
};

absl::StatusOr<BuiltDataset> BuildV2Dataset(const PipelineConfig& config,
                                            LlmChoice llm, uint64_t seed) {
  BuiltDataset built;
  BURNSCREEN_ASSIGN_OR_RETURN(corpus::Dataset v1,
                              LoadBuilt(config, corpus::DatasetName::kV1));
  BURNSCREEN_ASSIGN_OR_RETURN(auto client, MakeClient(config, llm, seed));
  corpus::AugmentationOptions options;
  options.max_parallel = config.augmentation_parallelism;
  BURNSCREEN_ASSIGN_OR_RETURN(
      corpus::V2Build v2,
      corpus::BuildV2(v1, *client, options, config.augmentation_batch_size));
  built.dataset = std::move(v2.dataset);
  built.inputs.push_back(DatasetPath(config, "v1"));
  if (llm == LlmChoice::kRecorded) {
    built.inputs.push_back(config.Input(config.recorded_completions));
  }

  const fs::path dir = config.DatasetsDir();
  std::vector<nlohmann::json> completions;
  for (const auto& record : v2.augmentation.completions) {
    completions.push_back(corpus::CompletionRecordToJson(record));
  }
  std::vector<nlohmann::json> quarantine;
  for (const auto& entry : v2.augmentation.quarantined) {
    quarantine.push_back(corpus::QuarantineToJson(entry));
  }
  std::map<std::string, int> removed_by_reason;
  for (const auto& removed : v2.cleaning.removed) {
    nlohmann::json record = corpus::SampleToJson(removed.sample);
    record["reason"] = std::string(corpus::RemovalReasonName(removed.reason));
    quarantine.push_back(std::move(record));
    ++removed_by_reason[std::string(corpus::RemovalReasonName(removed.reason))];
  }
  std::vector<nlohmann::json> failures;
  for (const auto& failure : v2.augmentation.failures) {
    failures.push_back({{"job_index", failure.job_index},
                        {"expressions", failure.expressions},
                        {"attempts", failure.attempts},
                        {"error", std::string(failure.status.message())}});
  }
  const fs::path completions_path = dir / "v2.completions.jsonl";
  const fs::path quarantine_path = dir / "v2.quarantine.jsonl";
  const fs::path failures_path = dir / "v2.failures.jsonl";
  BURNSCREEN_RETURN_IF_ERROR(WriteJsonLines(completions_path, completions));
  BURNSCREEN_RETURN_IF_ERROR(WriteJsonLines(quarantine_path, quarantine));
  BURNSCREEN_RETURN_IF_ERROR(WriteJsonLines(failures_path, failures));
  built.extra_outputs = {completions_path, quarantine_path, failures_path};

  built.details = {{"llm", std::string(LlmChoiceName(llm))},
                   {"jobs", v2.jobs.size()},
                   {"failed_jobs", failures.size()},
                   {"candidates", v2.augmentation.candidates.size()},
                   {"unattributed_lines", v2.augmentation.quarantined.size()},
                   {"removed", removed_by_reason},
                   {"batch_size", config.augmentation_batch_size}};
  if (llm == LlmChoice::kSynthetic) built.details["llm_seed"] = seed;
  if (llm == LlmChoice::kHttp) built.details["llm_model"] = config.llm.model;
  if (!failures.empty()) {
    built.status = absl::UnavailableError(
        StrCat(failures.size(), " of ", v2.jobs.size(),
               " generation jobs failed; see ", failures_path.string()));
  }
  return built;
}

absl::StatusOr<BuiltDataset> BuildNamed(const PipelineConfig& config,
                                        corpus::DatasetName name, LlmChoice llm,
                                        uint64_t seed) {
  BuiltDataset built;
  switch (name) {
    case corpus::DatasetName::kOnline: {
      const fs::path input = config.Input(config.online_corpus);
      BURNSCREEN_ASSIGN_OR_RETURN(built.dataset, corpus::LoadOnlineCorpus(input));
      built.inputs.push_back(input);
      return built;
    }
    case corpus::DatasetName::kV1: {
      const fs::path input = config.Input(config.expression_table);
      BURNSCREEN_ASSIGN_OR_RETURN(auto records, corpus::LoadExpressionTable(input));
      BURNSCREEN_ASSIGN_OR_RETURN(built.dataset, corpus::BuildV1(records));
      built.inputs.push_back(input);
      return built;
    }
    case corpus::DatasetName::kV2:
      return BuildV2Dataset(config, llm, seed);
    case corpus::DatasetName::kCombined: {
      std::vector<corpus::Dataset> parts;
      for (corpus::DatasetName part :
           {corpus::DatasetName::kOnline, corpus::DatasetName::kV2}) {
        BURNSCREEN_ASSIGN_OR_RETURN(corpus::Dataset dataset, LoadBuilt(config, part));
        parts.push_back(std::move(dataset));
        built.inputs.push_back(DatasetPath(config, corpus::DatasetId(part)));
      }
      BURNSCREEN_ASSIGN_OR_RETURN(built.dataset, corpus::Combine(parts));
      return built;
    }
  }
  return absl::InternalError("unhandled dataset");
}

absl::StatusOr<olbi::Inventory> InventoryFor(const PipelineConfig& config) {
  if (!config.inventory) return olbi::DefaultInventory();
  return olbi::LoadInventory(config.Input(*config.inventory));
}

fs::path SurveyPath(const PipelineConfig& config,
                    const std::optional<fs::path>& surveys) {
  return surveys ? *surveys : config.Input(config.survey_records);
}

absl::StatusOr<evaluator::TestSet> LoadTestSet(
    const PipelineConfig& config, const std::vector<olbi::CutoffRule>& rules,
    const fs::path& survey_path) {
  BURNSCREEN_ASSIGN_OR_RETURN(auto records, evaluator::LoadSurveyRecords(survey_path));
  BURNSCREEN_ASSIGN_OR_RETURN(olbi::Inventory inventory, InventoryFor(config));
  return evaluator::AssembleTestSet(records, inventory, rules);
}

}  // namespace

absl::Status BuildDataset(const CommandContext& ctx, const std::string& dataset,
                          LlmChoice llm, uint64_t llm_seed) {
  const PipelineConfig& config = ctx.config;
  BURNSCREEN_ASSIGN_OR_RETURN(corpus::DatasetName name, DatasetFor(dataset));
  std::error_code ec;
  fs::create_directories(config.DatasetsDir(), ec);
  if (ec) {
    return absl::InternalError(
        StrCat("cannot create ", config.DatasetsDir().string(), ": ", ec.message()));
  }
  BURNSCREEN_ASSIGN_OR_RETURN(BuiltDataset built,
                              BuildNamed(config, name, llm, llm_seed));
  if (built.dataset.samples.empty()) {
    return absl::FailedPreconditionError(StrCat("dataset ", dataset, " is empty"));
  }

  const fs::path jsonl = DatasetPath(config, dataset);
  const fs::path tsv = config.DatasetsDir() / StrCat(dataset, ".tsv");
  BURNSCREEN_RETURN_IF_ERROR(corpus::SaveDataset(built.dataset, jsonl));
  BURNSCREEN_RETURN_IF_ERROR(
      io::WriteFileAtomic(tsv, corpus::SamplesToTsv(built.dataset.samples)));

  std::vector<fs::path> outputs = {jsonl, tsv};
  outputs.insert(outputs.end(), built.extra_outputs.begin(), built.extra_outputs.end());
  nlohmann::json manifest = {{"command", "build-dataset"},
                             {"dataset", dataset},
                             {"counts", CountsJson(built.dataset.Counts())},
                             {"details", built.details}};
  BURNSCREEN_ASSIGN_OR_RETURN(manifest["inputs"], FileEntries(built.inputs));
  BURNSCREEN_ASSIGN_OR_RETURN(manifest["outputs"], FileEntries(outputs));
  BURNSCREEN_RETURN_IF_ERROR(WriteManifest(
      config.DatasetsDir() / StrCat(dataset, ".manifest.json"), manifest));

  const LabelCounts counts = built.dataset.Counts();
  *ctx.out << fmt::format("{}\t{} burnout\t{} no burnout\t{}\n", dataset,
                          counts.burnout, counts.no_burnout, jsonl.string());
  return built.status;
}

absl::Status Train(const CommandContext& ctx, const std::string& dataset,
                   const TrainOptions& options) {
  const PipelineConfig& config = ctx.config;
  BURNSCREEN_ASSIGN_OR_RETURN(corpus::DatasetName name, DatasetFor(dataset));
  if (options.repeats < 1) {
    return absl::InvalidArgumentError("--repeats must be at least 1");
  }
  BURNSCREEN_ASSIGN_OR_RETURN(corpus::Dataset data, LoadBuilt(config, name));
  if (data.samples.empty()) {
    return absl::FailedPreconditionError(
        StrCat("dataset ", dataset, " has no samples; nothing to train on"));
  }
  BURNSCREEN_ASSIGN_OR_RETURN(trainer::TrainConfig train_config,
                              config.TrainConfigFor(dataset));
  if (options.epochs) train_config.epochs = *options.epochs;

  // New vocabulary comes from the curated expressions and their control
  // phrases, whatever the dataset.
  const fs::path table_path = config.Input(config.expression_table);
  BURNSCREEN_ASSIGN_OR_RETURN(auto records, corpus::LoadExpressionTable(table_path));
  BURNSCREEN_ASSIGN_OR_RETURN(corpus::Dataset v1, corpus::BuildV1(records));
  std::vector<std::string> expressions;
  for (const corpus::TextSample& sample : v1.samples) expressions.push_back(sample.text);
  const std::vector<std::string> terms = trainer::ExtractVocabularyTerms(expressions);

  const fs::path artifact_dir = config.model_dir / dataset;
  std::vector<double> f1s;
  nlohmann::json runs = nlohmann::json::array();
  for (int r = 0; r < options.repeats; ++r) {
    trainer::TrainConfig run_config = train_config;
    run_config.rng_seed = options.seed + static_cast<uint64_t>(r);
    BURNSCREEN_RETURN_IF_ERROR(trainer::ValidateTrainConfig(run_config));
    BURNSCREEN_ASSIGN_OR_RETURN(
        corpus::SplitResult split,
        corpus::Split(data, config.split_ratio, run_config.rng_seed));
    BURNSCREEN_ASSIGN_OR_RETURN(trainer::BaseModel base,
                                trainer::LoadBaseModel(run_config));
    Rng rng(run_config.rng_seed);
    BURNSCREEN_ASSIGN_OR_RETURN(
        int added, trainer::ExtendVocabulary(base.tokenizer, base.model, terms, rng));
    *ctx.err << fmt::format("train {} seed {}: {} train / {} eval, {} tokens added\n",
                            dataset, run_config.rng_seed, split.train.samples.size(),
                            split.eval.samples.size(), added);
    std::ostream* err = ctx.err;
    BURNSCREEN_ASSIGN_OR_RETURN(
        trainer::TrainResult result,
        trainer::FineTune(std::move(base), split.train, split.eval, run_config,
                          [err](const trainer::TimelinePoint& point) {
                            *err << fmt::format(
                                "  step {} loss {:.4f} eval_loss {:.4f} f1 {:.4f}\n",
                                point.step, point.training_loss, point.eval_loss,
                                point.eval_f1);
                          }));
    result.artifact.dataset_name = dataset;
    const double f1 = result.artifact.final_metrics.f1;
    f1s.push_back(f1);
    runs.push_back({{"seed", run_config.rng_seed},
                    {"f1", f1},
                    {"accuracy", result.artifact.final_metrics.accuracy}});
    if (r == 0) {
      BURNSCREEN_RETURN_IF_ERROR(
          trainer::SaveArtifact(result.artifact, result.timeline, artifact_dir));
    }
    *ctx.out << fmt::format("{}\tseed {}\tf1 {:.4f}\taccuracy {:.4f}\n", dataset,
                            run_config.rng_seed, f1,
                            result.artifact.final_metrics.accuracy);
  }

  const trainer::RepeatSummary summary = trainer::SummarizeRepeats(f1s);
  const nlohmann::json repeats = {{"dataset", dataset},
                                  {"runs", runs},
                                  {"f1_mean", summary.mean},
                                  {"f1_stddev", summary.stddev},
                                  {"f1_min", summary.min},
                                  {"f1_max", summary.max}};
  BURNSCREEN_RETURN_IF_ERROR(
      io::WriteFileAtomic(artifact_dir / "repeats.json", repeats.dump(2) + "\n"));
  if (options.repeats > 1) {
    *ctx.out << fmt::format("{}\tf1 mean {:.4f} sd {:.4f} over {} runs\n", dataset,
                            summary.mean, summary.stddev, options.repeats);
  }

  nlohmann::json manifest = {{"command", "train"},
                             {"dataset", dataset},
                             {"seed", options.seed},
                             {"repeats", options.repeats},
                             {"config", trainer::TrainConfigToJson(train_config)}};
  BURNSCREEN_ASSIGN_OR_RETURN(manifest["inputs"],
                              FileEntries({DatasetPath(config, dataset), table_path,
                                           config.Input(config.base_vocab)}));
  std::vector<fs::path> outputs;
  for (const auto& entry : fs::directory_iterator(artifact_dir)) {
    if (entry.is_regular_file() && entry.path().filename() != "train.manifest.json") {
      outputs.push_back(entry.path());
    }
  }
  std::sort(outputs.begin(), outputs.end());
  BURNSCREEN_ASSIGN_OR_RETURN(manifest["outputs"], FileEntries(outputs));
  return WriteManifest(artifact_dir / "train.manifest.json", manifest);
}

absl::Status Evaluate(const CommandContext& ctx,
                      const std::vector<olbi::CutoffRule>& rules,
                      const std::optional<fs::path>& surveys) {
  const PipelineConfig& config = ctx.config;
  const fs::path survey_path = SurveyPath(config, surveys);
  BURNSCREEN_ASSIGN_OR_RETURN(evaluator::TestSet test_set,
                              LoadTestSet(config, rules, survey_path));
  const evaluator::ModelDirectory models =
      evaluator::LoadModelDirectory(config.model_dir);
  const evaluator::CrossEvalReport report =
      evaluator::CrossEvaluate(models.slots, test_set, rules);
  const auto table3 = evaluator::Table3(test_set, rules);

  const fs::path dir = config.ReportsDir();
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    return absl::InternalError(StrCat("cannot create ", dir.string(), ": ", ec.message()));
  }
  nlohmann::json table3_json = evaluator::Table3ToJson(table3);
  const std::vector<std::pair<fs::path, std::string>> files = {
      {dir / "table3.json", table3_json.dump(2) + "\n"},
      {dir / "table3.html", evaluator::RenderTable3Html(table3)},
      {dir / "table4.json", evaluator::CrossEvalReportToJson(report).dump(2) + "\n"},
      {dir / "table4.txt", evaluator::RenderTable4Text(report)},
      {dir / "table4.tsv", evaluator::Table4Tsv(report)},
      {dir / "table4.html", evaluator::RenderTable4Html(report)},
  };
  std::vector<fs::path> outputs;
  for (const auto& [path, contents] : files) {
    BURNSCREEN_RETURN_IF_ERROR(io::WriteFileAtomic(path, contents));
    outputs.push_back(path);
  }

  std::vector<fs::path> inputs = {survey_path};
  nlohmann::json model_entries = nlohmann::json::array();
  for (const auto& slot : models.slots) {
    nlohmann::json entry = {{"dataset", slot.dataset}, {"loaded", slot.classifier != nullptr}};
    const fs::path weights = config.model_dir / slot.dataset / "weights.bin";
    if (slot.classifier != nullptr && fs::exists(weights)) {
      BURNSCREEN_ASSIGN_OR_RETURN(nlohmann::json file, FileEntry(weights));
      entry["weights_sha256"] = file["sha256"];
    }
    model_entries.push_back(std::move(entry));
  }
  nlohmann::json rule_ids = nlohmann::json::array();
  for (const auto& rule : rules) rule_ids.push_back(std::string(olbi::CutoffId(rule.name)));
  nlohmann::json manifest = {{"command", "evaluate"},
                             {"rules", rule_ids},
                             {"models", model_entries},
                             {"texts", report.text_count},
                             {"respondents", report.respondent_count},
                             {"dropped_answers", test_set.dropped_answers},
                             {"complete", report.complete()}};
  BURNSCREEN_ASSIGN_OR_RETURN(manifest["inputs"], FileEntries(inputs));
  BURNSCREEN_ASSIGN_OR_RETURN(manifest["outputs"], FileEntries(outputs));
  BURNSCREEN_RETURN_IF_ERROR(WriteManifest(dir / "evaluate.manifest.json", manifest));

  *ctx.out << evaluator::RenderTable4Text(report);
  if (!report.complete()) {
    std::vector<std::string> missing;
    for (const auto& row : report.rows) {
      if (!row.error.empty()) missing.push_back(StrCat(row.dataset, " (", row.error, ")"));
    }
    return absl::FailedPreconditionError(
        StrCat("report is partial; missing models: ",
               fmt::format("{}", fmt::join(missing, ", "))));
  }
  return absl::OkStatus();
}

absl::Status Explain(const CommandContext& ctx,
                     const std::vector<olbi::CutoffRule>& rules,
                     const std::optional<fs::path>& surveys,
                     const ExplainOptions& options) {
  const PipelineConfig& config = ctx.config;
  const fs::path artifact_dir = config.model_dir / options.model;
  if (!fs::exists(artifact_dir / "config.json")) {
    return absl::FailedPreconditionError(
        StrCat("no trained model at ", artifact_dir.string(),
               "; run `burnscreen train ", options.model, " --seed N` first"));
  }
  BURNSCREEN_ASSIGN_OR_RETURN(trainer::ClassifierArtifact artifact,
                              trainer::LoadArtifact(artifact_dir));
  const fs::path survey_path = SurveyPath(config, surveys);
  BURNSCREEN_ASSIGN_OR_RETURN(evaluator::TestSet test_set,
                              LoadTestSet(config, rules, survey_path));

  std::vector<size_t> chosen(test_set.texts.size());
  std::iota(chosen.begin(), chosen.end(), size_t{0});
  if (options.sample) {
    if (*options.sample < 1) return absl::InvalidArgumentError("--sample must be positive");
    Rng rng(options.seed);
    rng.Shuffle(chosen);
    chosen.resize(std::min(chosen.size(), static_cast<size_t>(*options.sample)));
    std::sort(chosen.begin(), chosen.end());
  }

  explainer::AttributionOptions attribution_options;
  attribution_options.steps = options.steps;
  std::vector<explainer::AttributionPacket> packets;
  for (size_t index : chosen) {
    const evaluator::LabeledText& text = test_set.texts[index];
    BURNSCREEN_ASSIGN_OR_RETURN(
        explainer::Attribution attribution,
        explainer::Attribute(artifact, text.text, attribution_options));
    explainer::PacketSource source{text.text,
                                   text.respondent_id,
                                   text.question_id,
                                   text.labels,
                                   artifact.config.base_model_id,
                                   options.model};
    BURNSCREEN_ASSIGN_OR_RETURN(explainer::AttributionPacket packet,
                                explainer::BuildPacket(source, attribution));
    *ctx.err << fmt::format("{} {} {} steps residual {:.4f}\n", packet.id.substr(0, 12),
                            LabelDisplayName(packet.predicted), packet.steps, packet.residual);
    packets.push_back(std::move(packet));
  }

  const fs::path store = config.store_dir;
  const fs::path packets_path = store / "packets.jsonl";
  const fs::path views_dir = store / "packets";
  BURNSCREEN_RETURN_IF_ERROR(explainer::WritePackets(packets, packets_path));
  BURNSCREEN_RETURN_IF_ERROR(explainer::WritePacketViews(packets, views_dir));

  nlohmann::json ids = nlohmann::json::array();
  for (const auto& packet : packets) ids.push_back(packet.id);
  nlohmann::json manifest = {{"command", "explain"},
                             {"model", options.model},
                             {"steps", options.steps},
                             {"packet_ids", ids}};
  if (options.sample) {
    manifest["sample"] = *options.sample;
    manifest["seed"] = options.seed;
  }
  BURNSCREEN_ASSIGN_OR_RETURN(
      manifest["inputs"], FileEntries({survey_path, artifact_dir / "weights.bin"}));
  BURNSCREEN_ASSIGN_OR_RETURN(manifest["outputs"], FileEntries({packets_path}));
  BURNSCREEN_RETURN_IF_ERROR(WriteManifest(store / "explain.manifest.json", manifest));
  *ctx.out << fmt::format("{} packets written to {}\n", packets.size(),
                          packets_path.string());
  return absl::OkStatus();
}

absl::Status ScoreOlbi(const CommandContext& ctx,
                       const std::optional<fs::path>& surveys) {
  const PipelineConfig& config = ctx.config;
  BURNSCREEN_ASSIGN_OR_RETURN(auto records,
                              evaluator::LoadSurveyRecords(SurveyPath(config, surveys)));
  BURNSCREEN_ASSIGN_OR_RETURN(olbi::Inventory inventory, InventoryFor(config));
  std::vector<olbi::ScoredRespondent> rows;
  for (const auto& record : records) {
    BURNSCREEN_ASSIGN_OR_RETURN(olbi::OlbiScore score,
                                olbi::ScoreInventory(record.olbi, inventory));
    rows.push_back({record.respondent_id, score});
  }
  *ctx.out << olbi::ScoresTsv(rows);
  return absl::OkStatus();
}

namespace {

// Repeated --cutoff values list the reported rules in order. A lone Cut-Off 2
// spelling only picks the variant shown next to Cut-Off 1 and 3.
absl::StatusOr<std::vector<olbi::CutoffRule>> RulesFromFlags(
    const std::vector<std::string>& flags) {
  if (flags.empty()) return olbi::ReportingCutoffs();
  std::vector<olbi::CutoffName> names;
  for (const std::string& flag : flags) {
    auto name = olbi::ParseCutoffFlag(flag);
    if (!name) {
      return absl::InvalidArgumentError(
          StrCat("unknown cutoff '", flag, "' (expected 1, 2w, 2c or 3)"));
    }
    if (std::find(names.begin(), names.end(), *name) == names.end()) {
      names.push_back(*name);
    }
  }
  if (names.size() == 1 && names[0] == olbi::CutoffName::kCutoff2Clinical) {
    return olbi::ReportingCutoffs(olbi::Cutoff2Variant::kClinical);
  }
  if (names.size() == 1 && names[0] == olbi::CutoffName::kCutoff2Working) {
    return olbi::ReportingCutoffs(olbi::Cutoff2Variant::kWorking);
  }
  std::vector<olbi::CutoffRule> rules;
  for (olbi::CutoffName name : names) rules.push_back(olbi::CutoffRule::Get(name));
  return rules;
}

struct GlobalFlags {
  std::string config;
  std::string data_dir;
  std::string work_dir;
  std::string model_dir;
  std::string store_dir;
};

absl::StatusOr<PipelineConfig> ResolveConfig(const GlobalFlags& flags) {
  PipelineConfig config;
  bool data_dir_configured = false;
  if (!flags.config.empty()) {
    BURNSCREEN_ASSIGN_OR_RETURN(nlohmann::json json, io::ReadJson(flags.config));
    auto parsed = PipelineConfigFromJson(json);
    if (!parsed.ok()) {
      return absl::InvalidArgumentError(
          StrCat(flags.config, ": ", parsed.status().message()));
    }
    config = *std::move(parsed);
    data_dir_configured = json.contains("data_dir");
  }
  if (!flags.data_dir.empty()) {
    config.data_dir = flags.data_dir;
  } else if (!data_dir_configured) {
    if (auto env = service::ProcessEnvironment("BURNSCREEN_DATA_DIR")) {
      config.data_dir = *env;
    }
  }
  if (!flags.work_dir.empty()) config.work_dir = flags.work_dir;
  if (!flags.model_dir.empty()) config.model_dir = flags.model_dir;
  if (!flags.store_dir.empty()) config.store_dir = flags.store_dir;
  ResolveDefaultDirectories(config);
  return config;
}

absl::StatusOr<service::ServiceConfig> ResolveServiceConfig(
    const PipelineConfig& config, const GlobalFlags& flags,
    std::optional<int> port, const std::vector<std::string>& tokens,
    const std::vector<std::string>& cutoffs) {
  // Directory flags win over the environment, which wins over the config.
  auto lookup = [&](std::string_view name) -> std::optional<std::string> {
    if (name == service::kModelDirVariable) {
      if (!flags.model_dir.empty()) return flags.model_dir;
      if (auto env = service::ProcessEnvironment(name)) return env;
      return config.model_dir.string();
    }
    if (name == service::kStoreDirVariable) {
      if (!flags.store_dir.empty()) return flags.store_dir;
      if (auto env = service::ProcessEnvironment(name)) return env;
      return config.store_dir.string();
    }
    if (name == service::kInventoryVariable && config.inventory) {
      if (auto env = service::ProcessEnvironment(name)) return env;
      return config.Input(*config.inventory).string();
    }
    return service::ProcessEnvironment(name);
  };
  BURNSCREEN_ASSIGN_OR_RETURN(service::ServiceConfig service_config,
                              service::ServiceConfigFromEnvironment(lookup));
  if (port) service_config.port = *port;
  if (!tokens.empty()) service_config.reviewer_tokens = tokens;
  for (const std::string& flag : cutoffs) {
    auto name = olbi::ParseCutoffFlag(flag);
    if (name == olbi::CutoffName::kCutoff2Clinical) {
      service_config.cutoff2 = olbi::Cutoff2Variant::kClinical;
    } else if (name == olbi::CutoffName::kCutoff2Working) {
      service_config.cutoff2 = olbi::Cutoff2Variant::kWorking;
    } else {
      return absl::InvalidArgumentError(
          StrCat("serve only accepts --cutoff 2w or 2c, got '", flag, "'"));
    }
  }
  if (!fs::is_directory(service_config.model_dir)) {
    return absl::FailedPreconditionError(
        StrCat("model directory ", service_config.model_dir.string(),
               " does not exist; train models first or set --model-dir"));
  }
  return service_config;
}

absl::Status Serve(const service::ServiceConfig& config, std::ostream& out) {
  BURNSCREEN_ASSIGN_OR_RETURN(auto service, service::ReviewService::Create(config));
  BURNSCREEN_ASSIGN_OR_RETURN(int port, service->Start());
  out << fmt::format("serving {} packets and {} models on http://{}:{}\n",
                     service->packet_count(), service->loaded_model_count(),
                     config.host, port)
      << std::flush;
  return service->Run();
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Burnout screening pipeline: datasets, training, evaluation, "
               "attribution and the review service."};
  app.name("burnscreen");
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags flags;
  app.add_option("--config", flags.config, "Pipeline config (JSON)");
  app.add_option("--data-dir", flags.data_dir, "Bundled data directory");
  app.add_option("--work-dir", flags.work_dir, "Output root (default: work)");
  app.add_option("--model-dir", flags.model_dir, "Artifacts (default: <work>/models)");
  app.add_option("--store-dir", flags.store_dir, "Service store (default: <work>/store)");

  std::string dataset;
  bool mock_llm = false;
  std::string llm_name;
  uint64_t llm_seed = 0;
  auto* build = app.add_subcommand("build-dataset", "Build one training corpus");
  build->add_option("dataset", dataset, "online, v1, v2 or combined")->required();
  build->add_flag("--mock-llm", mock_llm, "Replay recorded completions (same as --llm recorded)");
  build->add_option("--llm", llm_name, "Completion source: http, recorded or synthetic")
      ->check(CLI::IsMember({"http", "recorded", "synthetic"}));
  build->add_option("--seed", llm_seed, "Seed of the synthetic completion source");

  std::string train_dataset;
  TrainOptions train_options;
  int epochs = 0;
  auto* train = app.add_subcommand("train", "Fine-tune a classifier on a built dataset");
  train->add_option("dataset", train_dataset, "online, v1, v2 or combined")->required();
  train->add_option("--seed", train_options.seed, "Split and initialization seed")
      ->required();
  auto* epochs_option = train->add_option("--epochs", epochs, "Override the epoch count")
                            ->check(CLI::PositiveNumber);
  train->add_option("--repeats", train_options.repeats,
                    "Runs with consecutive seeds; the first is saved");

  std::vector<std::string> cutoffs;
  std::string survey_flag;
  auto* evaluate = app.add_subcommand("evaluate", "Cross-evaluate all models on the surveys");
  evaluate->add_option("--cutoff", cutoffs, "Rule: 1, 2w, 2c or 3 (repeatable)");
  evaluate->add_option("--surveys", survey_flag, "Survey records (JSONL)");

  ExplainOptions explain_options;
  bool explain_all = false;
  int sample = 0;
  auto* explain = app.add_subcommand("explain", "Attribute predictions on survey answers");
  explain->add_option("--model", explain_options.model, "Model dataset (default v2)");
  auto* all_flag = explain->add_flag("--all", explain_all, "Every survey answer (default)");
  explain->add_option("--sample", sample, "Random subset size")->excludes(all_flag);
  explain->add_option("--seed", explain_options.seed, "Subset seed");
  explain->add_option("--steps", explain_options.steps, "Initial quadrature points");
  explain->add_option("--cutoff", cutoffs, "Rule: 1, 2w, 2c or 3 (repeatable)");
  explain->add_option("--surveys", survey_flag, "Survey records (JSONL)");

  std::optional<int> port;
  std::vector<std::string> tokens;
  auto* serve = app.add_subcommand("serve", "Run the survey and review service");
  serve->add_option("--port", port, "Listen port (0 picks a free one)");
  serve->add_option("--reviewer-token", tokens, "Accepted reviewer token (repeatable)");
  serve->add_option("--cutoff", cutoffs, "Cut-Off 2 variant: 2w or 2c");

  auto* score = app.add_subcommand("score-olbi", "Print questionnaire scores");
  score->add_option("--surveys", survey_flag, "Survey records (JSONL)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  auto status = [&]() -> absl::Status {
    BURNSCREEN_ASSIGN_OR_RETURN(PipelineConfig config, ResolveConfig(flags));
    CommandContext ctx{std::move(config), &out, &err};
    std::optional<fs::path> surveys;
    if (!survey_flag.empty()) surveys = survey_flag;
    if (*build) {
      LlmChoice llm = LlmChoice::kHttp;
      if (mock_llm && !llm_name.empty() && llm_name != "recorded") {
        return absl::InvalidArgumentError("--mock-llm conflicts with --llm " + llm_name);
      }
      if (mock_llm || llm_name == "recorded") llm = LlmChoice::kRecorded;
      if (llm_name == "synthetic") llm = LlmChoice::kSynthetic;
      return BuildDataset(ctx, dataset, llm, llm_seed);
    }
    if (*train) {
      if (*epochs_option) train_options.epochs = epochs;
      return Train(ctx, train_dataset, train_options);
    }
    if (*evaluate) {
      BURNSCREEN_ASSIGN_OR_RETURN(auto rules, RulesFromFlags(cutoffs));
      return Evaluate(ctx, rules, surveys);
    }
    if (*explain) {
      if (sample > 0 || explain->count("--sample") > 0) explain_options.sample = sample;
      BURNSCREEN_ASSIGN_OR_RETURN(auto rules, RulesFromFlags(cutoffs));
      return Explain(ctx, rules, surveys, explain_options);
    }
    if (*serve) {
      BURNSCREEN_ASSIGN_OR_RETURN(
          service::ServiceConfig service_config,
          ResolveServiceConfig(ctx.config, flags, port, tokens, cutoffs));
      return Serve(service_config, out);
    }
    if (*score) return ScoreOlbi(ctx, surveys);
    return absl::InvalidArgumentError("no command given");
  }();
  if (!status.ok()) {
    err << "error: " << status.message() << "\n";
    return status.code() == absl::StatusCode::kInvalidArgument ? 2 : 1;
  }
  return 0;
}

}  // namespace burnscreen::cli
