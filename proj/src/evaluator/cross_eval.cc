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

#include "evaluator/cross_eval.h"

#include <algorithm>
#include <map>

#include "common/io.h"
#include "common/strings.h"
#include "common/text.h"
#include "fmt/format.h"

namespace burnscreen::evaluator {

namespace {

std::string FormatF1(const std::optional<Metrics>& metrics) {
  return metrics ? fmt::format("{:.3f}", metrics->f1) : "n/a";
}

// Majority vote per respondent in first-appearance order.
std::optional<Metrics> RespondentMetrics(const TestSet& test_set,
                                         std::span<const Label> predictions,
                                         olbi::CutoffName rule) {
  std::vector<std::string> order;
  std::map<std::string, std::pair<int, int>> votes;  // burnout, total
  std::map<std::string, Label> gold;
  for (size_t i = 0; i < test_set.texts.size(); ++i) {
    const LabeledText& t = test_set.texts[i];
    if (!votes.contains(t.respondent_id)) order.push_back(t.respondent_id);
    auto& [burnout, total] = votes[t.respondent_id];
    burnout += predictions[i] == Label::kBurnout ? 1 : 0;
    ++total;
    gold[t.respondent_id] = t.labels.at(rule);
  }
  std::vector<Label> predicted, labels;
  for (const std::string& id : order) {
    const auto [burnout, total] = votes[id];
    predicted.push_back(2 * burnout >= total ? Label::kBurnout
                                             : Label::kNoBurnout);
    labels.push_back(gold[id]);
  }
  auto metrics = ComputeMetrics(predicted, labels);
  if (!metrics.ok()) return std::nullopt;
  return *metrics;
}

}  // namespace

absl::StatusOr<std::vector<Label>> ArtifactClassifier::Classify(
    std::span<const std::string> texts) const {
  auto predictions = trainer::PredictBatch(artifact_, texts);
  if (!predictions.ok()) return predictions.status();
  std::vector<Label> labels;
  labels.reserve(predictions->size());
  for (const trainer::Prediction& p : *predictions) labels.push_back(p.label);
  return labels;
}

ModelDirectory LoadModelDirectory(const std::filesystem::path& dir) {
  ModelDirectory models;
  for (std::string_view dataset : kModelDatasets) {
    ModelSlot slot;
    slot.dataset = std::string(dataset);
    slot.model_name = std::string(trainer::kScratchModelId);
    const std::filesystem::path path = dir / dataset;
    std::error_code ec;
    if (!std::filesystem::exists(path / "config.json", ec)) {
      slot.load_error = StrCat("no artifact at ", path.string());
    } else if (auto artifact = trainer::LoadArtifact(path); !artifact.ok()) {
      slot.load_error = StrCat(path.string(), ": ", artifact.status().message());
    } else {
      slot.model_name = artifact->config.base_model_id;
      slot.epochs = artifact->config.epochs;
      models.classifiers.push_back(
          std::make_unique<ArtifactClassifier>(*std::move(artifact)));
      slot.classifier = models.classifiers.back().get();
    }
    models.slots.push_back(std::move(slot));
  }
  return models;
}

bool CrossEvalReport::complete() const {
  for (const ReportRow& row : rows) {
    for (const ReportCell& cell : row.cells) {
      if (!cell.metrics) return false;
    }
  }
  return true;
}

int CrossEvalReport::cell_count() const {
  int count = 0;
  for (const ReportRow& row : rows) count += static_cast<int>(row.cells.size());
  return count;
}

CrossEvalReport CrossEvaluate(std::span<const ModelSlot> models,
                              const TestSet& test_set,
                              std::span<const olbi::CutoffRule> rules) {
  CrossEvalReport report;
  for (const olbi::CutoffRule& rule : rules) report.rules.push_back(rule.name);
  report.text_count = static_cast<int>(test_set.texts.size());
  report.respondent_count =
      static_cast<int>(test_set.scores.size() -
                       test_set.excluded_respondents.size());
  const std::vector<std::string> texts = test_set.Texts();
  for (const ModelSlot& model : models) {
    ReportRow row{model.model_name, model.dataset, model.epochs,
                  model.load_error, {}};
    std::optional<std::vector<Label>> predictions;
    if (model.classifier == nullptr) {
      if (row.error.empty()) row.error = "model not available";
    } else if (texts.empty()) {
      row.error = "test set is empty";
    } else {
      auto classified = model.classifier->Classify(texts);
      if (classified.ok() && classified->size() == texts.size()) {
        predictions = *std::move(classified);
      } else {
        row.error = classified.ok() ? "classifier returned wrong count"
                                    : std::string(classified.status().message());
      }
    }
    for (const olbi::CutoffRule& rule : rules) {
      ReportCell cell;
      cell.rule = rule.name;
      if (predictions) {
        auto metrics = ComputeMetrics(*predictions, test_set.LabelsFor(rule.name));
        if (metrics.ok()) cell.metrics = *metrics;
        cell.respondent_metrics =
            RespondentMetrics(test_set, *predictions, rule.name);
      }
      row.cells.push_back(cell);
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string CutoffColumnName(olbi::CutoffName rule) {
  switch (rule) {
    case olbi::CutoffName::kCutoff1:
      return "Cut-Off 1";
    case olbi::CutoffName::kCutoff2Working:
      return "Cut-Off 2";
    case olbi::CutoffName::kCutoff2Clinical:
      return "Cut-Off 2 (clinical)";
    case olbi::CutoffName::kCutoff3Total:
      return "Cut-Off 3";
  }
  return "unknown";
}

nlohmann::json CrossEvalReportToJson(const CrossEvalReport& report) {
  nlohmann::json rules = nlohmann::json::array();
  for (olbi::CutoffName rule : report.rules) {
    rules.push_back({{"id", olbi::CutoffId(rule)},
                     {"column", CutoffColumnName(rule)}});
  }
  nlohmann::json rows = nlohmann::json::array();
  for (const ReportRow& row : report.rows) {
    nlohmann::json cells = nlohmann::json::array();
    for (const ReportCell& cell : row.cells) {
      cells.push_back(
          {{"rule", olbi::CutoffId(cell.rule)},
           {"f1", cell.metrics ? nlohmann::json(cell.metrics->f1) : nullptr},
           {"metrics", cell.metrics ? MetricsToJson(*cell.metrics) : nullptr},
           {"respondent_majority_vote",
            cell.respondent_metrics ? MetricsToJson(*cell.respondent_metrics)
                                    : nullptr}});
    }
    rows.push_back({{"model", row.model_name},
                    {"dataset", row.dataset},
                    {"epochs", row.epochs},
                    {"error", row.error.empty() ? nlohmann::json(nullptr)
                                                : nlohmann::json(row.error)},
                    {"cells", cells}});
  }
  return {{"rules", rules},
          {"rows", rows},
          {"text_count", report.text_count},
          {"respondent_count", report.respondent_count},
          {"complete", report.complete()}};
}

std::string RenderTable4Text(const CrossEvalReport& report) {
  std::vector<std::string> headers = {"Model", "Dataset", "Epochs"};
  for (olbi::CutoffName rule : report.rules) {
    headers.push_back("F1 " + CutoffColumnName(rule));
  }
  std::vector<std::vector<std::string>> rows;
  for (const ReportRow& row : report.rows) {
    std::vector<std::string> cells = {row.model_name, row.dataset,
                                      row.epochs > 0 ? StrCat(row.epochs) : "-"};
    for (const ReportCell& cell : row.cells) cells.push_back(FormatF1(cell.metrics));
    rows.push_back(std::move(cells));
  }
  std::vector<size_t> widths;
  for (const std::string& h : headers) widths.push_back(h.size());
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      widths[i] = std::max(widths[i], row[i].size());
    }
  }
  auto line = [&](const std::vector<std::string>& cells) {
    std::string out;
    for (size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out += " | ";
      out += fmt::format("{:<{}}", cells[i], widths[i]);
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out + "\n";
  };
  std::string out = line(headers);
  std::string rule;
  for (size_t i = 0; i < widths.size(); ++i) {
    if (i > 0) rule += "-+-";
    rule += std::string(widths[i], '-');
  }
  out += rule + "\n";
  for (const auto& row : rows) out += line(row);
  for (const ReportRow& row : report.rows) {
    if (!row.error.empty()) {
      out += fmt::format("n/a for {}: {}\n", row.dataset, row.error);
    }
  }
  return out;
}

std::string Table4Tsv(const CrossEvalReport& report) {
  std::string out = io::FormatTsvLine(
      {"model", "dataset", "epochs", "rule", "f1", "precision", "recall",
       "accuracy", "tp", "fp", "fn", "tn", "respondent_f1", "error"});
  for (const ReportRow& row : report.rows) {
    for (const ReportCell& cell : row.cells) {
      std::vector<std::string> fields = {row.model_name, row.dataset,
                                         StrCat(row.epochs),
                                         std::string(olbi::CutoffId(cell.rule))};
      if (cell.metrics) {
        const Metrics& m = *cell.metrics;
        for (double v : {m.f1, m.precision, m.recall, m.accuracy}) {
          fields.push_back(fmt::format("{:.6f}", v));
        }
        for (int v : {m.tp, m.fp, m.fn, m.tn}) fields.push_back(StrCat(v));
      } else {
        fields.insert(fields.end(), 8, "");
      }
      fields.push_back(cell.respondent_metrics
                           ? fmt::format("{:.6f}", cell.respondent_metrics->f1)
                           : "");
      fields.push_back(row.error);
      out += io::FormatTsvLine(fields);
    }
  }
  return out;
}

std::string RenderTable4Html(const CrossEvalReport& report) {
  std::string out =
      "<table class=\"f1-table\">\n<thead><tr><th>Model</th><th>Dataset</th>"
      "<th>Epochs</th>";
  for (olbi::CutoffName rule : report.rules) {
    out += "<th>F1 " + text::EscapeHtml(CutoffColumnName(rule)) + "</th>";
  }
  out += "</tr></thead>\n<tbody>\n";
  for (const ReportRow& row : report.rows) {
    out += "<tr><td>" + text::EscapeHtml(row.model_name) + "</td><td>" +
           text::EscapeHtml(row.dataset) + "</td><td>" +
           (row.epochs > 0 ? StrCat(row.epochs) : "-") + "</td>";
    for (const ReportCell& cell : row.cells) {
      if (cell.metrics) {
        const Metrics& m = *cell.metrics;
        out += fmt::format(
            "<td title=\"tp={} fp={} fn={} tn={}\">{:.3f}</td>", m.tp, m.fp,
            m.fn, m.tn, m.f1);
      } else {
        out += "<td class=\"missing\" title=\"" +
               text::EscapeHtml(row.error) + "\">n/a</td>";
      }
    }
    out += "</tr>\n";
  }
  out += "</tbody>\n</table>\n";
  return out;
}

std::vector<olbi::RuleLabelCount> Table3(
    const TestSet& test_set, std::span<const olbi::CutoffRule> rules) {
  std::vector<olbi::OlbiScore> scores;
  for (const ScoredRecord& s : test_set.scores) scores.push_back(s.score);
  auto table = olbi::LabelDistribution(scores, rules);
  if (!table.ok()) {
    std::vector<olbi::RuleLabelCount> empty;
    for (const olbi::CutoffRule& rule : rules) empty.push_back({rule, {}});
    return empty;
  }
  return *table;
}

nlohmann::json Table3ToJson(std::span<const olbi::RuleLabelCount> table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const olbi::RuleLabelCount& row : table) {
    rows.push_back({{"rule", olbi::CutoffId(row.rule.name)},
                    {"cutoff", olbi::CutoffDisplayName(row.rule.name)},
                    {"burnout", row.counts.burnout},
                    {"no_burnout", row.counts.no_burnout}});
  }
  return {{"rows", rows}};
}

std::string RenderTable3Html(std::span<const olbi::RuleLabelCount> table) {
  std::string out =
      "<table class=\"distribution-table\">\n<thead><tr><th>Cut-Off Value</th>"
      "<th>Nr. Burnout (Label 1)</th><th>Nr. No Burnout (Label 0)</th></tr>"
      "</thead>\n<tbody>\n";
  for (const olbi::RuleLabelCount& row : table) {
    out += fmt::format("<tr><td>{}</td><td>{}</td><td>{}</td></tr>\n",
                       text::EscapeHtml(olbi::CutoffDisplayName(row.rule.name)),
                       row.counts.burnout, row.counts.no_burnout);
  }
  out += "</tbody>\n</table>\n";
  return out;
}

}  // namespace burnscreen::evaluator
