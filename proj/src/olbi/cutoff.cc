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

#include "olbi/cutoff.h"

#include <algorithm>

#include "common/io.h"
#include "common/strings.h"
#include "fmt/format.h"

namespace burnscreen::olbi {

CutoffRule CutoffRule::Get(CutoffName name) {
  switch (name) {
    case CutoffName::kCutoff1:
      return {name, 2.25, 2.1, std::nullopt};
    case CutoffName::kCutoff2Working:
      return {name, 2.85, 2.6, std::nullopt};
    case CutoffName::kCutoff2Clinical:
      return {name, 3.13, 2.72, std::nullopt};
    case CutoffName::kCutoff3Total:
      return {name, std::nullopt, std::nullopt, 35};
  }
  return {};
}

std::string_view CutoffId(CutoffName name) {
  switch (name) {
    case CutoffName::kCutoff1:
      return "cutoff1";
    case CutoffName::kCutoff2Working:
      return "cutoff2_working";
    case CutoffName::kCutoff2Clinical:
      return "cutoff2_clinical";
    case CutoffName::kCutoff3Total:
      return "cutoff3_total";
  }
  return "unknown";
}

std::optional<CutoffName> ParseCutoffId(std::string_view id) {
  for (CutoffName name : kAllCutoffs) {
    if (CutoffId(name) == id) return name;
  }
  return std::nullopt;
}

std::string CutoffDisplayName(CutoffName name) {
  switch (name) {
    case CutoffName::kCutoff1:
      return "Cut-Off Value 1";
    case CutoffName::kCutoff2Working:
      return "Cut-Off Value 2 (working sample)";
    case CutoffName::kCutoff2Clinical:
      return "Cut-Off Value 2 (clinical sample)";
    case CutoffName::kCutoff3Total:
      return "Cut-Off Value 3";
  }
  return "unknown";
}

std::optional<CutoffName> ParseCutoffFlag(std::string_view flag) {
  if (flag == "1") return CutoffName::kCutoff1;
  if (flag == "2w") return CutoffName::kCutoff2Working;
  if (flag == "2c") return CutoffName::kCutoff2Clinical;
  if (flag == "3") return CutoffName::kCutoff3Total;
  return ParseCutoffId(flag);
}

std::vector<CutoffRule> ReportingCutoffs(Cutoff2Variant variant) {
  return {CutoffRule::Get(CutoffName::kCutoff1),
          CutoffRule::Get(variant == Cutoff2Variant::kWorking
                              ? CutoffName::kCutoff2Working
                              : CutoffName::kCutoff2Clinical),
          CutoffRule::Get(CutoffName::kCutoff3Total)};
}

Label Classify(const OlbiScore& score, const CutoffRule& rule) {
  if (rule.total_threshold.has_value()) {
    return score.total >= *rule.total_threshold ? Label::kBurnout
                                                : Label::kNoBurnout;
  }
  const bool exhausted = score.exhaustion_mean >=
                         *rule.exhaustion_threshold - kThresholdTolerance;
  const bool disengaged = score.disengagement_mean >=
                          *rule.disengagement_threshold - kThresholdTolerance;
  return exhausted && disengaged ? Label::kBurnout : Label::kNoBurnout;
}

absl::StatusOr<std::vector<RuleLabelCount>> LabelDistribution(
    std::span<const OlbiScore> scores, std::span<const CutoffRule> rules) {
  if (scores.empty()) {
    return absl::InvalidArgumentError(
        "label distribution needs at least one score");
  }
  std::vector<RuleLabelCount> table;
  table.reserve(rules.size());
  for (const CutoffRule& rule : rules) {
    RuleLabelCount row{rule, {}};
    for (const OlbiScore& score : scores) row.counts.Add(Classify(score, rule));
    table.push_back(row);
  }
  return table;
}

std::string RenderDistributionTable(std::span<const RuleLabelCount> table) {
  constexpr std::string_view kHeaders[] = {
      "Cut-Off Value", "Nr. Burnout (Label 1)", "Nr. No Burnout (Label 0)"};
  size_t first_width = kHeaders[0].size();
  for (const RuleLabelCount& row : table) {
    first_width = std::max(first_width, CutoffDisplayName(row.rule.name).size());
  }
  std::string out = fmt::format("{:<{}} | {} | {}\n", kHeaders[0], first_width,
                                kHeaders[1], kHeaders[2]);
  out += fmt::format("{:-<{}}-+-{:-<{}}-+-{:-<{}}\n", "", first_width, "",
                     kHeaders[1].size(), "", kHeaders[2].size());
  for (const RuleLabelCount& row : table) {
    out += fmt::format("{:<{}} | {:>{}} | {:>{}}\n",
                       CutoffDisplayName(row.rule.name), first_width,
                       row.counts.burnout, kHeaders[1].size(),
                       row.counts.no_burnout, kHeaders[2].size());
  }
  return out;
}

std::string DistributionTableTsv(std::span<const RuleLabelCount> table) {
  std::string out = io::FormatTsvLine({"cutoff", "burnout", "no_burnout"});
  for (const RuleLabelCount& row : table) {
    out += io::FormatTsvLine({std::string(CutoffId(row.rule.name)),
                              StrCat(row.counts.burnout),
                              StrCat(row.counts.no_burnout)});
  }
  return out;
}

std::string ScoresTsv(std::span<const ScoredRespondent> rows) {
  std::vector<std::string> header = {"respondent_id", "exhaustion_mean",
                                     "disengagement_mean", "total"};
  for (CutoffName name : kAllCutoffs) {
    header.push_back(StrCat("label_", CutoffId(name)));
  }
  std::string out = io::FormatTsvLine(header);
  for (const ScoredRespondent& row : rows) {
    std::vector<std::string> fields = {
        row.respondent_id, fmt::format("{:.4f}", row.score.exhaustion_mean),
        fmt::format("{:.4f}", row.score.disengagement_mean),
        StrCat(row.score.total)};
    for (CutoffName name : kAllCutoffs) {
      fields.push_back(
          StrCat(LabelValue(Classify(row.score, CutoffRule::Get(name)))));
    }
    out += io::FormatTsvLine(fields);
  }
  return out;
}

}  // namespace burnscreen::olbi
