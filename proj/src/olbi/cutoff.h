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

#ifndef BURNSCREEN_OLBI_CUTOFF_H_
#define BURNSCREEN_OLBI_CUTOFF_H_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "common/label.h"
#include "olbi/inventory.h"

namespace burnscreen::olbi {

enum class CutoffName {
  kCutoff1,
  kCutoff2Working,
  kCutoff2Clinical,
  kCutoff3Total,
};

inline constexpr std::array<CutoffName, 4> kAllCutoffs = {
    CutoffName::kCutoff1, CutoffName::kCutoff2Working,
    CutoffName::kCutoff2Clinical, CutoffName::kCutoff3Total};

// Which variant stands in for the undifferentiated "Cut-Off 2" column.
enum class Cutoff2Variant { kWorking, kClinical };

// Dimension rules carry both mean thresholds; the total rule carries only the
// total threshold. All comparisons are inclusive.
struct CutoffRule {
  CutoffName name = CutoffName::kCutoff1;
  std::optional<double> exhaustion_threshold;
  std::optional<double> disengagement_threshold;
  std::optional<int> total_threshold;

  static CutoffRule Get(CutoffName name);
};

// Slack for ">=" on means that come out of floating-point division.
inline constexpr double kThresholdTolerance = 1e-9;

// Identifier used in files and JSON: cutoff1, cutoff2_working, ...
std::string_view CutoffId(CutoffName name);
std::optional<CutoffName> ParseCutoffId(std::string_view id);
// Human-readable row label, e.g. "Cut-Off Value 2 (working sample)".
std::string CutoffDisplayName(CutoffName name);
// CLI spelling: 1, 2w, 2c, 3.
std::optional<CutoffName> ParseCutoffFlag(std::string_view flag);

// The three rules reported side by side: cutoff1, the chosen cutoff2
// variant, cutoff3_total.
std::vector<CutoffRule> ReportingCutoffs(
    Cutoff2Variant variant = Cutoff2Variant::kWorking);

Label Classify(const OlbiScore& score, const CutoffRule& rule);

struct RuleLabelCount {
  CutoffRule rule;
  LabelCounts counts;
};

absl::StatusOr<std::vector<RuleLabelCount>> LabelDistribution(
    std::span<const OlbiScore> scores, std::span<const CutoffRule> rules);

// Plain-text table: cut-off value, burnout count, no-burnout count.
std::string RenderDistributionTable(std::span<const RuleLabelCount> table);
std::string DistributionTableTsv(std::span<const RuleLabelCount> table);

struct ScoredRespondent {
  std::string respondent_id;
  OlbiScore score;
};

// Columns: respondent_id, exhaustion_mean, disengagement_mean, total, then
// one label_<rule id> column per rule in kAllCutoffs.
std::string ScoresTsv(std::span<const ScoredRespondent> rows);

}  // namespace burnscreen::olbi

#endif  // BURNSCREEN_OLBI_CUTOFF_H_
