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

#ifndef BURNSCREEN_EVALUATOR_SURVEY_H_
#define BURNSCREEN_EVALUATOR_SURVEY_H_

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "json.hpp"
#include "olbi/inventory.h"

namespace burnscreen::evaluator {

inline constexpr int kNumQuestions = 4;
inline constexpr std::array<std::string_view, kNumQuestions> kQuestionIds = {
    "Q1", "Q2", "Q3", "Q4"};

// One anonymous survey submission: four free-text answers plus the
// inventory. `olbi.respondent_id` mirrors `respondent_id`.
struct SurveyRecord {
  std::string respondent_id;
  std::array<std::string, kNumQuestions> answers;
  olbi::OlbiResponse olbi;
};

// {"respondent_id", "answers": {"Q1".."Q4"}, "olbi": {"1".."16": raw},
//  "age"?, "gender"?}
nlohmann::json SurveyRecordToJson(const SurveyRecord& record);
// Answers may be missing (treated as empty); the inventory is validated.
absl::StatusOr<SurveyRecord> SurveyRecordFromJson(const nlohmann::json& json);
absl::StatusOr<std::vector<SurveyRecord>> LoadSurveyRecords(
    const std::filesystem::path& path);

}  // namespace burnscreen::evaluator

#endif  // BURNSCREEN_EVALUATOR_SURVEY_H_
