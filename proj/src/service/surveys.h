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

#ifndef BURNSCREEN_SERVICE_SURVEYS_H_
#define BURNSCREEN_SERVICE_SURVEYS_H_

#include <map>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "common/label.h"
#include "evaluator/survey.h"
#include "json.hpp"
#include "olbi/cutoff.h"
#include "olbi/inventory.h"

namespace burnscreen::service {

// What the intake stores per respondent. Only the questionnaire content is
// kept; nothing about the connection it arrived on.
struct StoredSurvey {
  evaluator::SurveyRecord record;
  olbi::OlbiScore score;
  std::map<olbi::CutoffName, Label> labels;
  // No answer survives cleaning, so the respondent adds no test texts.
  bool excluded_from_test_set = false;
};

// Top-level keys a stored line may hold.
inline constexpr std::array<std::string_view, 8> kStoredSurveyKeys = {
    "respondent_id", "answers", "olbi", "age", "gender",
    "score", "labels", "excluded_from_test_set"};

nlohmann::json StoredSurveyToJson(const StoredSurvey& survey);
absl::StatusOr<StoredSurvey> StoredSurveyFromJson(const nlohmann::json& json);

// Score and labels without the free texts.
nlohmann::json SurveySummaryJson(const StoredSurvey& survey);

// Validates a submission {"consent": true, "answers": {"Q1".."Q4"},
// "olbi": {"1".."16"}, "age", "gender"?} and scores it. Missing consent is
// PermissionDenied; any other problem is InvalidArgument, and for an
// incomplete inventory `missing_items` lists the absent item ids.
absl::StatusOr<StoredSurvey> AcceptSubmission(const nlohmann::json& payload,
                                              const std::string& respondent_id,
                                              const olbi::Inventory& inventory,
                                              std::vector<int>* missing_items);

}  // namespace burnscreen::service

#endif  // BURNSCREEN_SERVICE_SURVEYS_H_
