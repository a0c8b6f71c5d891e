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

#include "service/surveys.h"

#include <algorithm>
#include <set>

#include "common/status_macros.h"
#include "common/strings.h"
#include "evaluator/test_set.h"

namespace burnscreen::service {

namespace {

constexpr int kMinAge = 14;
constexpr int kMaxAge = 120;

constexpr std::array<std::string_view, 5> kSubmissionKeys = {
    "consent", "answers", "olbi", "age", "gender"};

bool IsOneOf(std::string_view key, std::span<const std::string_view> allowed) {
  return std::find(allowed.begin(), allowed.end(), key) != allowed.end();
}

absl::StatusOr<StoredSurvey> Score(evaluator::SurveyRecord record,
                                   const olbi::Inventory& inventory) {
  StoredSurvey survey;
  BURNSCREEN_ASSIGN_OR_RETURN(survey.score,
                              olbi::ScoreInventory(record.olbi, inventory));
  for (olbi::CutoffName name : olbi::kAllCutoffs) {
    survey.labels[name] = olbi::Classify(survey.score, olbi::CutoffRule::Get(name));
  }
  const olbi::CutoffRule rule = olbi::CutoffRule::Get(olbi::CutoffName::kCutoff1);
  const std::vector<evaluator::SurveyRecord> single = {record};
  BURNSCREEN_ASSIGN_OR_RETURN(
      evaluator::TestSet test_set,
      evaluator::AssembleTestSet(single, inventory, std::span(&rule, 1)));
  survey.excluded_from_test_set = !test_set.excluded_respondents.empty();
  survey.record = std::move(record);
  return survey;
}

}  // namespace

nlohmann::json StoredSurveyToJson(const StoredSurvey& survey) {
  nlohmann::json json = evaluator::SurveyRecordToJson(survey.record);
  json["score"] = {{"exhaustion_mean", survey.score.exhaustion_mean},
                   {"disengagement_mean", survey.score.disengagement_mean},
                   {"total", survey.score.total}};
  nlohmann::json labels = nlohmann::json::object();
  for (const auto& [name, label] : survey.labels) {
    labels[std::string(olbi::CutoffId(name))] = LabelValue(label);
  }
  json["labels"] = labels;
  json["excluded_from_test_set"] = survey.excluded_from_test_set;
  return json;
}

absl::StatusOr<StoredSurvey> StoredSurveyFromJson(const nlohmann::json& json) {
  BURNSCREEN_ASSIGN_OR_RETURN(evaluator::SurveyRecord record,
                              evaluator::SurveyRecordFromJson(json));
  StoredSurvey survey;
  try {
    const nlohmann::json& score = json.at("score");
    survey.score.exhaustion_mean = score.at("exhaustion_mean").get<double>();
    survey.score.disengagement_mean = score.at("disengagement_mean").get<double>();
    survey.score.total = score.at("total").get<int>();
    for (const auto& [key, value] : json.at("labels").items()) {
      const auto name = olbi::ParseCutoffId(key);
      const auto label = LabelFromInt(value.get<long long>());
      if (!name || !label) {
        return absl::InvalidArgumentError(StrCat("bad stored label '", key, "'"));
      }
      survey.labels[*name] = *label;
    }
    survey.excluded_from_test_set = json.at("excluded_from_test_set").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(StrCat("malformed stored survey: ", e.what()));
  }
  survey.record = std::move(record);
  return survey;
}

nlohmann::json SurveySummaryJson(const StoredSurvey& survey) {
  nlohmann::json json = StoredSurveyToJson(survey);
  return {{"respondent_id", survey.record.respondent_id},
          {"score", json["score"]},
          {"labels", json["labels"]},
          {"excluded_from_test_set", survey.excluded_from_test_set}};
}

absl::StatusOr<StoredSurvey> AcceptSubmission(const nlohmann::json& payload,
                                              const std::string& respondent_id,
                                              const olbi::Inventory& inventory,
                                              std::vector<int>* missing_items) {
  if (!payload.is_object()) {
    return absl::InvalidArgumentError("submission must be a JSON object");
  }
  if (!payload.contains("consent") || payload["consent"] != true) {
    return absl::PermissionDeniedError("consent is required");
  }
  for (const auto& [key, value] : payload.items()) {
    if (!IsOneOf(key, kSubmissionKeys)) {
      return absl::InvalidArgumentError(StrCat("unexpected field '", key, "'"));
    }
  }
  if (!payload.contains("olbi") || !payload["olbi"].is_object()) {
    return absl::InvalidArgumentError("submission needs an 'olbi' object");
  }
  std::vector<int> missing;
  for (int item = 1; item <= olbi::kNumItems; ++item) {
    const nlohmann::json& olbi = payload["olbi"];
    const std::string key = std::to_string(item);
    if (!olbi.contains(key) || olbi[key].is_null()) missing.push_back(item);
  }
  if (!missing.empty()) {
    if (missing_items != nullptr) *missing_items = missing;
    return absl::InvalidArgumentError(
        fmt::format("incomplete inventory: missing items {}", fmt::join(missing, ", ")));
  }
  if (!payload.contains("age") || !payload["age"].is_number_integer()) {
    return absl::InvalidArgumentError("'age' must be an integer");
  }
  const int age = payload["age"].get<int>();
  if (age < kMinAge || age > kMaxAge) {
    return absl::InvalidArgumentError(
        StrCat("'age' must lie in ", kMinAge, "..", kMaxAge));
  }
  nlohmann::json record_json = payload;
  record_json.erase("consent");
  record_json["respondent_id"] = respondent_id;
  BURNSCREEN_ASSIGN_OR_RETURN(evaluator::SurveyRecord record,
                              evaluator::SurveyRecordFromJson(record_json));
  return Score(std::move(record), inventory);
}

}  // namespace burnscreen::service
