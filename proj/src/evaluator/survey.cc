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

#include "evaluator/survey.h"

#include "common/io.h"
#include "common/status_macros.h"
#include "common/strings.h"

namespace burnscreen::evaluator {

nlohmann::json SurveyRecordToJson(const SurveyRecord& record) {
  nlohmann::json answers = nlohmann::json::object();
  for (int q = 0; q < kNumQuestions; ++q) {
    answers[std::string(kQuestionIds[q])] = record.answers[q];
  }
  nlohmann::json olbi = nlohmann::json::object();
  for (const auto& [item, raw] : record.olbi.answers) {
    olbi[StrCat(item)] = raw;
  }
  nlohmann::json out = {{"respondent_id", record.respondent_id},
                        {"answers", answers},
                        {"olbi", olbi},
                        {"gender", olbi::GenderName(record.olbi.gender)}};
  if (record.olbi.age) out["age"] = *record.olbi.age;
  return out;
}

absl::StatusOr<SurveyRecord> SurveyRecordFromJson(const nlohmann::json& json) {
  if (!json.is_object()) {
    return absl::InvalidArgumentError("survey record must be an object");
  }
  SurveyRecord record;
  if (!json.contains("respondent_id") || !json["respondent_id"].is_string() ||
      json["respondent_id"].get<std::string>().empty()) {
    return absl::InvalidArgumentError("survey record needs a respondent_id");
  }
  record.respondent_id = json["respondent_id"].get<std::string>();
  record.olbi.respondent_id = record.respondent_id;
  if (json.contains("answers")) {
    const nlohmann::json& answers = json["answers"];
    if (!answers.is_object()) {
      return absl::InvalidArgumentError("'answers' must be an object");
    }
    for (const auto& [key, value] : answers.items()) {
      int index = -1;
      for (int q = 0; q < kNumQuestions; ++q) {
        if (key == kQuestionIds[q]) index = q;
      }
      if (index < 0) {
        return absl::InvalidArgumentError(
            StrCat("unknown question id '", key, "'"));
      }
      if (!value.is_string()) {
        return absl::InvalidArgumentError(
            StrCat("answer ", key, " must be a string"));
      }
      record.answers[index] = value.get<std::string>();
    }
  }
  if (!json.contains("olbi") || !json["olbi"].is_object()) {
    return absl::InvalidArgumentError("survey record needs an 'olbi' object");
  }
  for (const auto& [key, value] : json["olbi"].items()) {
    int item = 0;
    try {
      size_t used = 0;
      item = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      return absl::InvalidArgumentError(
          StrCat("inventory item key '", key, "' is not a number"));
    }
    if (!value.is_number_integer()) {
      return absl::InvalidArgumentError(
          StrCat("answer to item ", item, " must be an integer"));
    }
    record.olbi.answers[item] = value.get<int>();
  }
  if (json.contains("age") && !json["age"].is_null()) {
    if (!json["age"].is_number_integer()) {
      return absl::InvalidArgumentError("'age' must be an integer");
    }
    record.olbi.age = json["age"].get<int>();
  }
  if (json.contains("gender") && !json["gender"].is_null()) {
    auto gender = json["gender"].is_string()
                      ? olbi::ParseGender(json["gender"].get<std::string>())
                      : std::nullopt;
    if (!gender) return absl::InvalidArgumentError("unknown 'gender' value");
    record.olbi.gender = *gender;
  }
  BURNSCREEN_RETURN_IF_ERROR(olbi::ValidateResponse(record.olbi));
  return record;
}

absl::StatusOr<std::vector<SurveyRecord>> LoadSurveyRecords(
    const std::filesystem::path& path) {
  BURNSCREEN_ASSIGN_OR_RETURN(std::vector<nlohmann::json> rows,
                              io::ReadJsonLines(path));
  std::vector<SurveyRecord> records;
  for (size_t i = 0; i < rows.size(); ++i) {
    auto record = SurveyRecordFromJson(rows[i]);
    if (!record.ok()) {
      return absl::InvalidArgumentError(StrCat(
          path.string(), " record ", i + 1, ": ", record.status().message()));
    }
    records.push_back(*std::move(record));
  }
  return records;
}

}  // namespace burnscreen::evaluator
