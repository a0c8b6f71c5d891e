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

#include "service/server.h"

#include <chrono>
#include <ctime>

#include "common/hash.h"
#include "common/status_macros.h"
#include "common/strings.h"
#include "corpus/dataset.h"
#include "evaluator/test_set.h"
#include "fmt/chrono.h"
#include "httplib.h"
#include "trainer/train.h"

namespace burnscreen::service {

namespace fs = std::filesystem;

namespace {

constexpr char kJsonType[] = "application/json";
constexpr char kHtmlType[] = "text/html; charset=utf-8";
constexpr char kTextType[] = "text/plain; charset=utf-8";
constexpr int kRespondentIdBytes = 12;

void SendJson(httplib::Response& res, int status, const nlohmann::json& body) {
  res.status = status;
  res.set_content(body.dump(2) + "\n", kJsonType);
}

void SendError(httplib::Response& res, int status, std::string_view message) {
  SendJson(res, status, {{"error", message}});
}

int HttpStatusFor(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kInvalidArgument:
      return 422;
    case absl::StatusCode::kNotFound:
      return 404;
    case absl::StatusCode::kPermissionDenied:
      return 403;
    case absl::StatusCode::kUnauthenticated:
      return 401;
    case absl::StatusCode::kAborted:
      return 409;
    default:
      return 500;
  }
}

std::optional<nlohmann::json> ParseBody(const httplib::Request& req,
                                        httplib::Response& res) {
  nlohmann::json body = nlohmann::json::parse(req.body, nullptr, false);
  if (body.is_discarded()) {
    SendError(res, 400, "request body is not valid JSON");
    return std::nullopt;
  }
  return body;
}

}  // namespace

std::string UtcTimestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(now));
}

std::string ReviewerIdForToken(std::string_view token) {
  return Sha256Hex(StrCat("reviewer:", token)).substr(0, 16);
}

ReviewService::ReviewService(ServiceConfig config, Clock clock)
    : config_(std::move(config)), clock_(std::move(clock)) {}

ReviewService::~ReviewService() { Stop(); }

absl::StatusOr<std::unique_ptr<ReviewService>> ReviewService::Create(
    ServiceConfig config, Clock clock) {
  std::unique_ptr<ReviewService> service(
      new ReviewService(std::move(config), std::move(clock)));
  BURNSCREEN_RETURN_IF_ERROR(service->Initialize());
  return service;
}

absl::Status ReviewService::Initialize() {
  std::error_code ec;
  if (!fs::is_directory(config_.model_dir, ec)) {
    return absl::NotFoundError(StrCat("model directory ", config_.model_dir.string(),
                                      " does not exist"));
  }
  fs::create_directories(config_.store_dir, ec);
  if (ec) {
    return absl::InternalError(StrCat("cannot create store directory ",
                                      config_.store_dir.string(), ": ",
                                      ec.message()));
  }
  if (config_.inventory_path) {
    BURNSCREEN_ASSIGN_OR_RETURN(inventory_, olbi::LoadInventory(*config_.inventory_path));
  } else {
    inventory_ = olbi::DefaultInventory();
  }
  rules_ = olbi::ReportingCutoffs(config_.cutoff2);
  for (const std::string& token : config_.reviewer_tokens) {
    reviewer_ids_by_token_hash_[Sha256Hex(token)] = ReviewerIdForToken(token);
  }

  const fs::path packets_path = config_.store_dir / "packets.jsonl";
  if (fs::exists(packets_path, ec)) {
    BURNSCREEN_ASSIGN_OR_RETURN(packets_, explainer::LoadPackets(packets_path));
  }
  for (size_t i = 0; i < packets_.size(); ++i) packet_index_[packets_[i].id] = i;

  BURNSCREEN_ASSIGN_OR_RETURN(JsonlLog::Opened surveys,
                              JsonlLog::Open(config_.store_dir / "surveys.jsonl"));
  for (const nlohmann::json& record : surveys.records) {
    BURNSCREEN_ASSIGN_OR_RETURN(StoredSurvey survey, StoredSurveyFromJson(record));
    survey_index_[survey.record.respondent_id] = surveys_.size();
    surveys_.push_back(std::move(survey));
  }
  survey_log_.emplace(std::move(surveys.log));

  BURNSCREEN_ASSIGN_OR_RETURN(JsonlLog::Opened verdicts,
                              JsonlLog::Open(config_.store_dir / "verdicts.jsonl"));
  std::vector<ReviewVerdict> log;
  for (const nlohmann::json& record : verdicts.records) {
    BURNSCREEN_ASSIGN_OR_RETURN(ReviewVerdict verdict, VerdictFromJson(record));
    log.push_back(std::move(verdict));
  }
  BURNSCREEN_ASSIGN_OR_RETURN(verdicts_, VerdictBook::FromLog(log));
  verdict_log_.emplace(std::move(verdicts.log));

  models_ = evaluator::LoadModelDirectory(config_.model_dir);
  server_ = std::make_unique<httplib::Server>();
  RegisterRoutes();
  return absl::OkStatus();
}

void ReviewService::RegisterRoutes() {
  using httplib::Request;
  using httplib::Response;
  auto bind = [this](void (ReviewService::*handler)(const Request&, Response&)) {
    return [this, handler](const Request& req, Response& res) {
      (this->*handler)(req, res);
    };
  };
  server_->Post("/surveys", bind(&ReviewService::SubmitSurvey));
  server_->Get(R"(/surveys/([^/]+))", bind(&ReviewService::GetSurvey));
  server_->Get("/packets", bind(&ReviewService::ListPackets));
  server_->Get(R"(/packets/([^/]+))", bind(&ReviewService::GetPacket));
  server_->Get(R"(/packets/([^/]+)/verdicts)", bind(&ReviewService::GetVerdicts));
  server_->Post(R"(/packets/([^/]+)/verdicts)", bind(&ReviewService::PostVerdict));
  server_->Get("/reports/agreement", bind(&ReviewService::AgreementReportHandler));
  server_->Get("/reports/table3", bind(&ReviewService::Table3Handler));
  server_->Get("/reports/table4", bind(&ReviewService::Table4Handler));
  server_->set_exception_handler(
      [](const Request&, Response& res, std::exception_ptr) {
        SendError(res, 500, "internal error");
      });
}

absl::StatusOr<int> ReviewService::Start() {
  int port = config_.port;
  if (port == 0) {
    port = server_->bind_to_any_port(config_.host);
  } else if (!server_->bind_to_port(config_.host, port)) {
    port = -1;
  }
  if (port < 0) {
    return absl::UnavailableError(
        StrCat("cannot bind ", config_.host, ":", config_.port));
  }
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return port;
}

absl::Status ReviewService::Run() {
  if (!server_->listen(config_.host, config_.port)) {
    return absl::UnavailableError(
        StrCat("cannot serve on ", config_.host, ":", config_.port));
  }
  return absl::OkStatus();
}

void ReviewService::Stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

void ReviewService::SubmitSurvey(const httplib::Request& req,
                                 httplib::Response& res) {
  const auto body = ParseBody(req, res);
  if (!body) return;
  std::vector<int> missing;
  auto survey = AcceptSubmission(*body, RandomToken(kRespondentIdBytes),
                                 inventory_, &missing);
  if (!survey.ok()) {
    nlohmann::json error = {{"error", std::string(survey.status().message())}};
    if (!missing.empty()) error["missing_items"] = missing;
    SendJson(res, survey.status().code() == absl::StatusCode::kPermissionDenied
                      ? 400
                      : 422,
             error);
    return;
  }
  std::unique_lock lock(state_mutex_);
  if (absl::Status status = survey_log_->Append(StoredSurveyToJson(*survey));
      !status.ok()) {
    SendError(res, 500, std::string(status.message()));
    return;
  }
  survey_index_[survey->record.respondent_id] = surveys_.size();
  surveys_.push_back(*survey);
  SendJson(res, 201, SurveySummaryJson(*survey));
}

void ReviewService::GetSurvey(const httplib::Request& req, httplib::Response& res) {
  std::shared_lock lock(state_mutex_);
  auto it = survey_index_.find(req.matches[1].str());
  if (it == survey_index_.end()) {
    SendError(res, 404, "unknown respondent id");
    return;
  }
  SendJson(res, 200, SurveySummaryJson(surveys_[it->second]));
}

const explainer::AttributionPacket* ReviewService::FindPacket(
    const std::string& id) const {
  auto it = packet_index_.find(id);
  return it == packet_index_.end() ? nullptr : &packets_[it->second];
}

void ReviewService::ListPackets(const httplib::Request&, httplib::Response& res) {
  std::shared_lock lock(state_mutex_);
  nlohmann::json list = nlohmann::json::array();
  for (const explainer::AttributionPacket& packet : packets_) {
    list.push_back({{"id", packet.id},
                    {"text", packet.source.text},
                    {"ai_label", std::string(LabelDisplayName(packet.predicted))},
                    {"score", packet.positive_score},
                    {"verdict_count", verdicts_.CurrentFor(packet.id).size()}});
  }
  SendJson(res, 200, {{"packets", list}});
}

void ReviewService::GetPacket(const httplib::Request& req, httplib::Response& res) {
  const explainer::AttributionPacket* packet = FindPacket(req.matches[1].str());
  if (packet == nullptr) {
    SendError(res, 404, "unknown packet");
    return;
  }
  if (req.get_param_value("format") == "html") {
    res.set_content(explainer::RenderPacketHtml(*packet), kHtmlType);
    return;
  }
  SendJson(res, 200, explainer::PacketToJson(*packet));
}

void ReviewService::GetVerdicts(const httplib::Request& req,
                                httplib::Response& res) {
  const std::string id = req.matches[1].str();
  if (FindPacket(id) == nullptr) {
    SendError(res, 404, "unknown packet");
    return;
  }
  std::shared_lock lock(state_mutex_);
  nlohmann::json list = nlohmann::json::array();
  for (const ReviewVerdict& verdict : verdicts_.CurrentFor(id)) {
    list.push_back(VerdictToJson(verdict));
  }
  SendJson(res, 200, {{"packet_id", id}, {"verdicts", list}});
}

void ReviewService::PostVerdict(const httplib::Request& req,
                                httplib::Response& res) {
  const std::string token = req.get_header_value(std::string(kReviewerTokenHeader));
  auto reviewer = reviewer_ids_by_token_hash_.find(Sha256Hex(token));
  if (token.empty() || reviewer == reviewer_ids_by_token_hash_.end()) {
    SendError(res, 401, "a valid reviewer token is required");
    return;
  }
  const std::string id = req.matches[1].str();
  if (FindPacket(id) == nullptr) {
    SendError(res, 404, "unknown packet");
    return;
  }
  const auto body = ParseBody(req, res);
  if (!body) return;
  if (!body->is_object() || !body->contains("agree") || !(*body)["agree"].is_boolean()) {
    SendError(res, 422, "'agree' must be true or false");
    return;
  }
  std::optional<std::string> reason;
  if (body->contains("reason") && !(*body)["reason"].is_null()) {
    if (!(*body)["reason"].is_string()) {
      SendError(res, 422, "'reason' must be a string");
      return;
    }
    reason = (*body)["reason"].get<std::string>();
  }
  std::optional<int64_t> expected;
  if (body->contains("expected_sequence") && !(*body)["expected_sequence"].is_null()) {
    if (!(*body)["expected_sequence"].is_number_integer()) {
      SendError(res, 422, "'expected_sequence' must be an integer");
      return;
    }
    expected = (*body)["expected_sequence"].get<int64_t>();
  }
  std::unique_lock lock(state_mutex_);
  auto verdict = verdicts_.Prepare(id, reviewer->second, (*body)["agree"].get<bool>(),
                                   std::move(reason), clock_(), expected);
  if (!verdict.ok()) {
    SendError(res, HttpStatusFor(verdict.status()), std::string(verdict.status().message()));
    return;
  }
  if (absl::Status status = verdict_log_->Append(VerdictToJson(*verdict));
      !status.ok()) {
    SendError(res, 500, std::string(status.message()));
    return;
  }
  verdicts_.Commit(*verdict);
  SendJson(res, verdict->supersedes ? 200 : 201, VerdictToJson(*verdict));
}

void ReviewService::AgreementReportHandler(const httplib::Request&,
                                           httplib::Response& res) {
  std::shared_lock lock(state_mutex_);
  const std::vector<ReviewVerdict> current = verdicts_.Current();
  SendJson(res, 200, AgreementReportToJson(ComputeAgreement(packets_, current)));
}

absl::StatusOr<evaluator::TestSet> ReviewService::CurrentTestSet() const {
  std::vector<evaluator::SurveyRecord> records;
  {
    std::shared_lock lock(state_mutex_);
    for (const StoredSurvey& survey : surveys_) records.push_back(survey.record);
  }
  return evaluator::AssembleTestSet(records, inventory_, rules_);
}

void ReviewService::Table3Handler(const httplib::Request& req,
                                  httplib::Response& res) {
  auto test_set = CurrentTestSet();
  if (!test_set.ok()) {
    SendError(res, 500, std::string(test_set.status().message()));
    return;
  }
  const auto table = evaluator::Table3(*test_set, rules_);
  if (req.get_param_value("format") == "html") {
    res.set_content(evaluator::RenderTable3Html(table), kHtmlType);
    return;
  }
  nlohmann::json json = evaluator::Table3ToJson(table);
  json["respondent_count"] = test_set->scores.size();
  SendJson(res, 200, json);
}

void ReviewService::Table4Handler(const httplib::Request& req,
                                  httplib::Response& res) {
  std::lock_guard cache_lock(table4_mutex_);
  size_t survey_count;
  {
    std::shared_lock lock(state_mutex_);
    survey_count = surveys_.size();
  }
  if (!table4_cache_ || table4_cache_->first != survey_count) {
    auto test_set = CurrentTestSet();
    if (!test_set.ok()) {
      SendError(res, 500, std::string(test_set.status().message()));
      return;
    }
    table4_cache_.emplace(survey_count,
                          evaluator::CrossEvaluate(models_.slots, *test_set, rules_));
  }
  const evaluator::CrossEvalReport& report = table4_cache_->second;
  const std::string format = req.get_param_value("format");
  if (format == "html") {
    res.set_content(evaluator::RenderTable4Html(report), kHtmlType);
  } else if (format == "text") {
    res.set_content(evaluator::RenderTable4Text(report), kTextType);
  } else if (format == "tsv") {
    res.set_content(evaluator::Table4Tsv(report), "text/tab-separated-values");
  } else {
    SendJson(res, 200, evaluator::CrossEvalReportToJson(report));
  }
}

}  // namespace burnscreen::service
