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

#ifndef BURNSCREEN_SERVICE_SERVER_H_
#define BURNSCREEN_SERVICE_SERVER_H_

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <thread>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "evaluator/cross_eval.h"
#include "explainer/packet.h"
#include "olbi/inventory.h"
#include "service/config.h"
#include "service/jsonl_log.h"
#include "service/surveys.h"
#include "service/verdicts.h"

namespace httplib {
class Server;
struct Request;
struct Response;
}  // namespace httplib

namespace burnscreen::service {

// Second-resolution UTC time, e.g. 2026-01-31T08:15:00Z.
std::string UtcTimestamp();

inline constexpr std::string_view kReviewerTokenHeader = "X-Reviewer-Token";

// Opaque reviewer id derived from an invite token; the token itself is
// never stored.
std::string ReviewerIdForToken(std::string_view token);

// HTTP front end over the survey store, the packet set and the verdict log.
//
//   POST /surveys                  submit an anonymous survey
//   GET  /surveys/{id}             score and labels of a submission
//   GET  /packets                  packet summaries
//   GET  /packets/{id}             one packet (?format=html for the view)
//   GET  /packets/{id}/verdicts    current verdicts on a packet
//   POST /packets/{id}/verdicts    record a verdict (X-Reviewer-Token)
//   GET  /reports/agreement        agreement per packet
//   GET  /reports/table3           label distribution of the stored surveys
//   GET  /reports/table4           F1 of every model against each cut-off
//
// Reads run concurrently; every write is serialized and appended to its log
// before it becomes visible.
class ReviewService {
 public:
  using Clock = std::function<std::string()>;

  // Opens the logs in `config.store_dir` and loads whatever artifacts exist
  // under `config.model_dir`, which must be an existing directory.
  static absl::StatusOr<std::unique_ptr<ReviewService>> Create(
      ServiceConfig config, Clock clock = UtcTimestamp);
  ~ReviewService();

  ReviewService(const ReviewService&) = delete;
  ReviewService& operator=(const ReviewService&) = delete;

  // Binds and serves on a background thread; returns the bound port.
  absl::StatusOr<int> Start();
  // Binds and serves on the calling thread until Stop().
  absl::Status Run();
  void Stop();

  size_t packet_count() const { return packets_.size(); }
  int loaded_model_count() const { return models_.loaded(); }

 private:
  explicit ReviewService(ServiceConfig config, Clock clock);
  absl::Status Initialize();
  void RegisterRoutes();

  void SubmitSurvey(const httplib::Request& req, httplib::Response& res);
  void GetSurvey(const httplib::Request& req, httplib::Response& res);
  void ListPackets(const httplib::Request& req, httplib::Response& res);
  void GetPacket(const httplib::Request& req, httplib::Response& res);
  void GetVerdicts(const httplib::Request& req, httplib::Response& res);
  void PostVerdict(const httplib::Request& req, httplib::Response& res);
  void AgreementReportHandler(const httplib::Request& req, httplib::Response& res);
  void Table3Handler(const httplib::Request& req, httplib::Response& res);
  void Table4Handler(const httplib::Request& req, httplib::Response& res);

  absl::StatusOr<evaluator::TestSet> CurrentTestSet() const;
  const explainer::AttributionPacket* FindPacket(const std::string& id) const;

  ServiceConfig config_;
  Clock clock_;
  olbi::Inventory inventory_;
  std::vector<olbi::CutoffRule> rules_;
  std::map<std::string, std::string> reviewer_ids_by_token_hash_;

  std::vector<explainer::AttributionPacket> packets_;
  std::map<std::string, size_t> packet_index_;
  evaluator::ModelDirectory models_;

  mutable std::shared_mutex state_mutex_;
  std::optional<JsonlLog> survey_log_;
  std::optional<JsonlLog> verdict_log_;
  std::vector<StoredSurvey> surveys_;
  std::map<std::string, size_t> survey_index_;
  VerdictBook verdicts_;

  mutable std::mutex table4_mutex_;
  // Report keyed by the survey count it was computed on.
  mutable std::optional<std::pair<size_t, evaluator::CrossEvalReport>> table4_cache_;

  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
};

}  // namespace burnscreen::service

#endif  // BURNSCREEN_SERVICE_SERVER_H_
