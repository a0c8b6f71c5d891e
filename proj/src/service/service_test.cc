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

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <thread>

#include "common/io.h"
#include "common/random.h"
#include "common/text.h"
#include "httplib.h"

namespace burnscreen::service {
namespace {

namespace fs = std::filesystem;
using ::testing::HasSubstr;

const std::vector<std::string> kTokens = {"tok-a", "tok-b", "tok-c", "tok-d",
                                          "tok-e"};

explainer::AttributionPacket MakePacket(const std::string& text, Label olbi,
                                        Label ai) {
  explainer::Attribution a;
  a.tokens = {{"[CLS]", 2, 0.0, true}, {text, 10, 0.4, false}, {"[SEP]", 3, 0.0, true}};
  a.target = ai;
  a.positive_score = ai == Label::kBurnout ? 0.9 : 0.1;
  a.f_input = 0.9;
  a.f_baseline = 0.5;
  a.residual = 0.0;
  a.steps = 32;
  return *explainer::BuildPacket(
      {text, "", "", {{olbi::CutoffName::kCutoff1, olbi}}, "scratch", "v2"}, a);
}

// Five packets; the verdict fixtures below cover the first four.
std::vector<explainer::AttributionPacket> ReviewPackets() {
  return {MakePacket("Beispiel eins", Label::kNoBurnout, Label::kNoBurnout),
          MakePacket("Beispiel zwei", Label::kBurnout, Label::kBurnout),
          MakePacket("Beispiel drei", Label::kNoBurnout, Label::kNoBurnout),
          MakePacket("Beispiel vier", Label::kBurnout, Label::kNoBurnout),
          MakePacket("Beispiel fünf", Label::kNoBurnout, Label::kBurnout)};
}

class ServiceTest : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() /
            ("service_test_" + std::to_string(::getpid()) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(root_);
    fs::create_directories(root_ / "models");
    packets_ = ReviewPackets();
    ASSERT_TRUE(explainer::WritePackets(packets_, root_ / "store" / "packets.jsonl").ok());
    StartService();
  }
  void TearDown() override {
    client_.reset();
    service_.reset();
    fs::remove_all(root_);
  }

  ServiceConfig Config() const {
    ServiceConfig config;
    config.port = 0;
    config.store_dir = root_ / "store";
    config.model_dir = root_ / "models";
    config.reviewer_tokens = kTokens;
    return config;
  }

  void StartService() {
    client_.reset();
    service_.reset();
    auto service = ReviewService::Create(Config(), [] { return std::string("T"); });
    ASSERT_TRUE(service.ok()) << service.status();
    service_ = *std::move(service);
    auto port = service_->Start();
    ASSERT_TRUE(port.ok()) << port.status();
    client_ = std::make_unique<httplib::Client>("127.0.0.1", *port);
  }

  httplib::Result PostJson(const std::string& path, const nlohmann::json& body,
                           const httplib::Headers& headers = {}) {
    return client_->Post(path.c_str(), headers, body.dump(), "application/json");
  }

  httplib::Result Verdict(const explainer::AttributionPacket& packet, int reviewer,
                          bool agree, nlohmann::json extra = nlohmann::json::object()) {
    extra["agree"] = agree;
    return PostJson("/packets/" + packet.id + "/verdicts", extra,
                    {{"X-Reviewer-Token", kTokens[reviewer]}});
  }

  nlohmann::json GetJson(const std::string& path) {
    auto res = client_->Get(path.c_str());
    EXPECT_TRUE(res);
    EXPECT_EQ(res->status, 200) << res->body;
    return nlohmann::json::parse(res->body);
  }

  static nlohmann::json ValidSubmission() {
    nlohmann::json olbi = nlohmann::json::object();
    for (int item = 1; item <= 16; ++item) olbi[std::to_string(item)] = 2;
    return {{"consent", true},
            {"answers",
             {{"Q1", "Ich stehe früh auf und arbeite viel."},
              {"Q2", "Ich fühle mich oft erschöpft."},
              {"Q3", "Das Team hilft mir sehr."},
              {"Q4", "Nichts weiter."}}},
            {"olbi", olbi},
            {"age", 34},
            {"gender", "female"}};
  }

  std::vector<std::string> StoreLines(const std::string& name) {
    auto contents = io::ReadFile(root_ / "store" / name);
    if (!contents.ok()) return {};
    std::vector<std::string> lines;
    for (const std::string& line : text::SplitLines(*contents)) {
      if (!line.empty()) lines.push_back(line);
    }
    return lines;
  }

  fs::path root_;
  std::vector<explainer::AttributionPacket> packets_;
  std::unique_ptr<ReviewService> service_;
  std::unique_ptr<httplib::Client> client_;
};

TEST(ServiceConfigTest, ReadsEnvironment) {
  std::map<std::string, std::string> env = {
      {"BURNSCREEN_PORT", "9123"},
      {"BURNSCREEN_STORE_DIR", "/tmp/s"},
      {"BURNSCREEN_MODEL_DIR", "/tmp/m"},
      {"BURNSCREEN_REVIEWER_TOKENS", " a, b ,,c"},
      {"BURNSCREEN_CUTOFF2", "2c"}};
  auto lookup = [&](std::string_view name) -> std::optional<std::string> {
    auto it = env.find(std::string(name));
    if (it == env.end()) return std::nullopt;
    return it->second;
  };
  auto config = ServiceConfigFromEnvironment(lookup);
  ASSERT_TRUE(config.ok()) << config.status();
  EXPECT_EQ(config->port, 9123);
  EXPECT_EQ(config->reviewer_tokens, (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(config->cutoff2, olbi::Cutoff2Variant::kClinical);
  env["BURNSCREEN_PORT"] = "http";
  EXPECT_FALSE(ServiceConfigFromEnvironment(lookup).ok());
  env["BURNSCREEN_PORT"] = "80";
  env.erase("BURNSCREEN_MODEL_DIR");
  auto missing = ServiceConfigFromEnvironment(lookup);
  ASSERT_FALSE(missing.ok());
  EXPECT_THAT(std::string(missing.status().message()), HasSubstr("BURNSCREEN_MODEL_DIR"));
}

TEST(ServiceStartupTest, MissingModelDirectoryIsNamed) {
  ServiceConfig config;
  config.store_dir = fs::temp_directory_path() / "service_startup_store";
  config.model_dir = "/nonexistent/models-here";
  auto service = ReviewService::Create(config);
  ASSERT_FALSE(service.ok());
  EXPECT_THAT(std::string(service.status().message()), HasSubstr("/nonexistent/models-here"));
  fs::remove_all(config.store_dir);
}

TEST_F(ServiceTest, SurveyIsScoredAndRetrievable) {
  auto res = PostJson("/surveys", ValidSubmission(),
                      {{"User-Agent", "probe-agent/1.0"}, {"X-Forwarded-For", "10.1.2.3"}});
  ASSERT_TRUE(res);
  ASSERT_EQ(res->status, 201) << res->body;
  const nlohmann::json created = nlohmann::json::parse(res->body);
  const std::string id = created["respondent_id"];
  EXPECT_EQ(id.size(), 24u);
  EXPECT_FALSE(created.contains("answers"));
  const nlohmann::json fetched = GetJson("/surveys/" + id);
  EXPECT_EQ(fetched["score"]["total"], 40);
  EXPECT_EQ(fetched["labels"]["cutoff1"], 1);
  EXPECT_EQ(fetched["excluded_from_test_set"], false);
  EXPECT_EQ(client_->Get("/surveys/nope")->status, 404);
}

TEST_F(ServiceTest, StoredRecordHoldsNoNetworkMetadata) {
  ASSERT_EQ(PostJson("/surveys", ValidSubmission(),
                     {{"User-Agent", "probe-agent/1.0"},
                      {"X-Forwarded-For", "10.1.2.3"}})->status,
            201);
  const auto lines = StoreLines("surveys.jsonl");
  ASSERT_EQ(lines.size(), 1u);
  const nlohmann::json stored = nlohmann::json::parse(lines[0]);
  for (const auto& [key, value] : stored.items()) {
    EXPECT_NE(std::find(kStoredSurveyKeys.begin(), kStoredSurveyKeys.end(), key),
              kStoredSurveyKeys.end())
        << key;
  }
  EXPECT_EQ(lines[0].find("probe-agent"), std::string::npos);
  EXPECT_EQ(lines[0].find("10.1.2.3"), std::string::npos);
  EXPECT_EQ(lines[0].find("127.0.0.1"), std::string::npos);
  // Extra fields are refused rather than stored.
  nlohmann::json smuggled = ValidSubmission();
  smuggled["ip"] = "10.9.9.9";
  EXPECT_EQ(PostJson("/surveys", smuggled)->status, 422);
  EXPECT_EQ(StoreLines("surveys.jsonl").size(), 1u);
}

TEST_F(ServiceTest, MissingItemIsListed) {
  nlohmann::json payload = ValidSubmission();
  payload["olbi"].erase("7");
  auto res = PostJson("/surveys", payload);
  ASSERT_EQ(res->status, 422);
  const nlohmann::json body = nlohmann::json::parse(res->body);
  EXPECT_EQ(body["missing_items"], nlohmann::json::array({7}));
  EXPECT_THAT(body["error"].get<std::string>(), HasSubstr("7"));
  EXPECT_TRUE(StoreLines("surveys.jsonl").empty());
}

TEST_F(ServiceTest, ConsentIsRequired) {
  nlohmann::json payload = ValidSubmission();
  payload["consent"] = false;
  EXPECT_EQ(PostJson("/surveys", payload)->status, 400);
  payload.erase("consent");
  EXPECT_EQ(PostJson("/surveys", payload)->status, 400);
  EXPECT_EQ(client_->Post("/surveys", "{oops", "application/json")->status, 400);
  EXPECT_TRUE(StoreLines("surveys.jsonl").empty());
}

TEST_F(ServiceTest, OutOfRangeAnswerIsRejected) {
  nlohmann::json payload = ValidSubmission();
  payload["olbi"]["3"] = 5;
  EXPECT_EQ(PostJson("/surveys", payload)->status, 422);
  payload = ValidSubmission();
  payload.erase("age");
  EXPECT_EQ(PostJson("/surveys", payload)->status, 422);
}

TEST_F(ServiceTest, AllEmptyTextsAreScoredButFlagged) {
  nlohmann::json payload = ValidSubmission();
  payload["answers"] = {{"Q1", ""}, {"Q2", ""}, {"Q3", ""}, {"Q4", ""}};
  auto res = PostJson("/surveys", payload);
  ASSERT_EQ(res->status, 201);
  EXPECT_EQ(nlohmann::json::parse(res->body)["excluded_from_test_set"], true);
  ASSERT_EQ(PostJson("/surveys", ValidSubmission())->status, 201);
  const nlohmann::json table3 = GetJson("/reports/table3");
  EXPECT_EQ(table3["respondent_count"], 2);
  const nlohmann::json table4 = GetJson("/reports/table4");
  EXPECT_EQ(table4["text_count"], 4);
  EXPECT_EQ(table4["respondent_count"], 1);
}

TEST_F(ServiceTest, Table3MatchesFixtureDistribution) {
  auto records = io::ReadFile(std::string(BURNSCREEN_DATA_DIR) +
                              "/demo/survey_fixture.jsonl");
  ASSERT_TRUE(records.ok());
  for (const std::string& line : text::SplitLines(*records)) {
    if (line.empty()) continue;
    nlohmann::json payload = nlohmann::json::parse(line);
    payload.erase("respondent_id");
    payload["consent"] = true;
    ASSERT_EQ(PostJson("/surveys", payload)->status, 201);
  }
  const nlohmann::json table3 = GetJson("/reports/table3");
  ASSERT_EQ(table3["rows"].size(), 3u);
  EXPECT_EQ(table3["rows"][0]["burnout"], 4);
  EXPECT_EQ(table3["rows"][0]["no_burnout"], 13);
  EXPECT_EQ(table3["rows"][1]["burnout"], 2);
  EXPECT_EQ(table3["rows"][1]["no_burnout"], 15);
  EXPECT_EQ(table3["rows"][2]["burnout"], 7);
  EXPECT_EQ(table3["rows"][2]["no_burnout"], 10);
  const nlohmann::json table4 = GetJson("/reports/table4");
  EXPECT_EQ(table4["text_count"], 66);
  EXPECT_EQ(table4["complete"], false);
  ASSERT_EQ(table4["rows"].size(), 4u);
  EXPECT_THAT(table4["rows"][0]["error"].get<std::string>(), HasSubstr("no artifact at"));
  auto text = client_->Get("/reports/table4?format=text");
  EXPECT_THAT(text->body, HasSubstr("n/a"));
}

TEST_F(ServiceTest, VerdictNeedsTokenAndKnownPacket) {
  auto res = PostJson("/packets/" + packets_[0].id + "/verdicts", {{"agree", true}});
  EXPECT_EQ(res->status, 401);
  res = PostJson("/packets/" + packets_[0].id + "/verdicts", {{"agree", true}},
                 {{"X-Reviewer-Token", "forged"}});
  EXPECT_EQ(res->status, 401);
  res = PostJson("/packets/deadbeef/verdicts", {{"agree", true}},
                 {{"X-Reviewer-Token", kTokens[0]}});
  EXPECT_EQ(res->status, 404);
  res = PostJson("/packets/" + packets_[0].id + "/verdicts", {{"agree", "yes"}},
                 {{"X-Reviewer-Token", kTokens[0]}});
  EXPECT_EQ(res->status, 422);
  EXPECT_TRUE(StoreLines("verdicts.jsonl").empty());
}

TEST_F(ServiceTest, TokensAreNotStored) {
  ASSERT_EQ(Verdict(packets_[0], 0, true)->status, 201);
  const auto lines = StoreLines("verdicts.jsonl");
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_EQ(lines[0].find(kTokens[0]), std::string::npos);
  EXPECT_EQ(nlohmann::json::parse(lines[0])["reviewer_id"], ReviewerIdForToken(kTokens[0]));
}

TEST_F(ServiceTest, AgreementMatchesFixtureProportions) {
  const std::vector<std::vector<bool>> votes = {
      {true, true, true, true, true},
      {true, true, false, true, true},
      {true, true, true, true, true},
      {false, false, false, false, false}};
  for (size_t p = 0; p < votes.size(); ++p) {
    for (int r = 0; r < 5; ++r) {
      nlohmann::json extra = nlohmann::json::object();
      if (!votes[p][r]) extra["reason"] = "Grund " + std::to_string(r);
      ASSERT_EQ(Verdict(packets_[p], r, votes[p][r], extra)->status, 201);
    }
  }
  const nlohmann::json report = GetJson("/reports/agreement");
  ASSERT_EQ(report["rows"].size(), 5u);
  EXPECT_EQ(report["rows"][0]["agreement"], 1.0);
  EXPECT_EQ(report["rows"][1]["agreement"], 0.8);
  EXPECT_EQ(report["rows"][2]["agreement"], 1.0);
  EXPECT_EQ(report["rows"][3]["agreement"], 0.0);
  EXPECT_TRUE(report["rows"][4]["agreement"].is_null());
  EXPECT_EQ(report["rows"][4]["verdict_count"], 0);
  EXPECT_EQ(report["rows"][1]["reasons"], nlohmann::json::array({"Grund 2"}));
  EXPECT_EQ(report["rows"][3]["reasons"].size(), 5u);
  EXPECT_EQ(report["rows"][0]["ai_label"], "No burnout");
  EXPECT_EQ(report["rows"][0]["olbi_labels"]["cutoff1"], "No burnout");
}

TEST_F(ServiceTest, ResubmissionOverwritesWithAuditTrail) {
  auto first = Verdict(packets_[0], 0, false);
  ASSERT_EQ(first->status, 201);
  const int64_t sequence = nlohmann::json::parse(first->body)["sequence"];
  auto second = Verdict(packets_[0], 0, true);
  ASSERT_EQ(second->status, 200);
  const nlohmann::json body = nlohmann::json::parse(second->body);
  EXPECT_EQ(body["supersedes"], sequence);
  EXPECT_EQ(body["timestamp"], "T");
  EXPECT_EQ(StoreLines("verdicts.jsonl").size(), 2u);
  const nlohmann::json report = GetJson("/reports/agreement");
  EXPECT_EQ(report["rows"][0]["verdict_count"], 1);
  EXPECT_EQ(report["rows"][0]["agreement"], 1.0);
  const nlohmann::json current = GetJson("/packets/" + packets_[0].id + "/verdicts");
  ASSERT_EQ(current["verdicts"].size(), 1u);
  EXPECT_EQ(current["verdicts"][0]["agree"], true);
}

TEST_F(ServiceTest, StaleExpectedSequenceConflicts) {
  ASSERT_EQ(Verdict(packets_[0], 1, true, {{"expected_sequence", 0}})->status, 201);
  auto stale = Verdict(packets_[0], 1, false, {{"expected_sequence", 0}});
  EXPECT_EQ(stale->status, 409);
  auto fresh = Verdict(packets_[0], 1, false, {{"expected_sequence", 1}});
  EXPECT_EQ(fresh->status, 200);
  EXPECT_EQ(StoreLines("verdicts.jsonl").size(), 2u);
}

TEST_F(ServiceTest, StateSurvivesRestart) {
  ASSERT_EQ(PostJson("/surveys", ValidSubmission())->status, 201);
  ASSERT_EQ(Verdict(packets_[1], 2, true)->status, 201);
  ASSERT_EQ(Verdict(packets_[1], 3, false)->status, 201);
  const nlohmann::json before = GetJson("/reports/agreement");
  StartService();
  EXPECT_EQ(GetJson("/reports/agreement"), before);
  EXPECT_EQ(GetJson("/reports/table3")["respondent_count"], 1);
  auto next = Verdict(packets_[1], 2, false);
  EXPECT_EQ(nlohmann::json::parse(next->body)["sequence"], 3);
}

TEST_F(ServiceTest, PacketsAreListedAndRendered) {
  const nlohmann::json list = GetJson("/packets");
  ASSERT_EQ(list["packets"].size(), packets_.size());
  EXPECT_EQ(list["packets"][0]["id"], packets_[0].id);
  const nlohmann::json one = GetJson("/packets/" + packets_[3].id);
  EXPECT_EQ(one["text"], "Beispiel vier");
  auto html = client_->Get(("/packets/" + packets_[3].id + "?format=html").c_str());
  EXPECT_EQ(html->body, explainer::RenderPacketHtml(packets_[3]));
  EXPECT_EQ(client_->Get("/packets/unknown")->status, 404);
}

TEST_F(ServiceTest, ConcurrentSubmissionsAreAllStored) {
  const int port = client_->port();
  std::vector<std::thread> threads;
  std::atomic<int> created = 0;
  for (int t = 0; t < 6; ++t) {
    threads.emplace_back([&, port] {
      httplib::Client client("127.0.0.1", port);
      for (int i = 0; i < 5; ++i) {
        auto res = client.Post("/surveys", ValidSubmission().dump(), "application/json");
        if (res && res->status == 201) ++created;
      }
    });
  }
  for (std::thread& t : threads) t.join();
  EXPECT_EQ(created.load(), 30);
  const auto lines = StoreLines("surveys.jsonl");
  EXPECT_EQ(lines.size(), 30u);
  for (const std::string& line : lines) {
    EXPECT_TRUE(nlohmann::json::parse(line, nullptr, false).is_object());
  }
}

TEST(AgreementOrderTest, PermutedArrivalGivesSameReport) {
  const auto packets = ReviewPackets();
  const std::vector<std::vector<bool>> votes = {
      {true, true, true, true, true},
      {true, true, false, true, true},
      {true, true, true, true, true},
      {false, false, false, false, false}};
  std::vector<std::pair<int, int>> order;
  for (int p = 0; p < 4; ++p) {
    for (int r = 0; r < 5; ++r) order.push_back({p, r});
  }
  Rng rng(5);
  std::optional<nlohmann::json> reference;
  for (int trial = 0; trial < 25; ++trial) {
    rng.Shuffle(order);
    VerdictBook book;
    for (const auto& [p, r] : order) {
      auto v = book.Prepare(packets[p].id, ReviewerIdForToken(kTokens[r]), votes[p][r],
                            votes[p][r] ? std::nullopt
                                        : std::optional<std::string>("nein " +
                                                                     std::to_string(r)),
                            "T", std::nullopt);
      ASSERT_TRUE(v.ok());
      book.Commit(*v);
    }
    const nlohmann::json report =
        AgreementReportToJson(ComputeAgreement(packets, book.Current()));
    if (!reference) {
      reference = report;
      EXPECT_EQ(report["rows"][1]["agreement"], 0.8);
    }
    EXPECT_EQ(report, *reference);
  }
}

TEST(AgreementProportionTest, Definition) {
  EXPECT_FALSE(AgreementProportion(0, 0).has_value());
  EXPECT_EQ(*AgreementProportion(1, 1), 1.0);
  EXPECT_EQ(*AgreementProportion(4, 5), 0.8);
  EXPECT_EQ(*AgreementProportion(0, 5), 0.0);
}

TEST(VerdictBookTest, ReplayRejectsOutOfOrderLog) {
  ReviewVerdict a{2, "p", "r", true, std::nullopt, "T", std::nullopt};
  ReviewVerdict b{1, "p", "s", true, std::nullopt, "T", std::nullopt};
  const std::vector<ReviewVerdict> log = {a, b};
  EXPECT_FALSE(VerdictBook::FromLog(log).ok());
  const std::vector<ReviewVerdict> ok_log = {b, a};
  auto book = VerdictBook::FromLog(ok_log);
  ASSERT_TRUE(book.ok());
  EXPECT_EQ(book->Current().size(), 2u);
  auto next = book->Prepare("p", "r", false, std::nullopt, "T", std::nullopt);
  EXPECT_EQ(next->sequence, 3);
  EXPECT_EQ(next->supersedes, 2);
}

TEST(JsonlLogTest, TornTailIsDropped) {
  const fs::path path = fs::temp_directory_path() / "jsonl_log_test.jsonl";
  fs::remove(path);
  {
    std::ofstream out(path);
    out << "{\"a\":1}\n{\"a\":2}\n{\"a\":";
  }
  auto opened = JsonlLog::Open(path);
  ASSERT_TRUE(opened.ok()) << opened.status();
  EXPECT_TRUE(opened->dropped_torn_record);
  ASSERT_EQ(opened->records.size(), 2u);
  ASSERT_TRUE(opened->log.Append({{"a", 3}}).ok());
  auto reopened = JsonlLog::Open(path);
  ASSERT_TRUE(reopened.ok());
  EXPECT_FALSE(reopened->dropped_torn_record);
  ASSERT_EQ(reopened->records.size(), 3u);
  EXPECT_EQ(reopened->records[2]["a"], 3);
  fs::remove(path);
}

}  // namespace
}  // namespace burnscreen::service
