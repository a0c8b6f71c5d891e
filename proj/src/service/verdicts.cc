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

#include "service/verdicts.h"

#include <algorithm>

#include "common/strings.h"

namespace burnscreen::service {

nlohmann::json VerdictToJson(const ReviewVerdict& verdict) {
  return {
      {"sequence", verdict.sequence},
      {"packet_id", verdict.packet_id},
      {"reviewer_id", verdict.reviewer_id},
      {"agree", verdict.agree},
      {"reason", verdict.reason ? nlohmann::json(*verdict.reason) : nlohmann::json()},
      {"timestamp", verdict.timestamp},
      {"supersedes",
       verdict.supersedes ? nlohmann::json(*verdict.supersedes) : nlohmann::json()},
  };
}

absl::StatusOr<ReviewVerdict> VerdictFromJson(const nlohmann::json& json) {
  ReviewVerdict verdict;
  try {
    verdict.sequence = json.at("sequence").get<int64_t>();
    verdict.packet_id = json.at("packet_id").get<std::string>();
    verdict.reviewer_id = json.at("reviewer_id").get<std::string>();
    verdict.agree = json.at("agree").get<bool>();
    if (json.contains("reason") && !json["reason"].is_null()) {
      verdict.reason = json["reason"].get<std::string>();
    }
    verdict.timestamp = json.at("timestamp").get<std::string>();
    if (json.contains("supersedes") && !json["supersedes"].is_null()) {
      verdict.supersedes = json["supersedes"].get<int64_t>();
    }
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(StrCat("malformed verdict: ", e.what()));
  }
  return verdict;
}

absl::StatusOr<VerdictBook> VerdictBook::FromLog(
    std::span<const ReviewVerdict> log) {
  VerdictBook book;
  for (const ReviewVerdict& verdict : log) {
    if (verdict.sequence < book.next_sequence_) {
      return absl::DataLossError(StrCat("verdict log sequence ", verdict.sequence,
                                        " is out of order"));
    }
    book.Commit(verdict);
  }
  return book;
}

absl::StatusOr<ReviewVerdict> VerdictBook::Prepare(
    const std::string& packet_id, const std::string& reviewer_id, bool agree,
    std::optional<std::string> reason, std::string timestamp,
    std::optional<int64_t> expected_sequence) const {
  ReviewVerdict verdict;
  verdict.sequence = next_sequence_;
  verdict.packet_id = packet_id;
  verdict.reviewer_id = reviewer_id;
  verdict.agree = agree;
  verdict.reason = std::move(reason);
  verdict.timestamp = std::move(timestamp);
  const auto it = current_.find({packet_id, reviewer_id});
  const int64_t current_sequence = it == current_.end() ? 0 : it->second.sequence;
  if (expected_sequence.has_value() && *expected_sequence != current_sequence) {
    return absl::AbortedError(StrCat("expected sequence ", *expected_sequence,
                                     " but the current verdict has sequence ",
                                     current_sequence));
  }
  if (current_sequence != 0) verdict.supersedes = current_sequence;
  return verdict;
}

void VerdictBook::Commit(const ReviewVerdict& verdict) {
  current_[{verdict.packet_id, verdict.reviewer_id}] = verdict;
  log_.push_back(verdict);
  next_sequence_ = std::max(next_sequence_, verdict.sequence + 1);
}

std::vector<ReviewVerdict> VerdictBook::Current() const {
  std::vector<ReviewVerdict> out;
  out.reserve(current_.size());
  for (const auto& [key, verdict] : current_) out.push_back(verdict);
  return out;
}

std::vector<ReviewVerdict> VerdictBook::CurrentFor(
    const std::string& packet_id) const {
  std::vector<ReviewVerdict> out;
  for (auto it = current_.lower_bound({packet_id, ""});
       it != current_.end() && it->first.first == packet_id; ++it) {
    out.push_back(it->second);
  }
  return out;
}

std::optional<double> AgreementProportion(int agree, int total) {
  if (total == 0) return std::nullopt;
  return static_cast<double>(agree) / total;
}

AgreementReport ComputeAgreement(
    std::span<const explainer::AttributionPacket> packets,
    std::span<const ReviewVerdict> verdicts) {
  std::map<std::string, std::vector<const ReviewVerdict*>> by_packet;
  for (const ReviewVerdict& verdict : verdicts) {
    by_packet[verdict.packet_id].push_back(&verdict);
  }
  AgreementReport report;
  for (const explainer::AttributionPacket& packet : packets) {
    AgreementRow row;
    row.packet_id = packet.id;
    row.text = packet.source.text;
    row.olbi_labels = packet.source.olbi_labels;
    row.ai_label = packet.predicted;
    auto it = by_packet.find(packet.id);
    if (it != by_packet.end()) {
      std::vector<const ReviewVerdict*> entries = it->second;
      std::sort(entries.begin(), entries.end(), [](const auto* a, const auto* b) {
        return a->reviewer_id < b->reviewer_id;
      });
      for (const ReviewVerdict* verdict : entries) {
        ++row.verdict_count;
        if (verdict->agree) ++row.agree_count;
        if (verdict->reason && !verdict->reason->empty()) {
          row.reasons.push_back(*verdict->reason);
        }
      }
    }
    row.proportion = AgreementProportion(row.agree_count, row.verdict_count);
    report.rows.push_back(std::move(row));
  }
  return report;
}

nlohmann::json AgreementReportToJson(const AgreementReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const AgreementRow& row : report.rows) {
    nlohmann::json labels = nlohmann::json::object();
    for (const auto& [name, label] : row.olbi_labels) {
      labels[std::string(olbi::CutoffId(name))] = std::string(LabelDisplayName(label));
    }
    rows.push_back({
        {"packet_id", row.packet_id},
        {"text", row.text},
        {"olbi_labels", labels},
        {"ai_label", std::string(LabelDisplayName(row.ai_label))},
        {"verdict_count", row.verdict_count},
        {"agree_count", row.agree_count},
        {"agreement", row.proportion ? nlohmann::json(*row.proportion)
                                     : nlohmann::json()},
        {"reasons", row.reasons},
    });
  }
  return {{"rows", rows}};
}

}  // namespace burnscreen::service
