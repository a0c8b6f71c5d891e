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

#ifndef BURNSCREEN_SERVICE_VERDICTS_H_
#define BURNSCREEN_SERVICE_VERDICTS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "common/label.h"
#include "explainer/packet.h"
#include "json.hpp"
#include "olbi/cutoff.h"

namespace burnscreen::service {

// One audit entry. `sequence` numbers every accepted submission; an entry
// that replaces an earlier verdict of the same reviewer names it in
// `supersedes`.
struct ReviewVerdict {
  int64_t sequence = 0;
  std::string packet_id;
  // Opaque digest of the reviewer's invite token.
  std::string reviewer_id;
  bool agree = false;
  std::optional<std::string> reason;
  std::string timestamp;
  std::optional<int64_t> supersedes;
};

nlohmann::json VerdictToJson(const ReviewVerdict& verdict);
absl::StatusOr<ReviewVerdict> VerdictFromJson(const nlohmann::json& json);

// Current verdict per (packet, reviewer) plus the full audit trail.
class VerdictBook {
 public:
  // Replays an audit log; sequences must be strictly increasing.
  static absl::StatusOr<VerdictBook> FromLog(std::span<const ReviewVerdict> log);

  // Builds the next audit entry without applying it. When
  // `expected_sequence` is set it must equal the sequence of the reviewer's
  // current verdict for the packet (0 when there is none), otherwise the
  // result is an Aborted conflict.
  absl::StatusOr<ReviewVerdict> Prepare(const std::string& packet_id,
                                        const std::string& reviewer_id,
                                        bool agree,
                                        std::optional<std::string> reason,
                                        std::string timestamp,
                                        std::optional<int64_t> expected_sequence) const;
  // Applies an entry produced by Prepare() on this state.
  void Commit(const ReviewVerdict& verdict);

  // Current verdicts ordered by (packet_id, reviewer_id).
  std::vector<ReviewVerdict> Current() const;
  std::vector<ReviewVerdict> CurrentFor(const std::string& packet_id) const;
  const std::vector<ReviewVerdict>& log() const { return log_; }

 private:
  std::map<std::pair<std::string, std::string>, ReviewVerdict> current_;
  std::vector<ReviewVerdict> log_;
  int64_t next_sequence_ = 1;
};

// agree / total, or nullopt when total is 0.
std::optional<double> AgreementProportion(int agree, int total);

struct AgreementRow {
  std::string packet_id;
  std::string text;
  std::map<olbi::CutoffName, Label> olbi_labels;
  Label ai_label = Label::kNoBurnout;
  int verdict_count = 0;
  int agree_count = 0;
  std::optional<double> proportion;
  // Non-empty reasons ordered by reviewer id.
  std::vector<std::string> reasons;
};

struct AgreementReport {
  std::vector<AgreementRow> rows;
};

// One row per packet in packet order. Verdicts may arrive in any order and
// must hold at most one entry per (packet, reviewer); verdicts naming an
// unknown packet are ignored.
AgreementReport ComputeAgreement(std::span<const explainer::AttributionPacket> packets,
                                 std::span<const ReviewVerdict> verdicts);

nlohmann::json AgreementReportToJson(const AgreementReport& report);

}  // namespace burnscreen::service

#endif  // BURNSCREEN_SERVICE_VERDICTS_H_
