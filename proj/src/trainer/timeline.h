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

#ifndef BURNSCREEN_TRAINER_TIMELINE_H_
#define BURNSCREEN_TRAINER_TIMELINE_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace burnscreen::trainer {

struct TimelinePoint {
  int step = 0;
  double epoch = 0.0;
  // Mean training loss over the updates since the previous point.
  double training_loss = 0.0;
  double eval_loss = 0.0;
  double eval_f1 = 0.0;
  double eval_accuracy = 0.0;

  friend bool operator==(const TimelinePoint&, const TimelinePoint&) = default;
};

struct MetricsTimeline {
  std::vector<TimelinePoint> points;

  // Steps strictly increasing, losses non-negative and finite, f1 and
  // accuracy within [0, 1].
  absl::Status Validate() const;
  std::string ToTsv() const;
  static absl::StatusOr<MetricsTimeline> FromTsv(std::string_view contents);
  // Three panels: training and eval loss, eval F1, eval accuracy, each
  // against the training step.
  std::string ToSvg(std::string_view title) const;

  friend bool operator==(const MetricsTimeline&,
                         const MetricsTimeline&) = default;
};

}  // namespace burnscreen::trainer

#endif  // BURNSCREEN_TRAINER_TIMELINE_H_
