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

#ifndef BURNSCREEN_EVALUATOR_METRICS_H_
#define BURNSCREEN_EVALUATOR_METRICS_H_

#include <span>

#include "absl/status/statusor.h"
#include "common/label.h"
#include "json.hpp"

namespace burnscreen::evaluator {

// Binary metrics on the burnout (positive) class.
struct Metrics {
  int tp = 0;
  int fp = 0;
  int fn = 0;
  int tn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double accuracy = 0.0;
  // Set when precision + recall = 0 and f1 was defined as 0.
  bool f1_undefined = false;

  int count() const { return tp + fp + fn + tn; }
};

// Derives the rates from the confusion counts.
Metrics MetricsFromCounts(int tp, int fp, int fn, int tn);

// Errors on length mismatch or empty input.
absl::StatusOr<Metrics> ComputeMetrics(std::span<const Label> predictions,
                                       std::span<const Label> labels);

nlohmann::json MetricsToJson(const Metrics& metrics);
absl::StatusOr<Metrics> MetricsFromJson(const nlohmann::json& json);

}  // namespace burnscreen::evaluator

#endif  // BURNSCREEN_EVALUATOR_METRICS_H_
