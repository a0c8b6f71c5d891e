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

#include "evaluator/metrics.h"

#include "common/strings.h"

namespace burnscreen::evaluator {

namespace {

double Ratio(int numerator, int denominator) {
  return denominator == 0 ? 0.0
                          : static_cast<double>(numerator) / denominator;
}

}  // namespace

Metrics MetricsFromCounts(int tp, int fp, int fn, int tn) {
  Metrics m;
  m.tp = tp;
  m.fp = fp;
  m.fn = fn;
  m.tn = tn;
  m.precision = Ratio(tp, tp + fp);
  m.recall = Ratio(tp, tp + fn);
  if (m.precision + m.recall > 0.0) {
    m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
  } else {
    m.f1 = 0.0;
    m.f1_undefined = true;
  }
  m.accuracy = Ratio(tp + tn, m.count());
  return m;
}

absl::StatusOr<Metrics> ComputeMetrics(std::span<const Label> predictions,
                                       std::span<const Label> labels) {
  if (predictions.size() != labels.size()) {
    return absl::InvalidArgumentError(
        StrCat("length mismatch: ", predictions.size(), " predictions vs ",
               labels.size(), " labels"));
  }
  if (predictions.empty()) {
    return absl::InvalidArgumentError("no predictions to score");
  }
  int tp = 0, fp = 0, fn = 0, tn = 0;
  for (size_t i = 0; i < labels.size(); ++i) {
    const bool predicted = predictions[i] == Label::kBurnout;
    const bool actual = labels[i] == Label::kBurnout;
    if (predicted && actual) {
      ++tp;
    } else if (predicted) {
      ++fp;
    } else if (actual) {
      ++fn;
    } else {
      ++tn;
    }
  }
  return MetricsFromCounts(tp, fp, fn, tn);
}

nlohmann::json MetricsToJson(const Metrics& metrics) {
  return {{"tp", metrics.tp},
          {"fp", metrics.fp},
          {"fn", metrics.fn},
          {"tn", metrics.tn},
          {"precision", metrics.precision},
          {"recall", metrics.recall},
          {"f1", metrics.f1},
          {"accuracy", metrics.accuracy},
          {"f1_undefined", metrics.f1_undefined}};
}

absl::StatusOr<Metrics> MetricsFromJson(const nlohmann::json& json) {
  for (const char* key : {"tp", "fp", "fn", "tn"}) {
    if (!json.contains(key) || !json[key].is_number_integer() ||
        json[key].get<int>() < 0) {
      return absl::InvalidArgumentError(
          StrCat("metrics need a non-negative integer '", key, "'"));
    }
  }
  return MetricsFromCounts(json["tp"].get<int>(), json["fp"].get<int>(),
                           json["fn"].get<int>(), json["tn"].get<int>());
}

}  // namespace burnscreen::evaluator
