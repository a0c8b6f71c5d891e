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

#include "corpus/builder.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "common/random.h"
#include "common/strings.h"
#include "common/text.h"

namespace burnscreen::corpus {

absl::StatusOr<Dataset> BuildV1(std::span<const ExpressionRecord> records) {
  if (records.empty()) {
    return absl::InvalidArgumentError("cannot build v1 from an empty table");
  }
  Dataset dataset;
  dataset.name = DatasetName::kV1;
  std::set<std::string> seen;
  auto add_pair = [&](const std::string& expression,
                      const std::string& opposite) {
    const std::string key = text::NormalizeWhitespace(expression);
    if (key.empty() || !seen.insert(key).second) return;
    dataset.samples.push_back(
        {key, Label::kBurnout, Source::kCurated, std::nullopt});
    dataset.samples.push_back({text::NormalizeWhitespace(opposite),
                               Label::kNoBurnout, Source::kCurated,
                               std::nullopt});
  };
  for (const ExpressionRecord& record : records) {
    add_pair(record.seed, record.opposite);
    for (size_t i = 0; i < record.variants.size(); ++i) {
      add_pair(record.variants[i], record.OppositeForVariant(i));
    }
  }
  return dataset;
}

std::vector<std::string> UniqueExpressions(const Dataset& dataset, Label label) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const TextSample& sample : dataset.samples) {
    if (sample.label == label && seen.insert(sample.text).second) {
      out.push_back(sample.text);
    }
  }
  return out;
}

absl::StatusOr<Dataset> Combine(std::span<const Dataset> datasets) {
  if (datasets.empty()) {
    return absl::InvalidArgumentError("combine needs at least one dataset");
  }
  if (datasets.size() == 1) return datasets.front();
  Dataset combined;
  combined.name = DatasetName::kCombined;
  for (const Dataset& dataset : datasets) {
    combined.samples.insert(combined.samples.end(), dataset.samples.begin(),
                            dataset.samples.end());
  }
  return combined;
}

absl::StatusOr<SplitResult> Split(const Dataset& dataset, double ratio,
                                  uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    return absl::InvalidArgumentError(
        StrCat("split ratio must lie in (0, 1), got ", ratio));
  }
  const size_t n = dataset.samples.size();
  if (n < 2) {
    return absl::InvalidArgumentError(
        StrCat("cannot split a dataset of ", n, " samples"));
  }
  size_t train_size =
      static_cast<size_t>(std::floor(ratio * static_cast<double>(n) + 0.5));
  train_size = std::clamp<size_t>(train_size, 1, n - 1);

  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  Rng rng(seed);
  rng.Shuffle(order);

  SplitResult result;
  result.train.name = dataset.name;
  result.eval.name = dataset.name;
  result.train.samples.reserve(train_size);
  result.eval.samples.reserve(n - train_size);
  for (size_t i = 0; i < n; ++i) {
    const TextSample& sample = dataset.samples[order[i]];
    (i < train_size ? result.train : result.eval).samples.push_back(sample);
  }
  return result;
}

}  // namespace burnscreen::corpus
