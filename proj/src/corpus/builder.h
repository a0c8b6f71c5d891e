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

#ifndef BURNSCREEN_CORPUS_BUILDER_H_
#define BURNSCREEN_CORPUS_BUILDER_H_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "corpus/dataset.h"
#include "corpus/expression_table.h"

namespace burnscreen::corpus {

// One burnout sample per unique seed/variant expression, each paired with its
// control phrase. Duplicate expressions (after whitespace normalization) are
// dropped together with their pairing, first occurrence wins, so the two
// classes always have equal counts.
absl::StatusOr<Dataset> BuildV1(std::span<const ExpressionRecord> records);

// Unique expression texts of one label, in first-seen order. These are the
// inputs to v2 prompting.
std::vector<std::string> UniqueExpressions(const Dataset& dataset, Label label);

// Concatenation with provenance preserved. A single dataset is returned
// unchanged; two or more yield DatasetName::kCombined.
absl::StatusOr<Dataset> Combine(std::span<const Dataset> datasets);

struct SplitResult {
  Dataset train;
  Dataset eval;
};

// Seeded random partition. |train| = floor(ratio * N + 0.5), clamped so both
// sides keep at least one sample.
absl::StatusOr<SplitResult> Split(const Dataset& dataset, double ratio,
                                  uint64_t seed);

}  // namespace burnscreen::corpus

#endif  // BURNSCREEN_CORPUS_BUILDER_H_
