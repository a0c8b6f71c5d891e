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

#ifndef BURNSCREEN_EXPLAINER_INTEGRATED_GRADIENTS_H_
#define BURNSCREEN_EXPLAINER_INTEGRATED_GRADIENTS_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "common/label.h"
#include "trainer/encoder.h"
#include "trainer/tokenizer.h"
#include "trainer/train.h"

namespace burnscreen::explainer {

enum class QuadratureRule { kGaussLegendre, kTrapezoid };

std::string_view QuadratureRuleName(QuadratureRule rule);

// Nodes in [0, 1] and weights summing to 1 for `points` evaluation points.
struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};
Quadrature MakeQuadrature(int points, QuadratureRule rule);

inline constexpr int kMinSteps = 8;
inline constexpr int kDefaultSteps = 32;

inline constexpr int kDefaultMaxSteps = 1024;

// Scalar output whose change along the path is attributed.
enum class AttributionOutput {
  // log p(target) - log p(other), the logit margin of the target class.
  kLogOdds,
  // p(target).
  kProbability,
};
std::string_view AttributionOutputName(AttributionOutput output);

// Where the straight-line path between baseline and input runs.
enum class AttributionLayer {
  // Output of the embedding layer (word plus position embeddings, normalized).
  kEmbeddingOutput,
  // Looked-up word embeddings; position embeddings stay fixed.
  kWordEmbeddings,
};
std::string_view AttributionLayerName(AttributionLayer layer);

struct AttributionOptions {
  // Evaluation points of the first pass.
  int steps = kDefaultSteps;
  QuadratureRule rule = QuadratureRule::kGaussLegendre;
  AttributionOutput output = AttributionOutput::kLogOdds;
  AttributionLayer layer = AttributionLayer::kEmbeddingOutput;
  // While the completeness check fails, the integral is recomputed with
  // twice the points, up to `max_steps`. Steep paths (a near-step change in
  // the model output) need this; smooth ones stop after the first pass.
  bool refine = true;
  int max_steps = kDefaultMaxSteps;
};

// |residual| <= 0.05 * |delta| + 0.01.
bool WithinCompletenessTolerance(double residual, double delta);

struct TokenAttribution {
  std::string token;
  int id = 0;
  // Positive values push toward the attributed class.
  double score = 0.0;
  // [CLS], [SEP] and padding markers.
  bool special = false;
};

struct Attribution {
  std::vector<TokenAttribution> tokens;
  Label target = Label::kNoBurnout;
  // Positive-class probability of the input.
  double positive_score = 0.0;
  // Attributed output at the input and at the baseline.
  double f_input = 0.0;
  double f_baseline = 0.0;
  // |sum of scores - (f_input - f_baseline)|.
  double residual = 0.0;
  bool truncated = false;
  // Points used by the final pass.
  int steps = 0;
  QuadratureRule rule = QuadratureRule::kGaussLegendre;
  AttributionOutput output = AttributionOutput::kLogOdds;
  AttributionLayer layer = AttributionLayer::kEmbeddingOutput;

  double delta() const { return f_input - f_baseline; }
  double ScoreSum() const;
};

// Baseline ids: [CLS] and [SEP] are kept, every other position is [PAD].
std::vector<int> BaselineIds(const trainer::WordPieceTokenizer& tokenizer,
                             std::span<const int> ids);

// Integrated gradients of the chosen output for the target class along the
// straight line from the baseline to the input at the chosen layer, summed
// over the hidden dimension per token. Never writes parameter gradients, so
// one model may serve concurrent callers.
absl::StatusOr<Attribution> AttributeIds(
    const trainer::WordPieceTokenizer& tokenizer,
    const trainer::EncoderClassifier& model, std::span<const int> ids,
    Label target, const AttributionOptions& options = {});

// Encodes `text` and attributes the predicted class.
absl::StatusOr<Attribution> Attribute(const trainer::ClassifierArtifact& artifact,
                                      std::string_view text,
                                      const AttributionOptions& options = {});

}  // namespace burnscreen::explainer

#endif  // BURNSCREEN_EXPLAINER_INTEGRATED_GRADIENTS_H_
