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

#include "explainer/integrated_gradients.h"

#include <cmath>
#include <numbers>

#include "common/strings.h"
#include "common/text.h"
#include "trainer/graph.h"

namespace burnscreen::explainer {

namespace {

using trainer::Graph;
using trainer::Matrix;

// Gauss-Legendre nodes on [-1, 1] by Newton iteration on P_n.
Quadrature GaussLegendre(int n) {
  Quadrature q;
  q.nodes.resize(n);
  q.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double derivative = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      derivative = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / derivative;
      x -= step;
      if (std::abs(step) < 1e-15) break;
    }
    // Map to [0, 1]; weights there sum to 1.
    q.nodes[n - 1 - i] = 0.5 * (x + 1.0);
    q.weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * derivative * derivative);
  }
  return q;
}

Quadrature Trapezoid(int n) {
  Quadrature q;
  if (n == 1) {
    q.nodes = {0.5};
    q.weights = {1.0};
    return q;
  }
  for (int i = 0; i < n; ++i) {
    q.nodes.push_back(static_cast<double>(i) / (n - 1));
    const bool end = i == 0 || i == n - 1;
    q.weights.push_back((end ? 0.5 : 1.0) / (n - 1));
  }
  return q;
}

// Path end point for `ids` at the attributed layer.
Matrix LayerValue(const trainer::EncoderClassifier& model, std::span<const int> ids,
                  AttributionLayer layer) {
  const Matrix& table = model.word_embeddings().value;
  Matrix words(static_cast<int>(ids.size()), table.cols());
  for (size_t i = 0; i < ids.size(); ++i) words.row(i) = table.row(ids[i]);
  if (layer == AttributionLayer::kWordEmbeddings) return words;
  Graph graph(/*parameter_grads=*/false);
  return graph.value(model.EmbeddingOutput(graph, graph.Input(std::move(words))));
}

// Attributed output and its gradient with respect to `embeddings`.
double OutputAndGradient(const trainer::EncoderClassifier& model,
                         const Matrix& embeddings, AttributionLayer layer,
                         int target, AttributionOutput kind, Matrix* gradient) {
  Graph graph(/*parameter_grads=*/false);
  const Graph::NodeId input = graph.Input(embeddings, gradient != nullptr);
  const Graph::NodeId logits =
      layer == AttributionLayer::kWordEmbeddings
          ? model.ForwardFromWordEmbeddings(graph, input, false, nullptr)
          : model.ForwardFromEmbeddingOutput(graph, input, false, nullptr);
  const Graph::NodeId output =
      kind == AttributionOutput::kProbability
          ? graph.Element(graph.SoftmaxRows(logits), 0, target)
          : graph.Add(graph.Element(logits, 0, target),
                      graph.Scale(graph.Element(logits, 0, 1 - target), -1.0));
  if (gradient != nullptr) {
    graph.Backward(output);
    *gradient = graph.grad(input);
  }
  return graph.value(output)(0, 0);
}

}  // namespace

bool WithinCompletenessTolerance(double residual, double delta) {
  return residual <= 0.05 * std::abs(delta) + 0.01;
}

std::string_view AttributionOutputName(AttributionOutput output) {
  return output == AttributionOutput::kLogOdds ? "log-odds" : "probability";
}

std::string_view AttributionLayerName(AttributionLayer layer) {
  return layer == AttributionLayer::kEmbeddingOutput ? "embedding-output"
                                                     : "word-embeddings";
}

std::string_view QuadratureRuleName(QuadratureRule rule) {
  return rule == QuadratureRule::kGaussLegendre ? "gauss-legendre" : "trapezoid";
}

Quadrature MakeQuadrature(int points, QuadratureRule rule) {
  return rule == QuadratureRule::kGaussLegendre ? GaussLegendre(points)
                                                : Trapezoid(points);
}

double Attribution::ScoreSum() const {
  double sum = 0.0;
  for (const TokenAttribution& t : tokens) sum += t.score;
  return sum;
}

std::vector<int> BaselineIds(const trainer::WordPieceTokenizer& tokenizer,
                             std::span<const int> ids) {
  std::vector<int> baseline(ids.begin(), ids.end());
  for (int& id : baseline) {
    if (id != tokenizer.cls_id() && id != tokenizer.sep_id()) {
      id = tokenizer.pad_id();
    }
  }
  return baseline;
}

absl::StatusOr<Attribution> AttributeIds(
    const trainer::WordPieceTokenizer& tokenizer,
    const trainer::EncoderClassifier& model, std::span<const int> ids,
    Label target, const AttributionOptions& options) {
  if (options.steps < kMinSteps) {
    return absl::InvalidArgumentError(
        StrCat("attribution needs at least ", kMinSteps, " steps, got ",
               options.steps));
  }
  if (options.refine && options.max_steps < options.steps) {
    return absl::InvalidArgumentError("max_steps must not be below steps");
  }
  if (ids.empty()) return absl::InvalidArgumentError("no tokens to attribute");
  if (static_cast<int>(ids.size()) > model.config().max_positions) {
    return absl::InvalidArgumentError(
        StrCat("sequence of ", ids.size(), " tokens exceeds the encoder limit of ",
               model.config().max_positions));
  }
  for (int id : ids) {
    if (id < 0 || id >= model.config().vocab_size) {
      return absl::InvalidArgumentError(StrCat("token id ", id, " out of range"));
    }
  }
  const int target_index = LabelValue(target);
  const Matrix input = LayerValue(model, ids, options.layer);
  const Matrix baseline =
      LayerValue(model, BaselineIds(tokenizer, ids), options.layer);
  const Matrix difference = input - baseline;

  Attribution result;
  result.target = target;
  result.rule = options.rule;
  result.output = options.output;
  result.layer = options.layer;
  result.f_input =
      OutputAndGradient(model, input, options.layer, target_index,
                        options.output, nullptr);
  result.f_baseline =
      OutputAndGradient(model, baseline, options.layer, target_index,
                        options.output, nullptr);
  const double target_probability = OutputAndGradient(
      model, input, options.layer, target_index, AttributionOutput::kProbability,
      nullptr);
  result.positive_score = target == Label::kBurnout ? target_probability
                                                    : 1.0 - target_probability;

  for (int steps = options.steps;; steps *= 2) {
    const Quadrature q = MakeQuadrature(steps, options.rule);
    Matrix averaged = Matrix::Zero(input.rows(), input.cols());
    Matrix gradient;
    for (size_t k = 0; k < q.nodes.size(); ++k) {
      const Matrix point = baseline + q.nodes[k] * difference;
      OutputAndGradient(model, point, options.layer, target_index, options.output,
                        &gradient);
      averaged += q.weights[k] * gradient;
    }
    const Matrix contributions = difference.cwiseProduct(averaged);
    result.tokens.clear();
    for (size_t i = 0; i < ids.size(); ++i) {
      TokenAttribution token;
      token.id = ids[i];
      token.token = tokenizer.TokenText(ids[i]);
      token.score = contributions.row(i).sum();
      token.special = ids[i] == tokenizer.cls_id() ||
                      ids[i] == tokenizer.sep_id() ||
                      ids[i] == tokenizer.pad_id();
      result.tokens.push_back(std::move(token));
    }
    result.steps = steps;
    result.residual = std::abs(result.ScoreSum() - result.delta());
    if (!options.refine || 2 * steps > options.max_steps ||
        WithinCompletenessTolerance(result.residual, result.delta())) {
      break;
    }
  }
  return result;
}

absl::StatusOr<Attribution> Attribute(const trainer::ClassifierArtifact& artifact,
                                      std::string_view text,
                                      const AttributionOptions& options) {
  if (text::Trim(text).empty()) {
    return absl::InvalidArgumentError("cannot attribute an empty text");
  }
  const trainer::Encoding encoding = artifact.tokenizer.Encode(
      text, std::min(artifact.config.max_length,
                     artifact.model.config().max_positions));
  const std::array<double, 2> probabilities =
      artifact.model.Probabilities(encoding.ids);
  const Label predicted =
      trainer::PredictionFromScore(probabilities[1]).label;
  auto result = AttributeIds(artifact.tokenizer, artifact.model, encoding.ids,
                             predicted, options);
  if (result.ok()) result->truncated = encoding.truncated;
  return result;
}

}  // namespace burnscreen::explainer
