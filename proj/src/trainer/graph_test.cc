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

#include "trainer/graph.h"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "trainer/encoder.h"

namespace burnscreen::trainer {
namespace {

Matrix RandomMatrix(int rows, int cols, Rng& rng) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.Normal(0, 1);
  return m;
}

Parameter MakeParam(const std::string& name, int rows, int cols, Rng& rng) {
  Parameter p;
  p.name = name;
  p.value = RandomMatrix(rows, cols, rng);
  p.ResetState();
  return p;
}

// Builds a scalar from an input node; the scalar is a fixed random linear
// functional of the op output so every output element carries gradient.
using Builder = std::function<Graph::NodeId(Graph&, Graph::NodeId)>;

double Evaluate(const Matrix& input, const Builder& build, const Matrix& probe) {
  Graph g(false);
  const Graph::NodeId out = build(g, g.Input(input));
  return (g.value(out).array() * probe.array()).sum();
}

void CheckInputGradient(const Matrix& input, const Builder& build,
                        double tolerance = 1e-6) {
  Rng rng(99);
  Matrix probe;
  {
    Graph g(false);
    const Graph::NodeId out = build(g, g.Input(input));
    probe = RandomMatrix(static_cast<int>(g.value(out).rows()),
                         static_cast<int>(g.value(out).cols()), rng);
  }
  Graph g(false);
  const Graph::NodeId x = g.Input(input, true);
  const Graph::NodeId out = build(g, x);
  // sum(out .* probe) through Element nodes.
  Graph::NodeId total = -1;
  for (int r = 0; r < probe.rows(); ++r) {
    for (int c = 0; c < probe.cols(); ++c) {
      const Graph::NodeId term =
          g.Scale(g.Element(out, r, c), probe(r, c));
      total = total < 0 ? term : g.Add(total, term);
    }
  }
  g.Backward(total);
  const Matrix analytic = g.grad(x);
  const double h = 1e-6;
  for (Eigen::Index i = 0; i < input.size(); ++i) {
    Matrix plus = input;
    Matrix minus = input;
    plus.data()[i] += h;
    minus.data()[i] -= h;
    const double numeric =
        (Evaluate(plus, build, probe) - Evaluate(minus, build, probe)) / (2 * h);
    EXPECT_NEAR(analytic.data()[i], numeric, tolerance) << "element " << i;
  }
}

TEST(GraphGradientTest, Elementwise) {
  Rng rng(1);
  const Matrix x = RandomMatrix(3, 4, rng);
  CheckInputGradient(x, [](Graph& g, Graph::NodeId n) { return g.Gelu(n); });
  CheckInputGradient(x, [](Graph& g, Graph::NodeId n) { return g.Tanh(n); });
  CheckInputGradient(x, [](Graph& g, Graph::NodeId n) { return g.Scale(n, -2.5); });
  CheckInputGradient(x, [](Graph& g, Graph::NodeId n) { return g.SoftmaxRows(n); });
  CheckInputGradient(x, [](Graph& g, Graph::NodeId n) { return g.Add(n, n); });
}

TEST(GraphGradientTest, Structural) {
  Rng rng(2);
  const Matrix x = RandomMatrix(3, 4, rng);
  CheckInputGradient(x, [](Graph& g, Graph::NodeId n) { return g.Row(n, 1); });
  CheckInputGradient(x,
                     [](Graph& g, Graph::NodeId n) { return g.SliceCols(n, 1, 2); });
  CheckInputGradient(x, [](Graph& g, Graph::NodeId n) {
    const Graph::NodeId parts[] = {g.SliceCols(n, 2, 2), n};
    return g.ConcatCols(parts);
  });
  CheckInputGradient(x, [](Graph& g, Graph::NodeId n) {
    return g.MatMulTransposed(n, g.Tanh(n));
  });
  CheckInputGradient(x, [&](Graph& g, Graph::NodeId n) {
    return g.MatMul(g.MatMulTransposed(n, n), n);
  });
  CheckInputGradient(x, [](Graph& g, Graph::NodeId n) {
    return g.SoftmaxCrossEntropy(g.Row(n, 2), 1);
  });
}

TEST(GraphGradientTest, ParameterizedOps) {
  Rng rng(3);
  Parameter w = MakeParam("w", 4, 5, rng);
  Parameter b = MakeParam("b", 1, 5, rng);
  Parameter gamma = MakeParam("gamma", 1, 4, rng);
  Parameter beta = MakeParam("beta", 1, 4, rng);
  const Matrix x = RandomMatrix(3, 4, rng);
  CheckInputGradient(x, [&](Graph& g, Graph::NodeId n) {
    return g.Linear(n, &w, &b);
  });
  CheckInputGradient(x, [&](Graph& g, Graph::NodeId n) {
    return g.LayerNorm(n, &gamma, &beta, 1e-12);
  });
}

TEST(GraphGradientTest, ParameterGradientsMatchFiniteDifferences) {
  Rng rng(4);
  Parameter w = MakeParam("w", 4, 3, rng);
  Parameter b = MakeParam("b", 1, 3, rng);
  Parameter gamma = MakeParam("gamma", 1, 3, rng);
  Parameter beta = MakeParam("beta", 1, 3, rng);
  Parameter table = MakeParam("table", 6, 4, rng);
  const std::vector<int> ids = {3, 0, 3, 5};
  auto loss = [&](bool backward) {
    Graph g;
    const Graph::NodeId e = g.Embedding(&table, ids);
    const Graph::NodeId h = g.LayerNorm(g.Linear(e, &w, &b), &gamma, &beta);
    const Graph::NodeId l = g.SoftmaxCrossEntropy(g.Row(g.Gelu(h), 2), 1);
    if (backward) g.Backward(l);
    return g.value(l)(0, 0);
  };
  for (Parameter* p : {&w, &b, &gamma, &beta, &table}) p->ZeroGrad();
  loss(true);
  const double h = 1e-6;
  for (Parameter* p : {&w, &b, &gamma, &beta, &table}) {
    const Matrix analytic = p->grad;
    for (Eigen::Index i = 0; i < p->value.size(); ++i) {
      const double saved = p->value.data()[i];
      p->value.data()[i] = saved + h;
      const double up = loss(false);
      p->value.data()[i] = saved - h;
      const double down = loss(false);
      p->value.data()[i] = saved;
      EXPECT_NEAR(analytic.data()[i], (up - down) / (2 * h), 1e-6)
          << p->name << "[" << i << "]";
    }
  }
}

TEST(GraphGradientTest, WholeEncoderWithoutDropout) {
  EncoderConfig config;
  config.vocab_size = 12;
  config.hidden_size = 8;
  config.num_heads = 2;
  config.intermediate_size = 12;
  config.num_layers = 2;
  config.max_positions = 8;
  config.dropout = 0.0;
  config.initializer_range = 0.5;
  Rng rng(5);
  auto model = EncoderClassifier::Initialize(config, rng);
  ASSERT_TRUE(model.ok());
  const std::vector<int> ids = {2, 7, 9, 7, 3};
  auto loss = [&](bool backward) {
    Graph g;
    const Graph::NodeId l =
        g.SoftmaxCrossEntropy(model->Forward(g, ids, true, &rng), 0);
    if (backward) g.Backward(l);
    return g.value(l)(0, 0);
  };
  for (Parameter* p : model->parameters()) p->ZeroGrad();
  loss(true);
  const double h = 1e-6;
  for (Parameter* p : model->parameters()) {
    const Matrix analytic = p->grad;
    for (Eigen::Index i = 0; i < p->value.size(); i += 3) {
      const double saved = p->value.data()[i];
      p->value.data()[i] = saved + h;
      const double up = loss(false);
      p->value.data()[i] = saved - h;
      const double down = loss(false);
      p->value.data()[i] = saved;
      EXPECT_NEAR(analytic.data()[i], (up - down) / (2 * h), 2e-6)
          << p->name << "[" << i << "]";
    }
  }
}

TEST(GraphTest, DropoutIsIdentityAtZeroAndScalesKeptUnits) {
  Rng rng(6);
  Graph g;
  const Graph::NodeId x = g.Input(Matrix::Ones(50, 50));
  EXPECT_EQ(g.Dropout(x, 0.0, rng), x);
  const Matrix& dropped = g.value(g.Dropout(x, 0.25, rng));
  for (Eigen::Index i = 0; i < dropped.size(); ++i) {
    const double v = dropped.data()[i];
    EXPECT_TRUE(v == 0.0 || std::abs(v - 1.0 / 0.75) < 1e-12);
  }
  const double kept = (dropped.array() != 0.0).cast<double>().mean();
  EXPECT_NEAR(kept, 0.75, 0.05);
}

TEST(GraphTest, InferenceGraphLeavesParameterGradientsAlone) {
  Rng rng(7);
  Parameter w = MakeParam("w", 2, 2, rng);
  Parameter b = MakeParam("b", 1, 2, rng);
  w.ZeroGrad();
  Graph g(false);
  const Graph::NodeId x = g.Input(Matrix::Ones(1, 2), true);
  g.Backward(g.SoftmaxCrossEntropy(g.Linear(x, &w, &b), 0));
  EXPECT_EQ(w.grad.squaredNorm(), 0.0);
  EXPECT_GT(g.grad(x).squaredNorm(), 0.0);
}

}  // namespace
}  // namespace burnscreen::trainer
