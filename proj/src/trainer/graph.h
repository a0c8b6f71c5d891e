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

#ifndef BURNSCREEN_TRAINER_GRAPH_H_
#define BURNSCREEN_TRAINER_GRAPH_H_

#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "common/random.h"

namespace burnscreen::trainer {

using Matrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// A trainable tensor with its gradient accumulator and AdamW moments.
struct Parameter {
  std::string name;
  Matrix value;
  Matrix grad;
  Matrix adam_m;
  Matrix adam_v;
  // Biases and LayerNorm parameters are excluded from weight decay.
  bool decay = true;

  void ZeroGrad() { grad.setZero(value.rows(), value.cols()); }
  // Resets gradient and optimizer state to match the current value shape.
  void ResetState();
};

// Tape for one forward pass. Nodes are recorded in creation order and
// Backward() walks them in reverse. A graph is single-use and not
// thread-safe; parameters are only read during the forward pass, so several
// graphs may run concurrently as long as none of them calls Backward().
class Graph {
 public:
  using NodeId = int;

  // With `parameter_grads` false, Backward() leaves Parameter::grad
  // untouched, which makes concurrent gradient passes over shared weights
  // safe.
  explicit Graph(bool parameter_grads = true)
      : parameter_grads_(parameter_grads) {}

  NodeId Input(Matrix value, bool requires_grad = false);
  // Rows of `table` selected by `ids`.
  NodeId Embedding(Parameter* table, std::span<const int> ids);
  NodeId ParameterValue(Parameter* p);
  // x * w + b, with w of shape (in, out) and b of shape (1, out).
  NodeId Linear(NodeId x, Parameter* w, Parameter* b);
  NodeId Add(NodeId a, NodeId b);
  NodeId MatMul(NodeId a, NodeId b);
  // a * b^T.
  NodeId MatMulTransposed(NodeId a, NodeId b);
  NodeId Scale(NodeId a, double factor);
  NodeId SoftmaxRows(NodeId a);
  NodeId LayerNorm(NodeId x, Parameter* gamma, Parameter* beta,
                   double eps = 1e-12);
  // Exact (erf) GELU.
  NodeId Gelu(NodeId x);
  NodeId Tanh(NodeId x);
  NodeId Row(NodeId x, int row);
  NodeId SliceCols(NodeId x, int start, int count);
  NodeId ConcatCols(std::span<const NodeId> parts);
  // Inverted dropout; identity when p == 0.
  NodeId Dropout(NodeId x, double p, Rng& rng);
  // Cross entropy of one row of logits against `target`; 1x1.
  NodeId SoftmaxCrossEntropy(NodeId logits, int target);
  // Single element as a 1x1 node.
  NodeId Element(NodeId x, int row, int col);

  const Matrix& value(NodeId id) const { return nodes_[id].value; }
  // Gradient of the last Backward() target with respect to node `id`.
  const Matrix& grad(NodeId id) const { return nodes_[id].grad; }
  size_t size() const { return nodes_.size(); }

  // Seeds d(target)/d(target) = seed and accumulates into every reachable
  // node gradient and every parameter's `grad`.
  void Backward(NodeId target, double seed = 1.0);

 private:
  struct Node {
    Matrix value;
    Matrix grad;
    bool requires_grad = false;
    std::function<void(Graph&, const Matrix&)> backward;
  };

  NodeId Push(Matrix value, bool requires_grad,
              std::function<void(Graph&, const Matrix&)> backward);
  bool NeedsGrad(NodeId id) const { return nodes_[id].requires_grad; }
  void Accumulate(NodeId id, const Matrix& g);

  void AccumulateParameter(Parameter* p, const Matrix& g);

  bool parameter_grads_;
  std::vector<Node> nodes_;
};

}  // namespace burnscreen::trainer

#endif  // BURNSCREEN_TRAINER_GRAPH_H_
