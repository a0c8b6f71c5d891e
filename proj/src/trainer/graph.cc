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

#include <cmath>
#include <numbers>
#include <utility>

namespace burnscreen::trainer {

void Parameter::ResetState() {
  grad = Matrix::Zero(value.rows(), value.cols());
  adam_m = Matrix::Zero(value.rows(), value.cols());
  adam_v = Matrix::Zero(value.rows(), value.cols());
}

Graph::NodeId Graph::Push(
    Matrix value, bool requires_grad,
    std::function<void(Graph&, const Matrix&)> backward) {
  Node node;
  node.value = std::move(value);
  node.requires_grad = requires_grad;
  if (requires_grad) node.backward = std::move(backward);
  nodes_.push_back(std::move(node));
  return static_cast<NodeId>(nodes_.size() - 1);
}

void Graph::Accumulate(NodeId id, const Matrix& g) {
  Node& node = nodes_[id];
  if (!node.requires_grad) return;
  if (node.grad.size() == 0) {
    node.grad = g;
  } else {
    node.grad += g;
  }
}

void Graph::AccumulateParameter(Parameter* p, const Matrix& g) {
  if (!parameter_grads_) return;
  if (p->grad.rows() != p->value.rows() || p->grad.cols() != p->value.cols()) {
    p->ZeroGrad();
  }
  p->grad += g;
}

Graph::NodeId Graph::Input(Matrix value, bool requires_grad) {
  return Push(std::move(value), requires_grad,
              [](Graph&, const Matrix&) {});
}

Graph::NodeId Graph::Embedding(Parameter* table, std::span<const int> ids) {
  Matrix out(static_cast<Eigen::Index>(ids.size()), table->value.cols());
  for (size_t i = 0; i < ids.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = table->value.row(ids[i]);
  }
  std::vector<int> rows(ids.begin(), ids.end());
  return Push(std::move(out), true,
              [table, rows = std::move(rows)](Graph& g, const Matrix& grad) {
                if (!g.parameter_grads_) return;
                Matrix& pg = table->grad;
                if (pg.rows() != table->value.rows() ||
                    pg.cols() != table->value.cols()) {
                  table->ZeroGrad();
                }
                for (size_t i = 0; i < rows.size(); ++i) {
                  pg.row(rows[i]) += grad.row(static_cast<Eigen::Index>(i));
                }
              });
}

Graph::NodeId Graph::ParameterValue(Parameter* p) {
  return Push(p->value, true, [p](Graph& g, const Matrix& grad) {
    g.AccumulateParameter(p, grad);
  });
}

Graph::NodeId Graph::Linear(NodeId x, Parameter* w, Parameter* b) {
  Matrix out = value(x) * w->value;
  out.rowwise() += b->value.row(0);
  return Push(std::move(out), true,
              [x, w, b](Graph& g, const Matrix& grad) {
                const Matrix& in = g.value(x);
                g.AccumulateParameter(w, in.transpose() * grad);
                g.AccumulateParameter(b, grad.colwise().sum());
                if (g.NeedsGrad(x)) g.Accumulate(x, grad * w->value.transpose());
              });
}

Graph::NodeId Graph::Add(NodeId a, NodeId b) {
  return Push(value(a) + value(b), NeedsGrad(a) || NeedsGrad(b),
              [a, b](Graph& g, const Matrix& grad) {
                g.Accumulate(a, grad);
                g.Accumulate(b, grad);
              });
}

Graph::NodeId Graph::MatMul(NodeId a, NodeId b) {
  return Push(value(a) * value(b), NeedsGrad(a) || NeedsGrad(b),
              [a, b](Graph& g, const Matrix& grad) {
                if (g.NeedsGrad(a)) g.Accumulate(a, grad * g.value(b).transpose());
                if (g.NeedsGrad(b)) g.Accumulate(b, g.value(a).transpose() * grad);
              });
}

Graph::NodeId Graph::MatMulTransposed(NodeId a, NodeId b) {
  return Push(value(a) * value(b).transpose(), NeedsGrad(a) || NeedsGrad(b),
              [a, b](Graph& g, const Matrix& grad) {
                if (g.NeedsGrad(a)) g.Accumulate(a, grad * g.value(b));
                if (g.NeedsGrad(b)) {
                  g.Accumulate(b, grad.transpose() * g.value(a));
                }
              });
}

Graph::NodeId Graph::Scale(NodeId a, double factor) {
  return Push(value(a) * factor, NeedsGrad(a),
              [a, factor](Graph& g, const Matrix& grad) {
                g.Accumulate(a, grad * factor);
              });
}

Graph::NodeId Graph::SoftmaxRows(NodeId a) {
  const Matrix& in = value(a);
  Matrix out(in.rows(), in.cols());
  for (Eigen::Index r = 0; r < in.rows(); ++r) {
    const double max = in.row(r).maxCoeff();
    out.row(r) = (in.row(r).array() - max).exp();
    out.row(r) /= out.row(r).sum();
  }
  const NodeId self = static_cast<NodeId>(nodes_.size());
  return Push(std::move(out), NeedsGrad(a),
              [a, self](Graph& g, const Matrix& grad) {
                const Matrix& y = g.value(self);
                const Eigen::VectorXd dot =
                    (grad.array() * y.array()).rowwise().sum();
                Matrix dx = y.array() * (grad.colwise() - dot).array();
                g.Accumulate(a, dx);
              });
}

Graph::NodeId Graph::LayerNorm(NodeId x, Parameter* gamma, Parameter* beta,
                               double eps) {
  const Matrix& in = value(x);
  const Eigen::Index n = in.rows();
  const Eigen::Index d = in.cols();
  Matrix xhat(n, d);
  Eigen::VectorXd inv_std(n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const double mean = in.row(r).mean();
    const double var = (in.row(r).array() - mean).square().mean();
    inv_std(r) = 1.0 / std::sqrt(var + eps);
    xhat.row(r) = (in.row(r).array() - mean) * inv_std(r);
  }
  Matrix out = xhat.array().rowwise() * gamma->value.row(0).array();
  out.rowwise() += beta->value.row(0);
  return Push(
      std::move(out), true,
      [x, gamma, beta, xhat = std::move(xhat), inv_std = std::move(inv_std)](
          Graph& g, const Matrix& grad) {
        g.AccumulateParameter(
            gamma, (grad.array() * xhat.array()).colwise().sum().matrix());
        g.AccumulateParameter(beta, grad.colwise().sum());
        if (!g.NeedsGrad(x)) return;
        const Matrix dxhat =
            grad.array().rowwise() * gamma->value.row(0).array();
        Matrix dx(dxhat.rows(), dxhat.cols());
        for (Eigen::Index r = 0; r < dxhat.rows(); ++r) {
          const double mean_d = dxhat.row(r).mean();
          const double mean_dx = dxhat.row(r).dot(xhat.row(r)) /
                                 static_cast<double>(dxhat.cols());
          dx.row(r) = inv_std(r) * (dxhat.row(r).array() - mean_d -
                                    xhat.row(r).array() * mean_dx);
        }
        g.Accumulate(x, dx);
      });
}

Graph::NodeId Graph::Gelu(NodeId x) {
  const Matrix& in = value(x);
  Matrix out = in.unaryExpr([](double v) {
    return 0.5 * v * (1.0 + std::erf(v * std::numbers::sqrt2 / 2.0));
  });
  return Push(std::move(out), NeedsGrad(x), [x](Graph& g, const Matrix& grad) {
    const Matrix d = g.value(x).unaryExpr([](double v) {
      const double cdf = 0.5 * (1.0 + std::erf(v * std::numbers::sqrt2 / 2.0));
      const double pdf =
          std::exp(-0.5 * v * v) * std::numbers::inv_sqrtpi / std::numbers::sqrt2;
      return cdf + v * pdf;
    });
    g.Accumulate(x, grad.cwiseProduct(d));
  });
}

Graph::NodeId Graph::Tanh(NodeId x) {
  const NodeId self = static_cast<NodeId>(nodes_.size());
  return Push(value(x).array().tanh().matrix(), NeedsGrad(x),
              [x, self](Graph& g, const Matrix& grad) {
                const Matrix& y = g.value(self);
                g.Accumulate(x, (grad.array() * (1.0 - y.array().square()))
                                    .matrix());
              });
}

Graph::NodeId Graph::Row(NodeId x, int row) {
  return Push(value(x).row(row), NeedsGrad(x),
              [x, row](Graph& g, const Matrix& grad) {
                Matrix full = Matrix::Zero(g.value(x).rows(), g.value(x).cols());
                full.row(row) = grad.row(0);
                g.Accumulate(x, full);
              });
}

Graph::NodeId Graph::SliceCols(NodeId x, int start, int count) {
  return Push(value(x).middleCols(start, count), NeedsGrad(x),
              [x, start, count](Graph& g, const Matrix& grad) {
                Matrix full = Matrix::Zero(g.value(x).rows(), g.value(x).cols());
                full.middleCols(start, count) = grad;
                g.Accumulate(x, full);
              });
}

Graph::NodeId Graph::ConcatCols(std::span<const NodeId> parts) {
  Eigen::Index cols = 0;
  bool needs = false;
  for (NodeId p : parts) {
    cols += value(p).cols();
    needs = needs || NeedsGrad(p);
  }
  Matrix out(value(parts[0]).rows(), cols);
  Eigen::Index offset = 0;
  for (NodeId p : parts) {
    out.middleCols(offset, value(p).cols()) = value(p);
    offset += value(p).cols();
  }
  std::vector<NodeId> ids(parts.begin(), parts.end());
  return Push(std::move(out), needs,
              [ids = std::move(ids)](Graph& g, const Matrix& grad) {
                Eigen::Index offset = 0;
                for (NodeId p : ids) {
                  const Eigen::Index c = g.value(p).cols();
                  if (g.NeedsGrad(p)) g.Accumulate(p, grad.middleCols(offset, c));
                  offset += c;
                }
              });
}

Graph::NodeId Graph::Dropout(NodeId x, double p, Rng& rng) {
  if (p <= 0.0) return x;
  const Matrix& in = value(x);
  Matrix mask(in.rows(), in.cols());
  const double keep_scale = 1.0 / (1.0 - p);
  for (Eigen::Index i = 0; i < mask.size(); ++i) {
    mask.data()[i] = rng.Uniform01() < p ? 0.0 : keep_scale;
  }
  Matrix out = in.cwiseProduct(mask);
  return Push(std::move(out), NeedsGrad(x),
              [x, mask = std::move(mask)](Graph& g, const Matrix& grad) {
                g.Accumulate(x, grad.cwiseProduct(mask));
              });
}

Graph::NodeId Graph::SoftmaxCrossEntropy(NodeId logits, int target) {
  const Matrix& in = value(logits);
  const double max = in.row(0).maxCoeff();
  const double log_sum = max + std::log((in.row(0).array() - max).exp().sum());
  Matrix out(1, 1);
  out(0, 0) = log_sum - in(0, target);
  return Push(std::move(out), NeedsGrad(logits),
              [logits, target, log_sum](Graph& g, const Matrix& grad) {
                Matrix d = (g.value(logits).array() - log_sum).exp().matrix();
                d(0, target) -= 1.0;
                g.Accumulate(logits, d * grad(0, 0));
              });
}

Graph::NodeId Graph::Element(NodeId x, int row, int col) {
  Matrix out(1, 1);
  out(0, 0) = value(x)(row, col);
  return Push(std::move(out), NeedsGrad(x),
              [x, row, col](Graph& g, const Matrix& grad) {
                Matrix full = Matrix::Zero(g.value(x).rows(), g.value(x).cols());
                full(row, col) = grad(0, 0);
                g.Accumulate(x, full);
              });
}

void Graph::Backward(NodeId target, double seed) {
  for (Node& node : nodes_) node.grad.resize(0, 0);
  Matrix start = Matrix::Constant(value(target).rows(), value(target).cols(), seed);
  nodes_[target].grad = std::move(start);
  for (NodeId id = target; id >= 0; --id) {
    Node& node = nodes_[id];
    if (!node.requires_grad || node.grad.size() == 0 || !node.backward) {
      continue;
    }
    node.backward(*this, node.grad);
  }
}

}  // namespace burnscreen::trainer
