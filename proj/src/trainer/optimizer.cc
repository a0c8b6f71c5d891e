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

#include "trainer/optimizer.h"

#include <algorithm>
#include <cmath>

namespace burnscreen::trainer {

double LinearScheduleRate(int step, int warmup_steps, int total_steps,
                          double peak) {
  if (step < warmup_steps) {
    return peak * static_cast<double>(step) / std::max(1, warmup_steps);
  }
  const double remaining = static_cast<double>(total_steps - step);
  return peak * std::max(0.0, remaining / std::max(1, total_steps - warmup_steps));
}

void AdamW::Step(std::span<Parameter* const> params, double learning_rate) {
  ++steps_;
  const double correction1 = 1.0 - std::pow(options_.beta1, steps_);
  const double correction2 = 1.0 - std::pow(options_.beta2, steps_);
  const double step_size = learning_rate / correction1;
  for (Parameter* p : params) {
    if (p->grad.size() != p->value.size()) continue;
    if (p->adam_m.size() != p->value.size()) p->ResetState();
    if (p->decay && options_.weight_decay > 0.0) {
      p->value *= 1.0 - learning_rate * options_.weight_decay;
    }
    p->adam_m = options_.beta1 * p->adam_m + (1.0 - options_.beta1) * p->grad;
    p->adam_v = options_.beta2 * p->adam_v +
                (1.0 - options_.beta2) * p->grad.cwiseProduct(p->grad);
    const double eps = options_.epsilon;
    p->value.array() -=
        step_size * p->adam_m.array() /
        ((p->adam_v.array() / correction2).sqrt() + eps);
  }
}

double ClipGradNorm(std::span<Parameter* const> params, double max_norm) {
  double squared = 0.0;
  for (const Parameter* p : params) {
    if (p->grad.size() == p->value.size()) squared += p->grad.squaredNorm();
  }
  const double norm = std::sqrt(squared);
  if (norm > max_norm && norm > 0.0) {
    const double factor = max_norm / (norm + 1e-6);
    for (Parameter* p : params) {
      if (p->grad.size() == p->value.size()) p->grad *= factor;
    }
  }
  return norm;
}

}  // namespace burnscreen::trainer
