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

#ifndef BURNSCREEN_TRAINER_OPTIMIZER_H_
#define BURNSCREEN_TRAINER_OPTIMIZER_H_

#include <span>

#include "trainer/graph.h"

namespace burnscreen::trainer {

struct AdamWOptions {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double weight_decay = 0.01;
};

// Linear warmup from 0 to the peak rate over `warmup_steps`, then linear
// decay to 0 at `total_steps`. `step` counts completed updates, so the first
// update uses LinearScheduleRate(0, ...).
double LinearScheduleRate(int step, int warmup_steps, int total_steps,
                          double peak);

// AdamW with decoupled weight decay; parameters with `decay` unset skip it.
class AdamW {
 public:
  explicit AdamW(AdamWOptions options) : options_(options) {}

  void Step(std::span<Parameter* const> params, double learning_rate);
  int steps() const { return steps_; }

 private:
  AdamWOptions options_;
  int steps_ = 0;
};

// Rescales all gradients so their joint L2 norm is at most `max_norm`.
// Returns the norm before clipping.
double ClipGradNorm(std::span<Parameter* const> params, double max_norm);

}  // namespace burnscreen::trainer

#endif  // BURNSCREEN_TRAINER_OPTIMIZER_H_
