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

#ifndef BURNSCREEN_CORPUS_PIPELINE_H_
#define BURNSCREEN_CORPUS_PIPELINE_H_

#include <vector>

#include "absl/status/statusor.h"
#include "corpus/augmentation.h"
#include "corpus/cleaning.h"
#include "corpus/clients.h"
#include "corpus/dataset.h"

namespace burnscreen::corpus {

struct V2Build {
  Dataset dataset;
  std::vector<AugmentationJob> jobs;
  AugmentationResult augmentation;
  CleanReport cleaning;
};

// Prompts the client with the unique burnout expressions of `v1`, then the
// unique control expressions, and cleans what comes back. Generated
// sentences inherit the label of their batch. Failed jobs are reported in
// `augmentation.failures` rather than aborting the build.
absl::StatusOr<V2Build> BuildV2(const Dataset& v1, TextGenerationClient& client,
                                const AugmentationOptions& options = {},
                                int batch_size = kDefaultBatchSize);

}  // namespace burnscreen::corpus

#endif  // BURNSCREEN_CORPUS_PIPELINE_H_
