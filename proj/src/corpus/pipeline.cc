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

#include "corpus/pipeline.h"

#include "corpus/builder.h"

namespace burnscreen::corpus {

absl::StatusOr<V2Build> BuildV2(const Dataset& v1, TextGenerationClient& client,
                                const AugmentationOptions& options,
                                int batch_size) {
  if (v1.samples.empty()) {
    return absl::InvalidArgumentError("cannot augment an empty dataset");
  }
  if (batch_size < 1) {
    return absl::InvalidArgumentError("batch size must be positive");
  }
  V2Build build;
  const std::vector<std::string> burnout =
      UniqueExpressions(v1, Label::kBurnout);
  const std::vector<std::string> control =
      UniqueExpressions(v1, Label::kNoBurnout);
  build.jobs = MakePrompts(burnout, Label::kBurnout, batch_size);
  const std::vector<AugmentationJob> control_jobs =
      MakePrompts(control, Label::kNoBurnout, batch_size,
                  static_cast<int>(build.jobs.size()));
  build.jobs.insert(build.jobs.end(), control_jobs.begin(), control_jobs.end());
  build.augmentation = RunAugmentation(build.jobs, client, options);
  build.cleaning = CleanSamplesWithReport(build.augmentation.candidates);
  build.dataset.name = DatasetName::kV2;
  build.dataset.samples = build.cleaning.kept;
  return build;
}

}  // namespace burnscreen::corpus
