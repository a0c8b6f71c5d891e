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

#ifndef BURNSCREEN_TOOLS_CLI_COMMANDS_H_
#define BURNSCREEN_TOOLS_CLI_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "cli/pipeline_config.h"
#include "olbi/cutoff.h"

namespace burnscreen::cli {

enum class LlmChoice { kHttp, kRecorded, kSynthetic };

struct CommandContext {
  PipelineConfig config;
  // Results go to `out`, progress and diagnostics to `err`.
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;
};

// Writes <work>/datasets/<name>.{jsonl,tsv} and <name>.manifest.json. v2
// also archives every completion and the quarantine; v2 needs v1 and
// combined needs online and v2 to have been built.
absl::Status BuildDataset(const CommandContext& ctx, const std::string& dataset,
                          LlmChoice llm, uint64_t llm_seed);

struct TrainOptions {
  uint64_t seed = 0;
  std::optional<int> epochs;
  // Extra runs with seeds seed+1, seed+2, ... summarized in repeats.json.
  int repeats = 1;
};

// Splits the built dataset, extends the vocabulary with the expression
// table's words, fine-tunes and saves the artifact to <models>/<dataset>.
absl::Status Train(const CommandContext& ctx, const std::string& dataset,
                   const TrainOptions& options);

// Cross-evaluates every artifact against the survey records. Reports are
// written even when models are missing; the status is then FailedPrecondition.
absl::Status Evaluate(const CommandContext& ctx,
                      const std::vector<olbi::CutoffRule>& rules,
                      const std::optional<std::filesystem::path>& surveys);

struct ExplainOptions {
  std::string model = "v2";
  // Empty means every test text.
  std::optional<int> sample;
  uint64_t seed = 0;
  int steps = 32;
};

// Writes packets.jsonl, HTML views and a manifest into the store directory.
absl::Status Explain(const CommandContext& ctx,
                     const std::vector<olbi::CutoffRule>& rules,
                     const std::optional<std::filesystem::path>& surveys,
                     const ExplainOptions& options);

// Prints OLBI scores and labels for each survey record as TSV.
absl::Status ScoreOlbi(const CommandContext& ctx,
                       const std::optional<std::filesystem::path>& surveys);

// Full command line, including serve. Returns the exit status.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace burnscreen::cli

#endif  // BURNSCREEN_TOOLS_CLI_COMMANDS_H_
