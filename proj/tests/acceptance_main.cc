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

// End-to-end acceptance checks. Prints one PASS or FAIL line per criterion
// and exits non-zero when any criterion fails.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cli/commands.h"
#include "common/io.h"
#include "common/random.h"
#include "common/strings.h"
#include "corpus/augmentation.h"
#include "corpus/builder.h"
#include "corpus/cleaning.h"
#include "corpus/expression_table.h"
#include "evaluator/metrics.h"
#include "evaluator/survey.h"
#include "evaluator/test_set.h"
#include "explainer/integrated_gradients.h"
#include "explainer/packet.h"
#include "httplib.h"
#include "olbi/cutoff.h"
#include "service/server.h"
#include "trainer/encoder.h"
#include "trainer/train.h"

namespace burnscreen {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

const fs::path kDataDir = BURNSCREEN_DATA_DIR;

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

// Thresholds restated in hundredths so the oracle compares integers.
Label OracleLabel(int exhaustion_cents, int disengagement_cents, int total,
                  olbi::CutoffName rule) {
  auto both = [&](int e, int d) {
    return exhaustion_cents >= e && disengagement_cents >= d ? Label::kBurnout
                                                             : Label::kNoBurnout;
  };
  switch (rule) {
    case olbi::CutoffName::kCutoff1:
      return both(225, 210);
    case olbi::CutoffName::kCutoff2Working:
      return both(285, 260);
    case olbi::CutoffName::kCutoff2Clinical:
      return both(313, 272);
    case olbi::CutoffName::kCutoff3Total:
      return total >= 35 ? Label::kBurnout : Label::kNoBurnout;
  }
  return Label::kNoBurnout;
}

Outcome OlbiGrid() {
  const auto start = std::chrono::steady_clock::now();
  long checked = 0;
  long mismatches = 0;
  for (olbi::CutoffName name : olbi::kAllCutoffs) {
    const olbi::CutoffRule rule = olbi::CutoffRule::Get(name);
    for (int e = 100; e <= 400; e += 5) {
      for (int d = 100; d <= 400; d += 5) {
        for (int total = olbi::kMinTotal; total <= olbi::kMaxTotal; ++total) {
          const olbi::OlbiScore score{e / 100.0, d / 100.0, total};
          if (olbi::Classify(score, rule) != OracleLabel(e, d, total, name)) {
            ++mismatches;
          }
          ++checked;
        }
      }
    }
  }
  const double seconds = Seconds(start);
  return {mismatches == 0 && seconds < 5.0,
          fmt::format("{} grid points, {} disagreements, {:.2f} s", checked,
                      mismatches, seconds)};
}

Outcome Nesting() {
  Rng rng(2024);
  const auto c1 = olbi::CutoffRule::Get(olbi::CutoffName::kCutoff1);
  const auto c2w = olbi::CutoffRule::Get(olbi::CutoffName::kCutoff2Working);
  const auto c2c = olbi::CutoffRule::Get(olbi::CutoffName::kCutoff2Clinical);
  int violations = 0;
  for (int i = 0; i < 10000; ++i) {
    const olbi::OlbiScore score{1.0 + 3.0 * rng.Uniform01(), 1.0 + 3.0 * rng.Uniform01(),
                                olbi::kMinTotal + static_cast<int>(rng.UniformInt(49))};
    const bool clinical = olbi::Classify(score, c2c) == Label::kBurnout;
    const bool working = olbi::Classify(score, c2w) == Label::kBurnout;
    const bool first = olbi::Classify(score, c1) == Label::kBurnout;
    if ((clinical && !working) || (working && !first)) ++violations;
  }
  return {violations == 0, fmt::format("10000 random scores, {} violations", violations)};
}

Outcome MetricsOracle() {
  Rng rng(77);
  int mismatches = 0;
  for (int instance = 0; instance < 20; ++instance) {
    const int n = 1 + static_cast<int>(rng.UniformInt(1000));
    std::vector<Label> predicted(n), truth(n);
    int tp = 0, fp = 0, fn = 0, tn = 0;
    for (int i = 0; i < n; ++i) {
      predicted[i] = rng.UniformInt(2) ? Label::kBurnout : Label::kNoBurnout;
      truth[i] = rng.UniformInt(2) ? Label::kBurnout : Label::kNoBurnout;
      const bool p = predicted[i] == Label::kBurnout;
      const bool t = truth[i] == Label::kBurnout;
      tp += p && t;
      fp += p && !t;
      fn += !p && t;
      tn += !p && !t;
    }
    auto m = evaluator::ComputeMetrics(predicted, truth);
    const double f1 = 2.0 * tp + fp + fn == 0 ? 0.0 : 2.0 * tp / (2.0 * tp + fp + fn);
    if (!m.ok() || m->tp != tp || m->fp != fp || m->fn != fn || m->tn != tn ||
        std::abs(m->f1 - f1) > 1e-12) {
      ++mismatches;
    }
  }
  std::vector<Label> predicted, truth;
  auto add = [&](int count, Label p, Label t) {
    predicted.insert(predicted.end(), count, p);
    truth.insert(truth.end(), count, t);
  };
  add(2, Label::kBurnout, Label::kBurnout);
  add(1, Label::kBurnout, Label::kNoBurnout);
  add(2, Label::kNoBurnout, Label::kBurnout);
  add(12, Label::kNoBurnout, Label::kNoBurnout);
  auto fixture = evaluator::ComputeMetrics(predicted, truth);
  const double f1 = fixture.ok() ? fixture->f1 : -1.0;
  return {mismatches == 0 && std::abs(f1 - 0.5714) <= 1e-4,
          fmt::format("20 random instances, {} mismatches; fixture F1 {:.4f}",
                      mismatches, f1)};
}

std::vector<std::string> Canonical(std::span<const corpus::TextSample> samples) {
  std::vector<std::string> lines;
  for (const auto& s : samples) lines.push_back(corpus::SampleToJson(s).dump());
  std::sort(lines.begin(), lines.end());
  return lines;
}

Outcome CorpusPipeline(const corpus::Dataset& v2) {
  auto records = corpus::LoadExpressionTable(kDataDir / "demo/expressions.tsv");
  if (!records.ok()) return {false, std::string(records.status().message())};
  auto v1 = corpus::BuildV1(*records);
  if (!v1.ok()) return {false, std::string(v1.status().message())};
  const LabelCounts counts = v1->Counts();

  // Injected defects on top of an already clean sample of generated text.
  std::vector<corpus::TextSample> clean(v2.samples.begin(), v2.samples.begin() + 200);
  std::vector<corpus::TextSample> dirty = clean;
  int injected = 0;
  for (int i = 0; i < 20; ++i) {
    corpus::TextSample truncated = clean[i];
    truncated.text = truncated.text.substr(0, truncated.text.size() / 2);
    while (!truncated.text.empty() &&
           std::string(".!? ").find(truncated.text.back()) != std::string::npos) {
      truncated.text.pop_back();
    }
    dirty.push_back(truncated);
    dirty.push_back(clean[50 + i]);
    corpus::TextSample single = clean[i];
    single.text = fmt::format("Erschöpft{}.", i);
    dirty.push_back(single);
    injected += 3;
  }
  Rng shuffle(9);
  shuffle.Shuffle(dirty);
  const auto kept = corpus::CleanSamples(dirty);
  const int removed = static_cast<int>(dirty.size() - kept.size());
  // Exactly the originals survive, so every defect was removed.
  const bool clean_ok = Canonical(kept) == Canonical(clean);

  int split_failures = 0;
  const std::vector<std::string> all = Canonical(v2.samples);
  for (uint64_t seed = 0; seed < 100; ++seed) {
    auto a = corpus::Split(v2, 0.8, seed);
    auto b = corpus::Split(v2, 0.8, seed);
    if (!a.ok() || !b.ok()) {
      ++split_failures;
      continue;
    }
    std::vector<corpus::TextSample> joined = a->train.samples;
    joined.insert(joined.end(), a->eval.samples.begin(), a->eval.samples.end());
    const bool same = a->train.samples == b->train.samples &&
                      a->eval.samples == b->eval.samples;
    if (!same || Canonical(joined) != all) ++split_failures;
  }
  return {counts.burnout == counts.no_burnout && counts.burnout > 0 && clean_ok &&
              removed == injected && split_failures == 0,
          fmt::format("v1 {}/{}; {} injected defects, {} removed, originals {}; "
                      "100 seeded splits, {} not deterministic exact partitions",
                      counts.burnout, counts.no_burnout, injected, removed,
                      clean_ok ? "intact" : "altered", split_failures)};
}

Outcome PromptFidelity() {
  auto records = corpus::LoadExpressionTable(kDataDir / "demo/expressions.tsv");
  if (!records.ok()) return {false, std::string(records.status().message())};
  auto v1 = corpus::BuildV1(*records);
  std::vector<std::string> expressions = corpus::UniqueExpressions(*v1, Label::kBurnout);
  expressions.resize(20);
  const auto jobs = corpus::MakePrompts(expressions, Label::kBurnout, 20);
  if (jobs.size() != 1) return {false, fmt::format("{} jobs for 20 expressions", jobs.size())};
  const std::string& prompt = jobs[0].prompt;
  const std::string prefix =
      "Generate 10 sentences each in German for the following expressions. "
      "The sentences should represent the wording of a person being in this "
      "kind of mental state:";
  int found = 0;
  for (const auto& e : expressions) found += prompt.find(e) != std::string::npos;
  return {prompt.rfind(prefix, 0) == 0 && found == 20,
          fmt::format("template prefix {}, {}/20 expressions contained",
                      prompt.rfind(prefix, 0) == 0 ? "verbatim" : "missing", found)};
}

Outcome VocabularyExtension() {
  trainer::TrainConfig config;
  config.base_vocab = (kDataDir / "base_vocab.txt").string();
  auto base = trainer::LoadBaseModel(config);
  if (!base.ok()) return {false, std::string(base.status().message())};
  const std::vector<std::string> terms = {"Erschöpfung", "Zynismus", "Tinnitus",
                                          "Schlafstörungen", "Antriebslosigkeit",
                                          "ich", "und"};
  int novel = 0;
  for (const auto& term : terms) novel += !base->tokenizer.Contains(term);
  Rng rng(1);
  auto added = trainer::ExtendVocabulary(base->tokenizer, base->model, terms, rng);
  int single = 0;
  for (const auto& term : terms) {
    const auto pieces = base->tokenizer.Tokenize(term);
    single += pieces.size() == 1 && pieces[0] == term;
  }
  auto again = trainer::ExtendVocabulary(base->tokenizer, base->model, terms, rng);
  const bool pass = added.ok() && again.ok() && novel == 5 && *added == novel &&
                    single == static_cast<int>(terms.size()) && *again == 0;
  return {pass, fmt::format("k={} novel words, added {}, {}/{} single tokens, re-run added {}",
                            novel, added.ok() ? *added : -1, single, terms.size(),
                            again.ok() ? *again : -1)};
}

cli::CommandContext Context(const fs::path& work, std::ostream& out, std::ostream& err) {
  cli::PipelineConfig config;
  config.data_dir = kDataDir;
  config.work_dir = work;
  cli::ResolveDefaultDirectories(config);
  return {config, &out, &err};
}

fs::path SeedModelDir(const cli::CommandContext& ctx, uint64_t seed) {
  return ctx.config.work_dir / fmt::format("v2_seed{}", seed);
}

Outcome TrainingBand(const cli::CommandContext& ctx) {
  auto v2 = corpus::LoadDataset(corpus::DatasetName::kV2,
                                ctx.config.DatasetsDir() / "v2.jsonl");
  if (!v2.ok()) return {false, std::string(v2.status().message())};
  const LabelCounts counts = v2->Counts();
  int passing = 0;
  double slowest = 0.0;
  std::vector<std::string> f1s;
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    const auto start = std::chrono::steady_clock::now();
    cli::TrainOptions options;
    options.seed = seed;
    const absl::Status status = cli::Train(ctx, "v2", options);
    const double seconds = Seconds(start);
    slowest = std::max(slowest, seconds);
    auto repeats = io::ReadJson(ctx.config.model_dir / "v2" / "repeats.json");
    // Each seed's model is kept for the attribution check.
    std::error_code ec;
    fs::copy(ctx.config.model_dir / "v2", SeedModelDir(ctx, seed),
             fs::copy_options::recursive | fs::copy_options::overwrite_existing, ec);
    if (!status.ok() || !repeats.ok()) {
      f1s.push_back("error");
      continue;
    }
    const double f1 = (*repeats)["f1_mean"];
    f1s.push_back(fmt::format("{:.3f}", f1));
    if (f1 >= 0.80 && seconds <= 15 * 60) ++passing;
  }
  return {counts.burnout >= 400 && counts.no_burnout >= 400 && passing >= 4,
          fmt::format("corpus {}/{}; eval F1 by seed [{}]; {}/5 runs >= 0.80; "
                      "slowest run {:.1f} s",
                      counts.burnout, counts.no_burnout, fmt::join(f1s, ", "), passing,
                      slowest)};
}

struct SuiteResult {
  int complete = 0;
  double worst_excess = 0.0;
  int refined_points = 0;
  double baseline_max = 0.0;
  bool ok = true;
};

// Plain 32-point quadrature over the fixture suite, then the default
// refining run for comparison.
SuiteResult RunSuite(const trainer::ClassifierArtifact& artifact,
                     const std::vector<std::string>& suite) {
  SuiteResult result;
  explainer::AttributionOptions fixed;
  fixed.steps = 32;
  fixed.refine = false;
  for (const std::string& text : suite) {
    auto a = explainer::Attribute(artifact, text, fixed);
    auto refined = explainer::Attribute(artifact, text);
    if (!a.ok() || !refined.ok()) {
      result.ok = false;
      return result;
    }
    result.complete += explainer::WithinCompletenessTolerance(a->residual, a->delta());
    result.worst_excess = std::max(result.worst_excess,
                                   a->residual - (0.05 * std::abs(a->delta()) + 0.01));
    result.refined_points = std::max(result.refined_points, refined->steps);
  }
  // The baseline itself must receive no attribution.
  const auto encoding = artifact.tokenizer.Encode(suite[0], 128);
  const auto baseline = explainer::BaselineIds(artifact.tokenizer, encoding.ids);
  auto zero = explainer::AttributeIds(artifact.tokenizer, artifact.model, baseline,
                                      Label::kBurnout, fixed);
  if (!zero.ok()) {
    result.ok = false;
    return result;
  }
  for (const auto& t : zero->tokens) {
    result.baseline_max = std::max(result.baseline_max, std::abs(t.score));
  }
  return result;
}

Outcome AttributionCompleteness(const cli::CommandContext& ctx) {
  auto records = evaluator::LoadSurveyRecords(kDataDir / "demo/survey_fixture.jsonl");
  if (!records.ok()) return {false, std::string(records.status().message())};
  auto test_set = evaluator::AssembleTestSet(*records, olbi::DefaultInventory(),
                                             olbi::ReportingCutoffs());
  if (!test_set.ok()) return {false, std::string(test_set.status().message())};
  // The first ten survey answers form the fixture suite.
  std::vector<std::string> suite;
  for (int i = 0; i < 10; ++i) suite.push_back(test_set->texts[i].text);

  // Seed 1 is the reference model; the other seeds are reported alongside.
  bool pass = false;
  std::vector<std::string> parts;
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    auto artifact = trainer::LoadArtifact(SeedModelDir(ctx, seed));
    if (!artifact.ok()) return {false, std::string(artifact.status().message())};
    const SuiteResult r = RunSuite(*artifact, suite);
    if (!r.ok) return {false, "attribution failed"};
    if (seed == 1) {
      pass = r.complete == 10 && r.baseline_max < 1e-9;
      parts.push_back(fmt::format(
          "seed 1 model: {}/10 within tolerance at 32 points (worst excess {:+.4f}), "
          "refinement needs up to {} points, baseline max |score| {:.1e}",
          r.complete, r.worst_excess, r.refined_points, r.baseline_max));
    } else {
      parts.push_back(fmt::format("seed {} {}/10", seed, r.complete));
    }
  }
  return {pass, fmt::format("{}", fmt::join(parts, "; "))};
}

Outcome ReportShapes(const cli::CommandContext& ctx) {
  for (const char* dataset : {"online", "combined"}) {
    absl::Status built = cli::BuildDataset(ctx, dataset, cli::LlmChoice::kRecorded, 0);
    if (!built.ok()) return {false, std::string(built.message())};
  }
  for (const char* dataset : {"online", "v1", "combined"}) {
    cli::TrainOptions options;
    options.seed = 1;
    absl::Status trained = cli::Train(ctx, dataset, options);
    if (!trained.ok()) return {false, std::string(trained.message())};
  }
  const absl::Status status = cli::Evaluate(ctx, olbi::ReportingCutoffs(), std::nullopt);
  auto table4 = io::ReadJson(ctx.config.ReportsDir() / "table4.json");
  auto table3 = io::ReadJson(ctx.config.ReportsDir() / "table3.json");
  if (!status.ok() || !table4.ok() || !table3.ok()) {
    return {false, std::string(status.message())};
  }
  int rows = 0, filled = 0, columns = 0;
  for (const auto& row : (*table4)["rows"]) {
    ++rows;
    columns = std::max(columns, static_cast<int>(row["cells"].size()));
    for (const auto& cell : row["cells"]) filled += !cell["f1"].is_null();
  }
  std::vector<std::string> distribution;
  for (const auto& row : (*table3)["rows"]) {
    distribution.push_back(fmt::format("({},{})", row["burnout"].get<int>(),
                                       row["no_burnout"].get<int>()));
  }
  const std::string reads = fmt::format("{}", fmt::join(distribution, "/"));
  return {rows == 4 && columns == 3 && filled == 12 && reads == "(4,13)/(2,15)/(7,10)",
          fmt::format("model matrix {}x{} with {} F1 cells; distribution {}", rows,
                      columns, filled, reads)};
}

std::string RunAgreementOrder(const std::vector<explainer::AttributionPacket>& packets,
                              const std::vector<std::vector<bool>>& votes,
                              const std::vector<std::string>& tokens,
                              std::vector<std::pair<int, int>> order, const fs::path& root,
                              std::vector<double>* proportions) {
  fs::remove_all(root);
  fs::create_directories(root / "models");
  if (!explainer::WritePackets(packets, root / "store" / "packets.jsonl").ok()) return "";
  service::ServiceConfig config;
  config.port = 0;
  config.store_dir = root / "store";
  config.model_dir = root / "models";
  config.reviewer_tokens = tokens;
  auto service = service::ReviewService::Create(config, [] { return std::string("T"); });
  if (!service.ok()) return "";
  auto port = (*service)->Start();
  if (!port.ok()) return "";
  httplib::Client client("127.0.0.1", *port);
  for (const auto& [p, r] : order) {
    nlohmann::json body = {{"agree", votes[p][r]}};
    if (!votes[p][r]) body["reason"] = fmt::format("Grund {}", r);
    auto res = client.Post(("/packets/" + packets[p].id + "/verdicts").c_str(),
                           {{"X-Reviewer-Token", tokens[r]}}, body.dump(),
                           "application/json");
    if (!res || res->status != 201) return "";
  }
  auto report = client.Get("/reports/agreement");
  if (!report || report->status != 200) return "";
  const nlohmann::json json = nlohmann::json::parse(report->body);
  proportions->clear();
  for (const auto& row : json["rows"]) {
    proportions->push_back(row["agreement"].is_null() ? -1.0
                                                      : row["agreement"].get<double>());
  }
  (*service)->Stop();
  return report->body;
}

Outcome AgreementMath(const cli::CommandContext& ctx, const fs::path& root) {
  auto packets = explainer::LoadPackets(ctx.config.store_dir / "packets.jsonl");
  if (!packets.ok() || packets->size() < 4) return {false, "explain produced too few packets"};
  packets->resize(4);
  const std::vector<std::string> tokens = {"r1", "r2", "r3", "r4", "r5"};
  const std::vector<std::vector<bool>> votes = {{true, true, true, true, true},
                                                {true, true, false, true, true},
                                                {true, true, true, true, true},
                                                {false, false, false, false, false}};
  std::vector<std::pair<int, int>> order;
  for (int p = 0; p < 4; ++p) {
    for (int r = 0; r < 5; ++r) order.push_back({p, r});
  }
  Rng rng(11);
  std::string reference;
  std::vector<double> proportions;
  int orders = 0, differing = 0;
  for (int trial = 0; trial < 5; ++trial) {
    if (trial > 0) rng.Shuffle(order);
    std::vector<double> got;
    const std::string body = RunAgreementOrder(*packets, votes, tokens, order, root, &got);
    if (body.empty()) return {false, "scripted HTTP session failed"};
    if (trial == 0) {
      reference = body;
      proportions = got;
    }
    differing += body != reference;
    ++orders;
  }
  fs::remove_all(root);
  const std::vector<double> expected = {1.0, 0.8, 1.0, 0.0};
  std::vector<std::string> shown;
  for (double p : proportions) shown.push_back(fmt::format("{:.0f}%", 100 * p));
  return {proportions == expected && differing == 0,
          fmt::format("proportions {{{}}} over HTTP; {} arrival orders, {} differing reports",
                      fmt::join(shown, ", "), orders, differing)};
}

}  // namespace
}  // namespace burnscreen

int main() {
  using namespace burnscreen;
  namespace fs = std::filesystem;
  const fs::path work =
      fs::temp_directory_path() / fmt::format("burnscreen_acceptance_{}", ::getpid());
  fs::remove_all(work);
  std::ostringstream out, err;
  const cli::CommandContext ctx = Context(work, out, err);

  // The pipeline stages share one work directory, built with recorded
  // completions.
  absl::Status setup = cli::BuildDataset(ctx, "v1", cli::LlmChoice::kRecorded, 0);
  if (setup.ok()) setup = cli::BuildDataset(ctx, "v2", cli::LlmChoice::kRecorded, 0);
  corpus::Dataset v2;
  if (setup.ok()) {
    auto loaded = corpus::LoadDataset(corpus::DatasetName::kV2, ctx.config.DatasetsDir() / "v2.jsonl");
    setup = loaded.status();
    if (loaded.ok()) v2 = *std::move(loaded);
  }
  if (!setup.ok()) std::cerr << "setup failed: " << setup.message() << "\n";

  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"olbi-oracle", OlbiGrid},
      {"cutoff-nesting", Nesting},
      {"metrics-oracle", MetricsOracle},
      {"corpus-pipeline", [&] { return CorpusPipeline(v2); }},
      {"prompt-fidelity", PromptFidelity},
      {"vocabulary-extension", VocabularyExtension},
      {"training-band", [&] { return TrainingBand(ctx); }},
      {"attribution-completeness", [&] { return AttributionCompleteness(ctx); }},
      {"report-shapes", [&] { return ReportShapes(ctx); }},
      {"agreement-math",
       [&] {
         cli::ExplainOptions options;
         options.sample = 8;
         options.seed = 1;
         const absl::Status explained =
             cli::Explain(ctx, olbi::ReportingCutoffs(), std::nullopt, options);
         if (!explained.ok()) return Outcome{false, std::string(explained.message())};
         return AgreementMath(ctx, work / "agreement");
       }},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome outcome = setup.ok() ? check() : Outcome{false, "pipeline setup failed"};
    failures += !outcome.pass;
    std::cout << (outcome.pass ? "PASS " : "FAIL ") << name << ": " << outcome.detail
              << std::endl;
  }
  fs::remove_all(work);
  return failures == 0 ? 0 : 1;
}
