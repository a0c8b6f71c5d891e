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

#include "trainer/encoder.h"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <string>
#include <utility>

#include "common/io.h"
#include "common/status_macros.h"
#include "common/strings.h"

namespace burnscreen::trainer {

namespace {

constexpr char kWeightsMagic[4] = {'B', 'S', 'W', '1'};

Parameter MakeNormal(std::string name, int rows, int cols, double stddev,
                     Rng& rng) {
  Parameter p;
  p.name = std::move(name);
  p.value.resize(rows, cols);
  for (Eigen::Index i = 0; i < p.value.size(); ++i) {
    p.value.data()[i] = rng.Normal(0.0, stddev);
  }
  p.ResetState();
  return p;
}

Parameter MakeConstant(std::string name, int rows, int cols, double v) {
  Parameter p;
  p.name = std::move(name);
  p.value = Matrix::Constant(rows, cols, v);
  p.decay = false;
  p.ResetState();
  return p;
}

template <typename T>
void AppendRaw(std::string& out, const T& v) {
  out.append(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
bool ReadRaw(std::string_view& in, T& v) {
  if (in.size() < sizeof(T)) return false;
  std::memcpy(&v, in.data(), sizeof(T));
  in.remove_prefix(sizeof(T));
  return true;
}

}  // namespace

nlohmann::json EncoderConfigToJson(const EncoderConfig& config) {
  return {{"vocab_size", config.vocab_size},
          {"hidden_size", config.hidden_size},
          {"num_layers", config.num_layers},
          {"num_heads", config.num_heads},
          {"intermediate_size", config.intermediate_size},
          {"max_positions", config.max_positions},
          {"dropout", config.dropout},
          {"initializer_range", config.initializer_range},
          {"layer_norm_eps", config.layer_norm_eps},
          {"num_labels", config.num_labels}};
}

absl::StatusOr<EncoderConfig> EncoderConfigFromJson(
    const nlohmann::json& json) {
  EncoderConfig config;
  try {
    config.vocab_size = json.at("vocab_size").get<int>();
    config.hidden_size = json.at("hidden_size").get<int>();
    config.num_layers = json.at("num_layers").get<int>();
    config.num_heads = json.at("num_heads").get<int>();
    config.intermediate_size = json.at("intermediate_size").get<int>();
    config.max_positions = json.at("max_positions").get<int>();
    config.dropout = json.at("dropout").get<double>();
    config.initializer_range = json.at("initializer_range").get<double>();
    config.layer_norm_eps = json.at("layer_norm_eps").get<double>();
    config.num_labels = json.at("num_labels").get<int>();
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(StrCat("encoder config: ", e.what()));
  }
  BURNSCREEN_RETURN_IF_ERROR(ValidateEncoderConfig(config));
  return config;
}

absl::Status ValidateEncoderConfig(const EncoderConfig& config) {
  if (config.vocab_size < 6 || config.hidden_size < 1 ||
      config.num_layers < 0 || config.num_heads < 1 ||
      config.intermediate_size < 1 || config.max_positions < 3) {
    return absl::InvalidArgumentError("encoder config has invalid sizes");
  }
  if (config.hidden_size % config.num_heads != 0) {
    return absl::InvalidArgumentError(
        StrCat("hidden_size ", config.hidden_size,
               " is not divisible by num_heads ", config.num_heads));
  }
  if (config.dropout < 0.0 || config.dropout >= 1.0) {
    return absl::InvalidArgumentError("dropout must lie in [0, 1)");
  }
  if (config.num_labels != 2) {
    return absl::InvalidArgumentError("only binary classification is supported");
  }
  return absl::OkStatus();
}

absl::StatusOr<EncoderClassifier> EncoderClassifier::Initialize(
    const EncoderConfig& config, Rng& rng) {
  BURNSCREEN_RETURN_IF_ERROR(ValidateEncoderConfig(config));
  const int h = config.hidden_size;
  const double sd = config.initializer_range;
  EncoderClassifier model;
  model.config_ = config;
  model.word_embeddings_ =
      MakeNormal("embeddings.word", config.vocab_size, h, sd, rng);
  model.position_embeddings_ =
      MakeNormal("embeddings.position", config.max_positions, h, sd, rng);
  model.embedding_norm_gamma_ = MakeConstant("embeddings.norm.gamma", 1, h, 1);
  model.embedding_norm_beta_ = MakeConstant("embeddings.norm.beta", 1, h, 0);
  for (int l = 0; l < config.num_layers; ++l) {
    const std::string prefix = StrCat("layer", l, ".");
    Layer layer;
    auto weight = [&](const char* name, int rows, int cols) {
      return MakeNormal(prefix + name + ".weight", rows, cols, sd, rng);
    };
    auto bias = [&](const char* name, int cols) {
      return MakeConstant(prefix + name + ".bias", 1, cols, 0.0);
    };
    layer.query_w = weight("query", h, h);
    layer.query_b = bias("query", h);
    layer.key_w = weight("key", h, h);
    layer.key_b = bias("key", h);
    layer.value_w = weight("value", h, h);
    layer.value_b = bias("value", h);
    layer.attention_out_w = weight("attention_out", h, h);
    layer.attention_out_b = bias("attention_out", h);
    layer.attention_norm_gamma =
        MakeConstant(prefix + "attention_norm.gamma", 1, h, 1.0);
    layer.attention_norm_beta =
        MakeConstant(prefix + "attention_norm.beta", 1, h, 0.0);
    layer.intermediate_w = weight("intermediate", h, config.intermediate_size);
    layer.intermediate_b = bias("intermediate", config.intermediate_size);
    layer.output_w = weight("output", config.intermediate_size, h);
    layer.output_b = bias("output", h);
    layer.output_norm_gamma =
        MakeConstant(prefix + "output_norm.gamma", 1, h, 1.0);
    layer.output_norm_beta =
        MakeConstant(prefix + "output_norm.beta", 1, h, 0.0);
    model.layers_.push_back(std::move(layer));
  }
  model.pooler_w_ = MakeNormal("pooler.weight", h, h, sd, rng);
  model.pooler_b_ = MakeConstant("pooler.bias", 1, h, 0.0);
  model.classifier_w_ =
      MakeNormal("classifier.weight", h, config.num_labels, sd, rng);
  model.classifier_b_ = MakeConstant("classifier.bias", 1, config.num_labels, 0.0);
  return model;
}

std::vector<Parameter*> EncoderClassifier::parameters() {
  std::vector<Parameter*> out = {&word_embeddings_, &position_embeddings_,
                                 &embedding_norm_gamma_, &embedding_norm_beta_};
  for (Layer& l : layers_) {
    for (Parameter* p :
         {&l.query_w, &l.query_b, &l.key_w, &l.key_b, &l.value_w, &l.value_b,
          &l.attention_out_w, &l.attention_out_b, &l.attention_norm_gamma,
          &l.attention_norm_beta, &l.intermediate_w, &l.intermediate_b,
          &l.output_w, &l.output_b, &l.output_norm_gamma,
          &l.output_norm_beta}) {
      out.push_back(p);
    }
  }
  for (Parameter* p : {&pooler_w_, &pooler_b_, &classifier_w_, &classifier_b_}) {
    out.push_back(p);
  }
  return out;
}

std::vector<const Parameter*> EncoderClassifier::parameters() const {
  std::vector<const Parameter*> out;
  for (Parameter* p : const_cast<EncoderClassifier*>(this)->parameters()) {
    out.push_back(p);
  }
  return out;
}

Graph::NodeId EncoderClassifier::Forward(Graph& graph,
                                         std::span<const int> ids,
                                         bool training, Rng* rng) const {
  // The graph only reads parameters on the forward pass; the const_cast
  // lets Backward() accumulate into their gradients during training.
  auto* table = const_cast<Parameter*>(&word_embeddings_);
  return ForwardFromWordEmbeddings(graph, graph.Embedding(table, ids),
                                   training, rng);
}

Graph::NodeId EncoderClassifier::ForwardFromWordEmbeddings(
    Graph& graph, Graph::NodeId word_embeddings, bool training,
    Rng* rng) const {
  return ForwardFromEmbeddingOutput(graph, EmbeddingOutput(graph, word_embeddings),
                                    training, rng);
}

Graph::NodeId EncoderClassifier::EmbeddingOutput(
    Graph& graph, Graph::NodeId word_embeddings) const {
  auto* self = const_cast<EncoderClassifier*>(this);
  const int seq = static_cast<int>(graph.value(word_embeddings).rows());
  std::vector<int> positions(seq);
  for (int i = 0; i < seq; ++i) positions[i] = i;
  const Graph::NodeId h = graph.Add(
      word_embeddings, graph.Embedding(&self->position_embeddings_, positions));
  return graph.LayerNorm(h, &self->embedding_norm_gamma_,
                         &self->embedding_norm_beta_, config_.layer_norm_eps);
}

Graph::NodeId EncoderClassifier::ForwardFromEmbeddingOutput(
    Graph& graph, Graph::NodeId embedded, bool training, Rng* rng) const {
  auto* self = const_cast<EncoderClassifier*>(this);
  const double p = training ? config_.dropout : 0.0;
  auto dropout = [&](Graph::NodeId x) {
    return p > 0.0 ? graph.Dropout(x, p, *rng) : x;
  };
  Graph::NodeId h = dropout(embedded);
  const int head_dim = config_.hidden_size / config_.num_heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(head_dim));
  for (Layer& l : self->layers_) {
    const Graph::NodeId q = graph.Linear(h, &l.query_w, &l.query_b);
    const Graph::NodeId k = graph.Linear(h, &l.key_w, &l.key_b);
    const Graph::NodeId v = graph.Linear(h, &l.value_w, &l.value_b);
    std::vector<Graph::NodeId> heads;
    for (int head = 0; head < config_.num_heads; ++head) {
      const int start = head * head_dim;
      const Graph::NodeId scores = graph.Scale(
          graph.MatMulTransposed(graph.SliceCols(q, start, head_dim),
                                 graph.SliceCols(k, start, head_dim)),
          scale);
      const Graph::NodeId probs = dropout(graph.SoftmaxRows(scores));
      heads.push_back(
          graph.MatMul(probs, graph.SliceCols(v, start, head_dim)));
    }
    Graph::NodeId attention = graph.Linear(
        graph.ConcatCols(heads), &l.attention_out_w, &l.attention_out_b);
    h = graph.LayerNorm(graph.Add(dropout(attention), h),
                        &l.attention_norm_gamma, &l.attention_norm_beta,
                        config_.layer_norm_eps);
    Graph::NodeId ffn = graph.Gelu(
        graph.Linear(h, &l.intermediate_w, &l.intermediate_b));
    ffn = graph.Linear(ffn, &l.output_w, &l.output_b);
    h = graph.LayerNorm(graph.Add(dropout(ffn), h), &l.output_norm_gamma,
                        &l.output_norm_beta, config_.layer_norm_eps);
  }
  Graph::NodeId pooled = graph.Tanh(
      graph.Linear(graph.Row(h, 0), &self->pooler_w_, &self->pooler_b_));
  return graph.Linear(dropout(pooled), &self->classifier_w_,
                      &self->classifier_b_);
}

std::array<double, 2> EncoderClassifier::Probabilities(
    std::span<const int> ids) const {
  Graph graph(/*parameter_grads=*/false);
  const Matrix& logits = graph.value(Forward(graph, ids, false, nullptr));
  const double max = logits.maxCoeff();
  const double e0 = std::exp(logits(0, 0) - max);
  const double e1 = std::exp(logits(0, 1) - max);
  return {e0 / (e0 + e1), e1 / (e0 + e1)};
}

absl::Status EncoderClassifier::ResizeVocabulary(int vocab_size, Rng& rng,
                                                 double noise_stddev) {
  const int old_size = static_cast<int>(word_embeddings_.value.rows());
  if (vocab_size < old_size) {
    return absl::InvalidArgumentError(
        StrCat("cannot shrink vocabulary from ", old_size, " to ", vocab_size));
  }
  if (vocab_size == old_size) return absl::OkStatus();
  const Eigen::RowVectorXd mean = word_embeddings_.value.colwise().mean();
  Matrix grown(vocab_size, word_embeddings_.value.cols());
  grown.topRows(old_size) = word_embeddings_.value;
  for (int r = old_size; r < vocab_size; ++r) {
    for (Eigen::Index c = 0; c < grown.cols(); ++c) {
      grown(r, c) = mean(c) + rng.Normal(0.0, noise_stddev);
    }
  }
  word_embeddings_.value = std::move(grown);
  word_embeddings_.ResetState();
  config_.vocab_size = vocab_size;
  return absl::OkStatus();
}

absl::Status EncoderClassifier::SaveWeights(
    const std::filesystem::path& path) const {
  std::string out(kWeightsMagic, sizeof(kWeightsMagic));
  const auto params = parameters();
  AppendRaw(out, static_cast<uint32_t>(params.size()));
  for (const Parameter* p : params) {
    AppendRaw(out, static_cast<uint32_t>(p->name.size()));
    out += p->name;
    AppendRaw(out, static_cast<uint32_t>(p->value.rows()));
    AppendRaw(out, static_cast<uint32_t>(p->value.cols()));
    out.append(reinterpret_cast<const char*>(p->value.data()),
               sizeof(double) * static_cast<size_t>(p->value.size()));
  }
  return io::WriteFileAtomic(path, out);
}

absl::Status EncoderClassifier::LoadWeights(const std::filesystem::path& path) {
  BURNSCREEN_ASSIGN_OR_RETURN(std::string contents, io::ReadFile(path));
  std::string_view in = contents;
  auto corrupt = [&](std::string_view what) {
    return absl::DataLossError(StrCat(path.string(), ": ", what));
  };
  if (!in.starts_with(std::string_view(kWeightsMagic, 4))) {
    return corrupt("not a weights file");
  }
  in.remove_prefix(4);
  uint32_t count = 0;
  const auto params = parameters();
  if (!ReadRaw(in, count) || count != params.size()) {
    return corrupt("parameter count does not match the config");
  }
  for (Parameter* p : params) {
    uint32_t name_size = 0, rows = 0, cols = 0;
    if (!ReadRaw(in, name_size) || in.size() < name_size) {
      return corrupt("truncated");
    }
    const std::string_view name = in.substr(0, name_size);
    in.remove_prefix(name_size);
    if (name != p->name) {
      return corrupt(StrCat("expected parameter ", p->name, ", found ",
                            std::string(name)));
    }
    if (!ReadRaw(in, rows) || !ReadRaw(in, cols) ||
        rows != p->value.rows() || cols != p->value.cols()) {
      return corrupt(StrCat("shape mismatch for ", p->name));
    }
    const size_t bytes = sizeof(double) * rows * cols;
    if (in.size() < bytes) return corrupt("truncated");
    std::memcpy(p->value.data(), in.data(), bytes);
    in.remove_prefix(bytes);
    p->ResetState();
  }
  if (!in.empty()) return corrupt("trailing bytes");
  return absl::OkStatus();
}

absl::StatusOr<int> ExtendVocabulary(WordPieceTokenizer& tokenizer,
                                     EncoderClassifier& model,
                                     std::span<const std::string> terms,
                                     Rng& rng) {
  if (tokenizer.size() != model.config().vocab_size) {
    return absl::FailedPreconditionError(
        StrCat("tokenizer has ", tokenizer.size(), " entries but the model ",
               model.config().vocab_size));
  }
  BURNSCREEN_ASSIGN_OR_RETURN(int added, tokenizer.AddTokens(terms));
  BURNSCREEN_RETURN_IF_ERROR(model.ResizeVocabulary(tokenizer.size(), rng));
  return added;
}

}  // namespace burnscreen::trainer
