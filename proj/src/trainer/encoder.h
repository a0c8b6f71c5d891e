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

#ifndef BURNSCREEN_TRAINER_ENCODER_H_
#define BURNSCREEN_TRAINER_ENCODER_H_

#include <array>
#include <filesystem>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "common/random.h"
#include "json.hpp"
#include "trainer/graph.h"
#include "trainer/tokenizer.h"

namespace burnscreen::trainer {

struct EncoderConfig {
  int vocab_size = 0;
  int hidden_size = 64;
  int num_layers = 2;
  int num_heads = 4;
  int intermediate_size = 128;
  int max_positions = 128;
  double dropout = 0.1;
  double initializer_range = 0.02;
  double layer_norm_eps = 1e-12;
  int num_labels = 2;
};

nlohmann::json EncoderConfigToJson(const EncoderConfig& config);
absl::StatusOr<EncoderConfig> EncoderConfigFromJson(const nlohmann::json& json);
absl::Status ValidateEncoderConfig(const EncoderConfig& config);

// Post-LayerNorm bidirectional transformer encoder with a tanh pooler over
// the first ([CLS]) position and a linear classification head.
class EncoderClassifier {
 public:
  EncoderClassifier() = default;
  static absl::StatusOr<EncoderClassifier> Initialize(
      const EncoderConfig& config, Rng& rng);

  const EncoderConfig& config() const { return config_; }
  std::vector<Parameter*> parameters();
  std::vector<const Parameter*> parameters() const;
  Parameter& word_embeddings() { return word_embeddings_; }
  const Parameter& word_embeddings() const { return word_embeddings_; }

  // Logits (1 x num_labels) for one encoded sequence. `rng` drives dropout
  // and is only read when `training` is set.
  Graph::NodeId Forward(Graph& graph, std::span<const int> ids, bool training,
                        Rng* rng) const;
  // Same, starting from already looked-up word embeddings (seq x hidden).
  Graph::NodeId ForwardFromWordEmbeddings(Graph& graph,
                                          Graph::NodeId word_embeddings,
                                          bool training, Rng* rng) const;
  // Output of the embedding layer: word plus position embeddings, normalized
  // (seq x hidden). Dropout is not applied.
  Graph::NodeId EmbeddingOutput(Graph& graph, Graph::NodeId word_embeddings) const;
  // Same as Forward, starting from the embedding layer output.
  Graph::NodeId ForwardFromEmbeddingOutput(Graph& graph, Graph::NodeId embedded,
                                           bool training, Rng* rng) const;
  // Class probabilities in inference mode.
  std::array<double, 2> Probabilities(std::span<const int> ids) const;

  // Grows the word embedding table to `vocab_size` rows. New rows are the
  // mean of the existing rows plus N(0, noise_stddev^2) noise.
  absl::Status ResizeVocabulary(int vocab_size, Rng& rng,
                                double noise_stddev = 0.01);

  // Binary weights file; shapes must match the config on load.
  absl::Status SaveWeights(const std::filesystem::path& path) const;
  absl::Status LoadWeights(const std::filesystem::path& path);

 private:
  struct Layer {
    Parameter query_w, query_b, key_w, key_b, value_w, value_b;
    Parameter attention_out_w, attention_out_b;
    Parameter attention_norm_gamma, attention_norm_beta;
    Parameter intermediate_w, intermediate_b, output_w, output_b;
    Parameter output_norm_gamma, output_norm_beta;
  };

  EncoderConfig config_;
  Parameter word_embeddings_;
  Parameter position_embeddings_;
  Parameter embedding_norm_gamma_;
  Parameter embedding_norm_beta_;
  std::vector<Layer> layers_;
  Parameter pooler_w_, pooler_b_;
  Parameter classifier_w_, classifier_b_;
};

// Adds `terms` to the tokenizer and grows the model's embedding table to
// match. Returns the number of tokens added.
absl::StatusOr<int> ExtendVocabulary(WordPieceTokenizer& tokenizer,
                                     EncoderClassifier& model,
                                     std::span<const std::string> terms,
                                     Rng& rng);

}  // namespace burnscreen::trainer

#endif  // BURNSCREEN_TRAINER_ENCODER_H_
