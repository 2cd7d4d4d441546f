#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "toxspan/crf.hpp"
#include "toxspan/embeddings.hpp"
#include "toxspan/lstm.hpp"
#include "toxspan/span_codec.hpp"

namespace toxspan {

struct EmissionParams {
  Eigen::MatrixXd w_out;  // L x 2H
  Eigen::VectorXd b_out;  // L
};

// Trainable weights of the BiLSTM-CRF tagger. The embedding table is passed
// alongside; `embedding` holds a trainable copy only when fine-tuning.
struct ModelParams {
  LstmDirectionParams fwd;
  LstmDirectionParams bwd;
  EmissionParams emit;
  CrfParams crf;
  std::optional<EmbeddingMatrix> embedding;

  int input_size() const { return fwd.input_size(); }
  int hidden_size() const { return fwd.hidden_size(); }
  int num_labels() const { return crf.num_labels(); }
};

struct ModelShape {
  int input = 0;
  int hidden = 0;
  int labels = kNumLabels;
};

// All-zero parameters; `embedding_rows` > 0 adds a trainable embedding.
ModelParams zero_params(const ModelShape& shape, std::size_t embedding_rows = 0);
ModelParams zeros_like(const ModelParams& p);

// Glorot-uniform weight matrices, zero biases and CRF scores, forget-gate
// bias 1. With `fine_tune` the table's matrix is copied in as trainable.
ModelParams init_params(const ModelShape& shape, std::uint64_t seed,
                        const EmbeddingTable* fine_tune = nullptr);

// Views over every tensor in declaration order (used by the optimizer,
// checkpoints and gradient checks).
struct TensorView {
  std::string name;
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  std::span<double> data;
};
struct ConstTensorView {
  std::string name;
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  std::span<const double> data;
};
std::vector<TensorView> tensors(ModelParams& p);
std::vector<ConstTensorView> tensors(const ModelParams& p);
std::size_t parameter_count(const ModelParams& p);

struct ForwardCache {
  std::vector<int> rows;  // embedding row per position
  LstmCache fwd;
  LstmCache bwd;
  Eigen::MatrixXd features;  // T x 2H, [forward | backward]
};

// Emissions for the unpadded prefix of `post` (T = effective length).
std::pair<EmissionMatrix, ForwardCache> bilstm_emissions(const EncodedPost& post,
                                                         const ModelParams& p,
                                                         const EmbeddingTable& table);

// Accumulates parameter gradients for upstream dLoss/dEmissions into
// `grads`. The embedding gradient is produced only when `p` fine-tunes.
void backward(const ForwardCache& cache, const Eigen::MatrixXd& d_emissions,
              const ModelParams& p, ModelParams& grads);

// CRF negative log-likelihood of one example; when `grads` is given its
// gradient, times `scale`, is added to it.
double example_loss(const EncodedPost& post, const LabelSeq& labels, const ModelParams& p,
                    const EmbeddingTable& table, ModelParams* grads = nullptr,
                    double scale = 1.0);

// Viterbi labels for the unpadded prefix; empty for an empty post.
LabelSeq predict_labels(const EncodedPost& post, const ModelParams& p,
                        const EmbeddingTable& table);

// tokenize -> encode -> emissions -> Viterbi -> character spans. Tokens cut
// off by truncation are non-toxic.
CharSpanSet predict(const ModelParams& p, std::string_view text, const EmbeddingTable& table,
                    std::size_t max_len = kDefaultMaxLen, const BridgePolicy& policy = {});

// Same as predict() for an already tokenized post.
CharSpanSet predict_tokens(const ModelParams& p, const TokenSeq& tokens,
                           const EmbeddingTable& table, std::size_t max_len,
                           const BridgePolicy& policy);

}  // namespace toxspan
