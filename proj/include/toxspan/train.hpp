#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "toxspan/dataio.hpp"
#include "toxspan/embeddings.hpp"
#include "toxspan/model.hpp"

namespace toxspan {

struct TrainConfig {
  int epochs = 30;
  int batch_size = 16;
  std::uint64_t seed = 1;
  double learning_rate = 1e-3;
  int hidden_size = 128;
  double gradient_clip_norm = 5.0;
  int early_stop_patience = 5;
  double dev_fraction = 0.1;
  std::size_t max_len = kDefaultMaxLen;
  bool fine_tune_embeddings = false;
  BridgePolicy bridge;  // decoding used for dev F1

  // Throws std::invalid_argument naming the first bad field.
  void validate() const;
};

struct TrainExample {
  TokenSeq tokens;
  EncodedPost post;
  LabelSeq labels;  // one per unpadded position
  CharSpanSet gold;
};

TrainExample make_example(const LabeledPost& post, const EmbeddingTable& table,
                          std::size_t max_len = kDefaultMaxLen);
std::vector<TrainExample> make_examples(const std::vector<LabeledPost>& posts,
                                        const EmbeddingTable& table,
                                        std::size_t max_len = kDefaultMaxLen);

struct EpochRecord {
  int epoch = 0;
  double train_nll = 0.0;  // mean over training examples
  double dev_f1 = 0.0;
};

struct TrainResult {
  ModelParams params;  // parameters of the best dev epoch
  std::vector<EpochRecord> history;
  int best_epoch = 0;
};

class TrainingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Splits off `dev_fraction` of `data` (seeded) for early stopping.
TrainResult train(const std::vector<TrainExample>& data, const EmbeddingTable& table,
                  const TrainConfig& config, std::ostream* log = nullptr);

TrainResult train(const std::vector<TrainExample>& train_set,
                  const std::vector<TrainExample>& dev_set, const EmbeddingTable& table,
                  const TrainConfig& config, std::ostream* log = nullptr);

// Mean batch NLL and its gradient; examples are reduced in index order.
double batch_loss(const std::vector<const TrainExample*>& batch, const ModelParams& params,
                  const EmbeddingTable& table, ModelParams* grads = nullptr);

double dev_f1(const std::vector<TrainExample>& dev, const ModelParams& params,
              const EmbeddingTable& table, const BridgePolicy& policy);

// TSV: `epoch<TAB>train_nll<TAB>dev_f1`, values with round-trip precision.
void write_history(const std::vector<EpochRecord>& history, std::ostream& out);

}  // namespace toxspan
