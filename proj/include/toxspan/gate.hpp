#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "toxspan/dataio.hpp"
#include "toxspan/embeddings.hpp"

namespace toxspan {

enum class GateKind { internal_logreg, external_scores };

// Post-level toxicity classifier used to veto detector spans.
struct GateModel {
  GateKind kind = GateKind::internal_logreg;
  Eigen::VectorXd weights;  // dim feature weights followed by the bias
  double threshold = 0.5;
  std::map<std::size_t, double> scores;  // external: post id -> probability
  std::uint64_t vocab_hash = 0;          // internal: table the weights expect
};

struct GateTrainConfig {
  int epochs = 500;
  double threshold = 0.5;
};

// Logistic regression on mean-pooled embeddings, full-batch gradient
// descent from zero weights. The step size is 4 / mean ||[x, 1]||^2, at most
// the inverse smoothness constant, so each step cannot increase the loss.
// Per-step loss is appended to `loss_history` when given.
GateModel train_gate(const std::vector<std::pair<EncodedPost, bool>>& data,
                     const EmbeddingTable& table, const GateTrainConfig& config = {},
                     std::vector<double>* loss_history = nullptr);

GateModel make_external_gate(std::map<std::size_t, double> scores, double threshold = 0.5);

// Probability that the post is toxic.
double gate_score(const GateModel& gate, std::size_t post_id, const Eigen::VectorXd& pooled);

// Empty when score < threshold, otherwise `detected` unchanged.
CharSpanSet apply_gate(const CharSpanSet& detected, double score, double threshold);

// Internal gates only; JSON with weights, threshold and vocabulary hash.
void save_gate_file(const GateModel& gate, const std::string& path);
GateModel load_gate_file(const std::string& path);

}  // namespace toxspan
