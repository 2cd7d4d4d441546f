#include "toxspan/train.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

#include "toxspan/adam.hpp"
#include "toxspan/metric.hpp"
#include "toxspan/random.hpp"

namespace toxspan {

void TrainConfig::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("train config: " + what); };
  if (epochs < 1) fail("epochs must be >= 1");
  if (batch_size < 1) fail("batch_size must be >= 1");
  if (!(learning_rate > 0.0)) fail("learning_rate must be > 0");
  if (hidden_size < 1) fail("hidden_size must be >= 1");
  if (!(gradient_clip_norm >= 0.0)) fail("gradient_clip_norm must be >= 0");
  if (early_stop_patience < 1) fail("early_stop_patience must be >= 1");
  if (!(dev_fraction > 0.0 && dev_fraction < 1.0)) fail("dev_fraction must be in (0, 1)");
  if (max_len < 1) fail("max_len must be >= 1");
  if (bridge.max_gap < 0) fail("bridge max_gap must be >= 0");
}

TrainExample make_example(const LabeledPost& post, const EmbeddingTable& table,
                          std::size_t max_len) {
  TrainExample ex;
  ex.tokens = tokenize(post.text);
  ex.post = encode_post(ex.tokens, table, max_len);
  ex.labels = spans_to_labels(ex.tokens, post.gold);
  ex.labels.resize(ex.post.effective_len());
  ex.gold = post.gold;
  return ex;
}

std::vector<TrainExample> make_examples(const std::vector<LabeledPost>& posts,
                                        const EmbeddingTable& table, std::size_t max_len) {
  std::vector<TrainExample> out;
  out.reserve(posts.size());
  for (const auto& p : posts) out.push_back(make_example(p, table, max_len));
  return out;
}

double batch_loss(const std::vector<const TrainExample*>& batch, const ModelParams& params,
                  const EmbeddingTable& table, ModelParams* grads) {
  if (batch.empty()) return 0.0;
  const double scale = 1.0 / static_cast<double>(batch.size());
  double total = 0.0;
  for (const TrainExample* ex : batch) {
    total += example_loss(ex->post, ex->labels, params, table, grads, scale);
  }
  return total * scale;
}

double dev_f1(const std::vector<TrainExample>& dev, const ModelParams& params,
              const EmbeddingTable& table, const BridgePolicy& policy) {
  std::vector<CharSpanSet> preds;
  std::vector<CharSpanSet> golds;
  preds.reserve(dev.size());
  golds.reserve(dev.size());
  for (const auto& ex : dev) {
    LabelSeq labels = predict_labels(ex.post, params, table);
    labels.resize(ex.tokens.size(), kNonToxic);
    preds.push_back(labels_to_spans(ex.tokens, labels, policy));
    golds.push_back(ex.gold);
  }
  return mean_f1(preds, golds);
}

namespace {

TrainResult run_training(const std::vector<const TrainExample*>& train_set,
                         const std::vector<TrainExample>& dev_set, const EmbeddingTable& table,
                         const TrainConfig& config, Rng& rng, std::ostream* log) {
  if (train_set.empty()) throw TrainingError("no non-empty training posts");

  const ModelShape shape{table.dim(), config.hidden_size, kNumLabels};
  TrainResult result;
  result.params = init_params(shape, rng.next(), config.fine_tune_embeddings ? &table : nullptr);
  AdamConfig adam;
  adam.learning_rate = config.learning_rate;
  adam.clip_norm = config.gradient_clip_norm;
  AdamState state = make_adam_state(result.params, adam);

  ModelParams params = result.params;
  double best_f1 = -1.0;
  int since_best = 0;
  std::vector<const TrainExample*> order = train_set;
  const auto batch_size = static_cast<std::size_t>(config.batch_size);

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    rng.shuffle(order);
    double nll_sum = 0.0;
    for (std::size_t begin = 0; begin < order.size(); begin += batch_size) {
      const std::size_t end = std::min(order.size(), begin + batch_size);
      const std::vector<const TrainExample*> batch(order.begin() + static_cast<std::ptrdiff_t>(begin),
                                                   order.begin() + static_cast<std::ptrdiff_t>(end));
      ModelParams grads = zeros_like(params);
      double loss = 0.0;
      try {
        loss = batch_loss(batch, params, table, &grads);
      } catch (const NumericalError& e) {
        throw TrainingError("epoch " + std::to_string(epoch) + ": " + e.what());
      }
      if (!std::isfinite(loss)) {
        throw TrainingError("non-finite loss at epoch " + std::to_string(epoch) + ", batch " +
                            std::to_string(begin / batch_size));
      }
      nll_sum += loss * static_cast<double>(batch.size());
      adam_step(params, grads, state);
    }

    EpochRecord rec;
    rec.epoch = epoch;
    rec.train_nll = nll_sum / static_cast<double>(order.size());
    rec.dev_f1 = dev_f1(dev_set, params, table, config.bridge);
    result.history.push_back(rec);
    if (log) {
      char line[128];
      std::snprintf(line, sizeof line, "epoch %3d  train_nll %.6f  dev_f1 %.4f\n", epoch,
                    rec.train_nll, rec.dev_f1);
      *log << line << std::flush;
    }

    if (rec.dev_f1 > best_f1) {
      best_f1 = rec.dev_f1;
      result.params = params;
      result.best_epoch = epoch;
      since_best = 0;
    } else if (++since_best >= config.early_stop_patience) {
      break;
    }
  }
  return result;
}

std::vector<const TrainExample*> trainable(const std::vector<TrainExample>& data) {
  std::vector<const TrainExample*> out;
  for (const auto& ex : data) {
    if (ex.post.effective_len() > 0) out.push_back(&ex);
  }
  return out;
}

}  // namespace

TrainResult train(const std::vector<TrainExample>& data, const EmbeddingTable& table,
                  const TrainConfig& config, std::ostream* log) {
  config.validate();
  if (data.size() < 2) throw TrainingError("need at least two posts to split off a dev set");
  Rng rng(config.seed);
  std::vector<std::size_t> order(data.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.shuffle(order);
  auto n_dev = static_cast<std::size_t>(std::llround(config.dev_fraction * static_cast<double>(data.size())));
  n_dev = std::clamp<std::size_t>(n_dev, 1, data.size() - 1);

  std::vector<TrainExample> dev;
  std::vector<TrainExample> rest;
  for (std::size_t k = 0; k < order.size(); ++k) {
    (k < n_dev ? dev : rest).push_back(data[order[k]]);
  }
  return run_training(trainable(rest), dev, table, config, rng, log);
}

TrainResult train(const std::vector<TrainExample>& train_set,
                  const std::vector<TrainExample>& dev_set, const EmbeddingTable& table,
                  const TrainConfig& config, std::ostream* log) {
  config.validate();
  if (dev_set.empty()) throw TrainingError("dev set is empty");
  Rng rng(config.seed);
  return run_training(trainable(train_set), dev_set, table, config, rng, log);
}

void write_history(const std::vector<EpochRecord>& history, std::ostream& out) {
  out << "epoch\ttrain_nll\tdev_f1\n";
  char buf[96];
  for (const auto& r : history) {
    std::snprintf(buf, sizeof buf, "%d\t%.17g\t%.17g\n", r.epoch, r.train_nll, r.dev_f1);
    out << buf;
  }
}

}  // namespace toxspan
