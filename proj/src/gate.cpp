#include "toxspan/gate.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "toxspan/checkpoint.hpp"
#include "toxspan/hash.hpp"

namespace toxspan {

namespace {

double sigmoid(double x) {
  // Evaluated on the side that cannot overflow.
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// log(1 + exp(x)) without overflow.
double softplus(double x) { return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

}  // namespace

GateModel train_gate(const std::vector<std::pair<EncodedPost, bool>>& data,
                     const EmbeddingTable& table, const GateTrainConfig& config,
                     std::vector<double>* loss_history) {
  if (data.empty()) throw std::invalid_argument("gate training data is empty");
  if (config.epochs < 0) throw std::invalid_argument("gate epochs must be >= 0");
  if (!(config.threshold >= 0.0 && config.threshold <= 1.0)) {
    throw std::invalid_argument("gate threshold must be in [0, 1]");
  }
  bool any_pos = false;
  bool any_neg = false;
  for (const auto& d : data) (d.second ? any_pos : any_neg) = true;
  if (!any_pos || !any_neg) throw std::invalid_argument("gate training data has a single class");

  const auto n = static_cast<Eigen::Index>(data.size());
  const Eigen::Index dim = table.dim();
  Eigen::MatrixXd x(n, dim + 1);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& [post, toxic] = data[static_cast<std::size_t>(i)];
    x.row(i).head(dim) = mean_pool(post, table).transpose();
    x(i, dim) = 1.0;
    y(i) = toxic ? 1.0 : 0.0;
  }
  const double step = 4.0 / x.rowwise().squaredNorm().mean();

  Eigen::VectorXd w = Eigen::VectorXd::Zero(dim + 1);
  auto loss_of = [&](const Eigen::VectorXd& z) {
    double l = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) l += softplus(z(i)) - y(i) * z(i);
    return l / static_cast<double>(n);
  };
  Eigen::VectorXd z = x * w;
  if (loss_history) loss_history->push_back(loss_of(z));
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    Eigen::VectorXd residual(n);
    for (Eigen::Index i = 0; i < n; ++i) residual(i) = sigmoid(z(i)) - y(i);
    w -= step * (x.transpose() * residual) / static_cast<double>(n);
    z = x * w;
    if (loss_history) loss_history->push_back(loss_of(z));
  }

  GateModel g;
  g.kind = GateKind::internal_logreg;
  g.weights = w;
  g.threshold = config.threshold;
  g.vocab_hash = table.vocab_hash();
  return g;
}

GateModel make_external_gate(std::map<std::size_t, double> scores, double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw std::invalid_argument("gate threshold must be in [0, 1]");
  }
  GateModel g;
  g.kind = GateKind::external_scores;
  g.scores = std::move(scores);
  g.threshold = threshold;
  return g;
}

double gate_score(const GateModel& gate, std::size_t post_id, const Eigen::VectorXd& pooled) {
  if (gate.kind == GateKind::external_scores) {
    auto it = gate.scores.find(post_id);
    if (it == gate.scores.end()) {
      throw std::out_of_range("no external gate score for post id " + std::to_string(post_id));
    }
    return it->second;
  }
  const Eigen::Index dim = gate.weights.size() - 1;
  if (pooled.size() != dim) throw std::invalid_argument("gate feature width mismatch");
  return sigmoid(gate.weights.head(dim).dot(pooled) + gate.weights(dim));
}

CharSpanSet apply_gate(const CharSpanSet& detected, double score, double threshold) {
  if (score < threshold) return {};
  return detected;
}

void save_gate_file(const GateModel& gate, const std::string& path) {
  if (gate.kind != GateKind::internal_logreg) {
    throw std::invalid_argument("only internal gates are saved; external scores live in their file");
  }
  nlohmann::json j{{"kind", "internal-logreg"},
                   {"threshold", gate.threshold},
                   {"vocab_hash", hex64(gate.vocab_hash)},
                   {"weights", std::vector<double>(gate.weights.data(),
                                                   gate.weights.data() + gate.weights.size())}};
  write_file_atomic(path, j.dump(1) + "\n");
}

GateModel load_gate_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open gate file " + path);
  try {
    const auto j = nlohmann::json::parse(in);
    if (j.at("kind") != "internal-logreg") throw DataError(path + ": unknown gate kind");
    GateModel g;
    g.kind = GateKind::internal_logreg;
    g.threshold = j.at("threshold").get<double>();
    g.vocab_hash = std::stoull(j.at("vocab_hash").get<std::string>(), nullptr, 16);
    const auto w = j.at("weights").get<std::vector<double>>();
    if (w.size() < 2) throw DataError(path + ": gate needs at least one weight and a bias");
    g.weights = Eigen::Map<const Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size()));
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path + ": malformed gate file: " + e.what());
  }
}

}  // namespace toxspan
