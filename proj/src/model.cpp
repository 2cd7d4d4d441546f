#include "toxspan/model.hpp"

#include <cmath>
#include <stdexcept>

#include "toxspan/random.hpp"

namespace toxspan {

namespace {

void glorot(Eigen::MatrixXd& m, Rng& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(m.rows() + m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = rng.uniform(-limit, limit);
  }
}

template <typename Matrix>
std::span<double> span_of(Matrix& m) {
  return {m.data(), static_cast<std::size_t>(m.size())};
}

template <typename Matrix>
std::span<const double> span_of(const Matrix& m) {
  return {m.data(), static_cast<std::size_t>(m.size())};
}

template <typename View, typename Params>
std::vector<View> collect(Params& p) {
  std::vector<View> out;
  auto add = [&out](std::string name, auto& m) {
    out.push_back(View{std::move(name), m.rows(), m.cols(), span_of(m)});
  };
  add("fwd.w_in", p.fwd.w_in);
  add("fwd.w_rec", p.fwd.w_rec);
  add("fwd.b", p.fwd.b);
  add("bwd.w_in", p.bwd.w_in);
  add("bwd.w_rec", p.bwd.w_rec);
  add("bwd.b", p.bwd.b);
  add("emit.w_out", p.emit.w_out);
  add("emit.b_out", p.emit.b_out);
  add("crf.trans", p.crf.trans);
  add("crf.start", p.crf.start);
  add("crf.stop", p.crf.stop);
  if (p.embedding) add("embedding", *p.embedding);
  return out;
}

const EmbeddingMatrix& embedding_source(const ModelParams& p, const EmbeddingTable& table) {
  return p.embedding ? *p.embedding : table.matrix();
}

}  // namespace

ModelParams zero_params(const ModelShape& shape, std::size_t embedding_rows) {
  ModelParams p;
  p.fwd = LstmDirectionParams::zeros(shape.input, shape.hidden);
  p.bwd = LstmDirectionParams::zeros(shape.input, shape.hidden);
  p.emit.w_out = Eigen::MatrixXd::Zero(shape.labels, 2 * shape.hidden);
  p.emit.b_out = Eigen::VectorXd::Zero(shape.labels);
  p.crf = CrfParams::zeros(shape.labels);
  if (embedding_rows > 0) {
    p.embedding = EmbeddingMatrix::Zero(static_cast<Eigen::Index>(embedding_rows), shape.input);
  }
  return p;
}

ModelParams zeros_like(const ModelParams& p) {
  return zero_params({p.input_size(), p.hidden_size(), p.num_labels()},
                     p.embedding ? static_cast<std::size_t>(p.embedding->rows()) : 0);
}

ModelParams init_params(const ModelShape& shape, std::uint64_t seed,
                        const EmbeddingTable* fine_tune) {
  if (shape.input < 1 || shape.hidden < 1 || shape.labels < 1) {
    throw std::invalid_argument("model dimensions must be positive");
  }
  ModelParams p = zero_params(shape);
  Rng rng(seed);
  for (LstmDirectionParams* dir : {&p.fwd, &p.bwd}) {
    glorot(dir->w_in, rng);
    glorot(dir->w_rec, rng);
    dir->b.segment(shape.hidden, shape.hidden).setOnes();
  }
  glorot(p.emit.w_out, rng);
  if (fine_tune) {
    if (fine_tune->dim() != shape.input) throw std::invalid_argument("embedding width mismatch");
    p.embedding = fine_tune->matrix();
  }
  return p;
}

std::vector<TensorView> tensors(ModelParams& p) { return collect<TensorView>(p); }

std::vector<ConstTensorView> tensors(const ModelParams& p) {
  return collect<ConstTensorView>(p);
}

std::size_t parameter_count(const ModelParams& p) {
  std::size_t n = 0;
  for (const auto& t : tensors(p)) n += t.data.size();
  return n;
}

std::pair<EmissionMatrix, ForwardCache> bilstm_emissions(const EncodedPost& post,
                                                         const ModelParams& p,
                                                         const EmbeddingTable& table) {
  const std::size_t T = post.effective_len();
  if (T == 0) throw std::invalid_argument("cannot tag an empty post");
  const EmbeddingMatrix& source = embedding_source(p, table);
  if (source.cols() != p.input_size()) throw std::invalid_argument("embedding width mismatch");

  ForwardCache cache;
  cache.rows.assign(post.indices.begin(), post.indices.begin() + static_cast<std::ptrdiff_t>(T));
  Eigen::MatrixXd inputs(static_cast<Eigen::Index>(T), source.cols());
  for (std::size_t t = 0; t < T; ++t) {
    const int row = cache.rows[t];
    if (row < 0 || row >= source.rows()) throw std::out_of_range("embedding row out of range");
    inputs.row(static_cast<Eigen::Index>(t)) = source.row(row);
  }

  cache.fwd = lstm_forward(inputs, p.fwd, false);
  cache.bwd = lstm_forward(inputs, p.bwd, true);
  const Eigen::Index H = p.hidden_size();
  cache.features.resize(static_cast<Eigen::Index>(T), 2 * H);
  cache.features.leftCols(H) = cache.fwd.hiddens;
  cache.features.rightCols(H) = cache.bwd.hiddens;

  EmissionMatrix em = cache.features * p.emit.w_out.transpose();
  em.rowwise() += p.emit.b_out.transpose();
  return {std::move(em), std::move(cache)};
}

void backward(const ForwardCache& cache, const Eigen::MatrixXd& d_emissions,
              const ModelParams& p, ModelParams& grads) {
  const Eigen::Index H = p.hidden_size();
  grads.emit.w_out.noalias() += d_emissions.transpose() * cache.features;
  grads.emit.b_out += d_emissions.colwise().sum().transpose();

  const Eigen::MatrixXd d_features = d_emissions * p.emit.w_out;
  const LstmGradients gf = lstm_backward(cache.fwd, p.fwd, d_features.leftCols(H));
  const LstmGradients gb = lstm_backward(cache.bwd, p.bwd, d_features.rightCols(H));
  grads.fwd.w_in += gf.params.w_in;
  grads.fwd.w_rec += gf.params.w_rec;
  grads.fwd.b += gf.params.b;
  grads.bwd.w_in += gb.params.w_in;
  grads.bwd.w_rec += gb.params.w_rec;
  grads.bwd.b += gb.params.b;

  if (p.embedding && grads.embedding) {
    for (std::size_t t = 0; t < cache.rows.size(); ++t) {
      const auto i = static_cast<Eigen::Index>(t);
      grads.embedding->row(cache.rows[t]) += gf.d_inputs.row(i) + gb.d_inputs.row(i);
    }
  }
}

double example_loss(const EncodedPost& post, const LabelSeq& labels, const ModelParams& p,
                    const EmbeddingTable& table, ModelParams* grads, double scale) {
  auto [em, cache] = bilstm_emissions(post, p, table);
  if (grads == nullptr) return crf_nll(em, p.crf, labels);

  const CrfGradient g = crf_nll_gradient(em, p.crf, labels);
  backward(cache, scale * g.d_emissions, p, *grads);
  grads->crf.trans += scale * g.d_params.trans;
  grads->crf.start += scale * g.d_params.start;
  grads->crf.stop += scale * g.d_params.stop;
  return g.nll;
}

LabelSeq predict_labels(const EncodedPost& post, const ModelParams& p,
                        const EmbeddingTable& table) {
  if (post.effective_len() == 0) return {};
  const auto [em, cache] = bilstm_emissions(post, p, table);
  return viterbi_decode(em, p.crf);
}

CharSpanSet predict_tokens(const ModelParams& p, const TokenSeq& tokens,
                           const EmbeddingTable& table, std::size_t max_len,
                           const BridgePolicy& policy) {
  if (tokens.empty()) return {};
  const EncodedPost post = encode_post(tokens, table, max_len);
  LabelSeq labels = predict_labels(post, p, table);
  labels.resize(tokens.size(), kNonToxic);
  return labels_to_spans(tokens, labels, policy);
}

CharSpanSet predict(const ModelParams& p, std::string_view text, const EmbeddingTable& table,
                    std::size_t max_len, const BridgePolicy& policy) {
  return predict_tokens(p, tokenize(text), table, max_len, policy);
}

}  // namespace toxspan
