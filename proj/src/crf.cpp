#include "toxspan/crf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace toxspan {

namespace {

void check_shapes(const EmissionMatrix& em, const CrfParams& crf) {
  const auto L = crf.num_labels();
  if (em.rows() < 1) throw std::invalid_argument("CRF needs at least one position");
  if (em.cols() != L || crf.trans.rows() != L || crf.trans.cols() != L || crf.stop.size() != L) {
    throw std::invalid_argument("CRF shape mismatch");
  }
}

void check_labels(const EmissionMatrix& em, const LabelSeq& labels) {
  if (static_cast<Eigen::Index>(labels.size()) != em.rows()) {
    throw std::invalid_argument("label sequence length " + std::to_string(labels.size()) +
                                " does not match " + std::to_string(em.rows()) + " positions");
  }
  for (int y : labels) {
    if (y < 0 || y >= em.cols()) throw std::invalid_argument("label out of range");
  }
}

template <typename Vec>
double log_sum_exp(const Vec& v) {
  const double m = v.maxCoeff();
  if (!std::isfinite(m)) return m;
  return m + std::log((v.array() - m).exp().sum());
}

// alpha(t, j): log-sum of scores of all prefixes ending in label j at t.
Eigen::MatrixXd forward_table(const EmissionMatrix& em, const CrfParams& crf) {
  const auto T = em.rows();
  const auto L = em.cols();
  Eigen::MatrixXd alpha(T, L);
  alpha.row(0) = crf.start.transpose() + em.row(0);
  Eigen::VectorXd scratch(L);
  for (Eigen::Index t = 1; t < T; ++t) {
    for (Eigen::Index j = 0; j < L; ++j) {
      scratch = alpha.row(t - 1).transpose() + crf.trans.col(j);
      alpha(t, j) = em(t, j) + log_sum_exp(scratch);
    }
  }
  return alpha;
}

// beta(t, i): log-sum of scores of all suffixes after label i at t.
Eigen::MatrixXd backward_table(const EmissionMatrix& em, const CrfParams& crf) {
  const auto T = em.rows();
  const auto L = em.cols();
  Eigen::MatrixXd beta(T, L);
  beta.row(T - 1) = crf.stop.transpose();
  Eigen::VectorXd scratch(L);
  for (Eigen::Index t = T - 2; t >= 0; --t) {
    for (Eigen::Index i = 0; i < L; ++i) {
      scratch = crf.trans.row(i).transpose() + em.row(t + 1).transpose() +
                beta.row(t + 1).transpose();
      beta(t, i) = log_sum_exp(scratch);
    }
  }
  return beta;
}

}  // namespace

CrfParams CrfParams::zeros(int num_labels) {
  return {Eigen::MatrixXd::Zero(num_labels, num_labels), Eigen::VectorXd::Zero(num_labels),
          Eigen::VectorXd::Zero(num_labels)};
}

double crf_path_score(const EmissionMatrix& em, const CrfParams& crf, const LabelSeq& labels) {
  check_shapes(em, crf);
  check_labels(em, labels);
  double s = crf.start(labels.front()) + crf.stop(labels.back());
  for (std::size_t t = 0; t < labels.size(); ++t) {
    s += em(static_cast<Eigen::Index>(t), labels[t]);
    if (t > 0) s += crf.trans(labels[t - 1], labels[t]);
  }
  return s;
}

double crf_log_partition(const EmissionMatrix& em, const CrfParams& crf) {
  check_shapes(em, crf);
  const Eigen::MatrixXd alpha = forward_table(em, crf);
  const Eigen::VectorXd last = alpha.row(em.rows() - 1).transpose() + crf.stop;
  return log_sum_exp(last);
}

double crf_gold_score(const EmissionMatrix& em, const CrfParams& crf, const LabelSeq& labels) {
  return crf_path_score(em, crf, labels);
}

double crf_nll(const EmissionMatrix& em, const CrfParams& crf, const LabelSeq& labels) {
  const double gold = crf_gold_score(em, crf, labels);
  // Rounding can leave a tiny negative value when one path holds all mass.
  return std::max(0.0, crf_log_partition(em, crf) - gold);
}

CrfMarginals crf_marginals(const EmissionMatrix& em, const CrfParams& crf) {
  check_shapes(em, crf);
  const auto T = em.rows();
  const auto L = em.cols();
  const Eigen::MatrixXd alpha = forward_table(em, crf);
  const Eigen::MatrixXd beta = backward_table(em, crf);
  CrfMarginals out;
  out.log_partition = log_sum_exp(Eigen::VectorXd(alpha.row(T - 1).transpose() + crf.stop));
  out.node = (alpha + beta).array() - out.log_partition;
  out.node = out.node.array().exp();
  out.edge = Eigen::MatrixXd::Zero(L, L);
  for (Eigen::Index t = 1; t < T; ++t) {
    for (Eigen::Index i = 0; i < L; ++i) {
      for (Eigen::Index j = 0; j < L; ++j) {
        out.edge(i, j) += std::exp(alpha(t - 1, i) + crf.trans(i, j) + em(t, j) + beta(t, j) -
                                   out.log_partition);
      }
    }
  }
  return out;
}

ViterbiResult viterbi(const EmissionMatrix& em, const CrfParams& crf) {
  check_shapes(em, crf);
  const auto T = em.rows();
  const auto L = em.cols();
  Eigen::MatrixXd score(T, L);
  Eigen::MatrixXi back = Eigen::MatrixXi::Zero(T, L);
  score.row(0) = crf.start.transpose() + em.row(0);
  for (Eigen::Index t = 1; t < T; ++t) {
    for (Eigen::Index j = 0; j < L; ++j) {
      double best = -std::numeric_limits<double>::infinity();
      int arg = 0;
      for (Eigen::Index i = 0; i < L; ++i) {
        const double s = score(t - 1, i) + crf.trans(i, j);
        if (s > best) {
          best = s;
          arg = static_cast<int>(i);
        }
      }
      score(t, j) = best + em(t, j);
      back(t, j) = arg;
    }
  }
  double best = -std::numeric_limits<double>::infinity();
  int last = 0;
  for (Eigen::Index j = 0; j < L; ++j) {
    const double s = score(T - 1, j) + crf.stop(j);
    if (s > best) {
      best = s;
      last = static_cast<int>(j);
    }
  }
  ViterbiResult out;
  out.score = best;
  out.path.assign(static_cast<std::size_t>(T), 0);
  out.path[static_cast<std::size_t>(T - 1)] = last;
  for (Eigen::Index t = T - 1; t > 0; --t) {
    out.path[static_cast<std::size_t>(t - 1)] = back(t, out.path[static_cast<std::size_t>(t)]);
  }
  return out;
}

LabelSeq viterbi_decode(const EmissionMatrix& em, const CrfParams& crf) {
  return viterbi(em, crf).path;
}

CrfGradient crf_nll_gradient(const EmissionMatrix& em, const CrfParams& crf,
                             const LabelSeq& labels) {
  check_shapes(em, crf);
  check_labels(em, labels);
  const CrfMarginals marg = crf_marginals(em, crf);
  CrfGradient g;
  g.nll = std::max(0.0, marg.log_partition - crf_path_score(em, crf, labels));
  g.d_emissions = marg.node;
  g.d_params.trans = marg.edge;
  g.d_params.start = marg.node.row(0).transpose();
  g.d_params.stop = marg.node.row(em.rows() - 1).transpose();
  for (std::size_t t = 0; t < labels.size(); ++t) {
    g.d_emissions(static_cast<Eigen::Index>(t), labels[t]) -= 1.0;
    if (t > 0) g.d_params.trans(labels[t - 1], labels[t]) -= 1.0;
  }
  g.d_params.start(labels.front()) -= 1.0;
  g.d_params.stop(labels.back()) -= 1.0;
  return g;
}

}  // namespace toxspan
