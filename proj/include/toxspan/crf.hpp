#pragma once

#include <Eigen/Dense>

#include "toxspan/span_codec.hpp"

namespace toxspan {

// Per-position label scores, T x L.
using EmissionMatrix = Eigen::MatrixXd;

struct CrfParams {
  Eigen::MatrixXd trans;  // trans(i, j): label i followed by label j
  Eigen::VectorXd start;
  Eigen::VectorXd stop;

  static CrfParams zeros(int num_labels);
  int num_labels() const { return static_cast<int>(start.size()); }
};

// start[y0] + sum_t em(t, y_t) + sum_t trans(y_{t-1}, y_t) + stop[y_{T-1}]
double crf_path_score(const EmissionMatrix& em, const CrfParams& crf, const LabelSeq& labels);

double crf_log_partition(const EmissionMatrix& em, const CrfParams& crf);
double crf_gold_score(const EmissionMatrix& em, const CrfParams& crf, const LabelSeq& labels);
double crf_nll(const EmissionMatrix& em, const CrfParams& crf, const LabelSeq& labels);

struct CrfMarginals {
  Eigen::MatrixXd node;  // T x L, P(y_t = l)
  Eigen::MatrixXd edge;  // L x L, expected transition counts (sum T-1)
  double log_partition = 0.0;
};

// Forward-backward in log space.
CrfMarginals crf_marginals(const EmissionMatrix& em, const CrfParams& crf);

struct ViterbiResult {
  LabelSeq path;
  double score = 0.0;
};

// Ties go to the lower label index.
ViterbiResult viterbi(const EmissionMatrix& em, const CrfParams& crf);
LabelSeq viterbi_decode(const EmissionMatrix& em, const CrfParams& crf);

struct CrfGradient {
  double nll = 0.0;
  Eigen::MatrixXd d_emissions;  // marginal - gold indicator
  CrfParams d_params;
};

CrfGradient crf_nll_gradient(const EmissionMatrix& em, const CrfParams& crf,
                             const LabelSeq& labels);

}  // namespace toxspan
