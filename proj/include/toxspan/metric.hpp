#pragma once

#include <vector>

#include "toxspan/dataio.hpp"

namespace toxspan {

struct PostScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct EvalReport {
  std::vector<PostScore> per_post;
  double mean_f1 = 0.0;
};

// Character-level precision/recall/F1 for one post. Both sets empty scores
// 1; exactly one empty scores 0. Indexes are compared as plain integers.
PostScore per_post_scores(const CharSpanSet& pred, const CharSpanSet& gold);

// Unweighted mean of per-post F1. Predictions and gold must align by id.
EvalReport evaluate(const std::vector<PostPrediction>& preds,
                    const std::vector<LabeledPost>& golds);

// Mean F1 over parallel lists of span sets.
double mean_f1(const std::vector<CharSpanSet>& preds, const std::vector<CharSpanSet>& golds);

}  // namespace toxspan
