#include "toxspan/metric.hpp"

#include <stdexcept>
#include <string>

namespace toxspan {

PostScore per_post_scores(const CharSpanSet& pred, const CharSpanSet& gold) {
  if (pred.empty() && gold.empty()) return {1.0, 1.0, 1.0};
  if (pred.empty() || gold.empty()) return {0.0, 0.0, 0.0};
  const auto overlap = static_cast<double>(pred.intersection_size(gold));
  PostScore s;
  s.precision = overlap / static_cast<double>(pred.size());
  s.recall = overlap / static_cast<double>(gold.size());
  if (s.precision + s.recall > 0.0) {
    s.f1 = 2.0 * s.precision * s.recall / (s.precision + s.recall);
  }
  return s;
}

EvalReport evaluate(const std::vector<PostPrediction>& preds,
                    const std::vector<LabeledPost>& golds) {
  if (preds.size() != golds.size()) {
    throw std::invalid_argument("evaluate: " + std::to_string(preds.size()) +
                                " predictions for " + std::to_string(golds.size()) + " posts");
  }
  EvalReport report;
  report.per_post.reserve(preds.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (preds[i].id != golds[i].id) {
      throw std::invalid_argument("evaluate: prediction id " + std::to_string(preds[i].id) +
                                  " at position " + std::to_string(i) + " does not match post id " +
                                  std::to_string(golds[i].id));
    }
    report.per_post.push_back(per_post_scores(preds[i].spans, golds[i].gold));
    sum += report.per_post.back().f1;
  }
  report.mean_f1 = preds.empty() ? 0.0 : sum / static_cast<double>(preds.size());
  return report;
}

double mean_f1(const std::vector<CharSpanSet>& preds, const std::vector<CharSpanSet>& golds) {
  if (preds.size() != golds.size()) throw std::invalid_argument("mean_f1: length mismatch");
  if (preds.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < preds.size(); ++i) sum += per_post_scores(preds[i], golds[i]).f1;
  return sum / static_cast<double>(preds.size());
}

}  // namespace toxspan
