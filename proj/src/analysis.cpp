#include "toxspan/analysis.hpp"

#include <stdexcept>
#include <string>

#include "toxspan/span_codec.hpp"
#include "toxspan/tokenizer.hpp"

namespace toxspan {

SpanWordHistogram span_word_histogram(const std::vector<LabeledPost>& data) {
  SpanWordHistogram h;
  for (const auto& post : data) {
    const TokenSeq tokens = tokenize(post.text);
    std::size_t words = 0;
    for (const auto& tok : tokens.tokens) {
      if (post.gold.intersects(tok.start, tok.end)) ++words;
    }
    ++h.counts[words];
  }
  h.total = data.size();
  for (const auto& [k, n] : h.counts) {
    h.percentages[k] = 100.0 * static_cast<double>(n) / static_cast<double>(h.total);
  }
  return h;
}

std::string_view category_name(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::exact: return "exact";
    case ErrorCategory::spurious_on_clean: return "spurious-on-clean";
    case ErrorCategory::missed_all: return "missed-all";
    case ErrorCategory::partial_span: return "partial-span";
    case ErrorCategory::wrong_offsets: return "wrong-offsets";
  }
  return "unknown";
}

ErrorCategory categorize(const CharSpanSet& pred, const CharSpanSet& gold) {
  if (pred == gold) return ErrorCategory::exact;
  if (gold.empty()) return ErrorCategory::spurious_on_clean;
  if (pred.empty()) return ErrorCategory::missed_all;
  if (pred.is_subset_of(gold)) return ErrorCategory::partial_span;
  return ErrorCategory::wrong_offsets;
}

std::vector<ErrorBucket> categorize_errors(const std::vector<PostPrediction>& preds,
                                           const std::vector<LabeledPost>& golds) {
  if (preds.size() != golds.size()) {
    throw std::invalid_argument("categorize_errors: " + std::to_string(preds.size()) +
                                " predictions for " + std::to_string(golds.size()) + " posts");
  }
  std::vector<ErrorBucket> buckets;
  for (ErrorCategory c : kErrorCategories) buckets.push_back({c, {}});
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (preds[i].id != golds[i].id) {
      throw std::invalid_argument("categorize_errors: prediction id " +
                                  std::to_string(preds[i].id) + " does not match post id " +
                                  std::to_string(golds[i].id));
    }
    const auto c = categorize(preds[i].spans, golds[i].gold);
    buckets[static_cast<std::size_t>(c)].post_ids.push_back(golds[i].id);
  }
  return buckets;
}

}  // namespace toxspan
