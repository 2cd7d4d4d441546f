#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string_view>
#include <vector>

#include "toxspan/dataio.hpp"

namespace toxspan {

// How many posts have k toxic words, for every observed k.
struct SpanWordHistogram {
  std::map<std::size_t, std::size_t> counts;
  std::map<std::size_t, double> percentages;
  std::size_t total = 0;
};

// A word is toxic when its token range intersects the gold set.
SpanWordHistogram span_word_histogram(const std::vector<LabeledPost>& data);

enum class ErrorCategory { exact, spurious_on_clean, missed_all, partial_span, wrong_offsets };

inline constexpr std::array<ErrorCategory, 5> kErrorCategories = {
    ErrorCategory::exact, ErrorCategory::spurious_on_clean, ErrorCategory::missed_all,
    ErrorCategory::partial_span, ErrorCategory::wrong_offsets};

std::string_view category_name(ErrorCategory c);

ErrorCategory categorize(const CharSpanSet& pred, const CharSpanSet& gold);

struct ErrorBucket {
  ErrorCategory category = ErrorCategory::exact;
  std::vector<std::size_t> post_ids;
};

// One bucket per category, in kErrorCategories order; buckets partition the
// posts.
std::vector<ErrorBucket> categorize_errors(const std::vector<PostPrediction>& preds,
                                           const std::vector<LabeledPost>& golds);

}  // namespace toxspan
