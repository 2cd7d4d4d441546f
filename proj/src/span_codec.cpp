#include "toxspan/span_codec.hpp"

#include <stdexcept>
#include <string>

namespace toxspan {

LabelSeq spans_to_labels(const TokenSeq& tokens, const CharSpanSet& gold) {
  if (!gold.empty() &&
      (gold.indexes().front() < 0 || gold.indexes().back() >= tokens.source_len)) {
    throw std::out_of_range("gold span index outside [0, " +
                            std::to_string(tokens.source_len) + ")");
  }
  LabelSeq labels(tokens.size(), kNonToxic);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (gold.intersects(tokens[i].start, tokens[i].end)) labels[i] = kToxic;
  }
  return labels;
}

CharSpanSet labels_to_spans(const TokenSeq& tokens, const LabelSeq& labels,
                            const BridgePolicy& policy) {
  if (labels.size() != tokens.size()) {
    throw std::invalid_argument("label count " + std::to_string(labels.size()) +
                                " does not match token count " +
                                std::to_string(tokens.size()));
  }
  std::vector<CharIndex> chars;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (labels[i] != kToxic) continue;
    const Token& tok = tokens[i];
    for (CharIndex c = tok.start; c < tok.end; ++c) chars.push_back(c);
    if (policy.bridge_gaps && i + 1 < tokens.size() && labels[i + 1] == kToxic) {
      const CharIndex gap = tokens[i + 1].start - tok.end;
      if (gap <= policy.max_gap) {
        for (CharIndex c = tok.end; c < tokens[i + 1].start; ++c) chars.push_back(c);
      }
    }
  }
  return CharSpanSet(std::move(chars));
}

RoundTripLoss round_trip_loss(const TokenSeq& tokens, const CharSpanSet& gold,
                              const BridgePolicy& policy) {
  // Indexes outside the post cannot be encoded; they surface as missed.
  const CharSpanSet encodable = gold.set_intersection(CharSpanSet::range(0, tokens.source_len));
  const CharSpanSet decoded =
      labels_to_spans(tokens, spans_to_labels(tokens, encodable), policy);
  return {gold.set_difference(decoded), decoded.set_difference(gold)};
}

}  // namespace toxspan
