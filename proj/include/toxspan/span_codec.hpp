#pragma once

#include <cstdint>
#include <vector>

#include "toxspan/dataio.hpp"
#include "toxspan/tokenizer.hpp"

namespace toxspan {

inline constexpr int kNonToxic = 0;
inline constexpr int kToxic = 1;
inline constexpr int kNumLabels = 2;

// One binary label per token.
using LabelSeq = std::vector<int>;

struct BridgePolicy {
  bool bridge_gaps = true;
  // Largest character gap between two adjacent toxic tokens that is filled
  // in on decode.
  CharIndex max_gap = 1;
};

// Token i is toxic iff its [start, end) range contains any gold index.
LabelSeq spans_to_labels(const TokenSeq& tokens, const CharSpanSet& gold);

CharSpanSet labels_to_spans(const TokenSeq& tokens, const LabelSeq& labels,
                            const BridgePolicy& policy = {});

struct RoundTripLoss {
  CharSpanSet missed;  // gold characters lost by encode/decode
  CharSpanSet added;   // characters decode adds that gold lacks
};

RoundTripLoss round_trip_loss(const TokenSeq& tokens, const CharSpanSet& gold,
                              const BridgePolicy& policy = {});

}  // namespace toxspan
