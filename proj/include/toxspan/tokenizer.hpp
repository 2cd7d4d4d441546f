#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "toxspan/dataio.hpp"

namespace toxspan {

struct Token {
  std::string surface;  // verbatim text[start, end), UTF-8
  std::string lower;    // case-folded surface
  CharIndex start = 0;  // character offsets into the original post
  CharIndex end = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

struct TokenSeq {
  std::vector<Token> tokens;
  CharIndex source_len = 0;

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
  const Token& operator[](std::size_t i) const { return tokens[i]; }
};

// Tweet-style segmentation that keeps exact character offsets.
//
// Whitespace separates chunks. Inside a chunk, leading and trailing
// punctuation is split off; a run of one repeated punctuation character
// ("??", "...", ",,") is a single token. Apostrophes and hyphens between
// letters stay inside the word ("isn't", "anti-immigration"), as do '.' and
// ',' between digits. URLs, @mentions and #hashtags are kept whole.
// Pictographic symbols become one-character tokens. Every non-whitespace
// character lands in exactly one token.
TokenSeq tokenize(std::string_view text);

}  // namespace toxspan
