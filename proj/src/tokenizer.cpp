#include "toxspan/tokenizer.hpp"

#include "toxspan/unicode.hpp"

namespace toxspan {

namespace {

using unicode::is_punct;
using unicode::is_space;
using unicode::is_symbol;
using unicode::is_word_char;

bool is_connector(char32_t c) { return c == U'\'' || c == U'-' || c == 0x2019; }

bool is_digit(char32_t c) { return c >= U'0' && c <= U'9'; }

bool is_joiner(char32_t c) {
  return c == 0x200D || c == 0xFE0E || c == 0xFE0F || (c >= 0x1F3FB && c <= 0x1F3FF);
}

bool starts_with_ci(std::u32string_view s, std::u32string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (unicode::to_lower(s[i]) != prefix[i]) return false;
  }
  return true;
}

class Segmenter {
 public:
  explicit Segmenter(const std::u32string& text) : text_(text) {}

  TokenSeq run() {
    TokenSeq seq;
    seq.source_len = static_cast<CharIndex>(text_.size());
    std::size_t i = 0;
    const std::size_t n = text_.size();
    while (i < n) {
      if (is_space(text_[i])) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < n && !is_space(text_[j])) ++j;
      chunk(i, j, seq);
      i = j;
    }
    return seq;
  }

 private:
  void emit(std::size_t begin, std::size_t end, TokenSeq& seq) const {
    Token t;
    const std::u32string_view span(text_.data() + begin, end - begin);
    t.surface = unicode::encode_utf8(span);
    t.lower = unicode::encode_utf8(unicode::to_lower(span));
    t.start = static_cast<CharIndex>(begin);
    t.end = static_cast<CharIndex>(end);
    seq.tokens.push_back(std::move(t));
  }

  // Position after the trailing punctuation-free part of a URL chunk.
  std::size_t url_end(std::size_t begin, std::size_t end) const {
    std::size_t e = end;
    while (e > begin && is_punct(text_[e - 1]) && text_[e - 1] != U'/') --e;
    return e;
  }

  std::size_t scan_word(std::size_t p, std::size_t end) const {
    std::size_t q = p;
    while (q < end) {
      const char32_t c = text_[q];
      if (is_word_char(c)) {
        ++q;
        continue;
      }
      const bool has_prev = q > p;
      const bool has_next = q + 1 < end;
      if (has_prev && has_next && is_connector(c) && is_word_char(text_[q - 1]) &&
          is_word_char(text_[q + 1])) {
        ++q;
        continue;
      }
      if (has_prev && has_next && (c == U'.' || c == U',') && is_digit(text_[q - 1]) &&
          is_digit(text_[q + 1])) {
        ++q;
        continue;
      }
      break;
    }
    return q;
  }

  void chunk(std::size_t begin, std::size_t end, TokenSeq& seq) const {
    const std::u32string_view view(text_.data() + begin, end - begin);
    std::size_t p = begin;
    if (starts_with_ci(view, U"http://") || starts_with_ci(view, U"https://") ||
        starts_with_ci(view, U"www.")) {
      const std::size_t e = url_end(begin, end);
      emit(begin, e, seq);
      p = e;
    }
    while (p < end) {
      const char32_t c = text_[p];
      if (is_symbol(c)) {
        std::size_t q = p + 1;
        while (q < end) {
          if (is_joiner(text_[q])) {
            ++q;
            if (text_[q - 1] == 0x200D && q < end && is_symbol(text_[q])) ++q;
          } else {
            break;
          }
        }
        emit(p, q, seq);
        p = q;
      } else if (is_punct(c)) {
        if ((c == U'@' || c == U'#') && p + 1 < end && is_word_char(text_[p + 1])) {
          const std::size_t q = scan_word(p + 1, end);
          emit(p, q, seq);
          p = q;
          continue;
        }
        std::size_t q = p + 1;
        while (q < end && text_[q] == c) ++q;
        emit(p, q, seq);
        p = q;
      } else {
        const std::size_t q = scan_word(p, end);
        emit(p, q, seq);
        p = q;
      }
    }
  }

  const std::u32string& text_;
};

}  // namespace

TokenSeq tokenize(std::string_view text) {
  const std::u32string chars = unicode::decode_utf8(text);
  return Segmenter(chars).run();
}

}  // namespace toxspan
