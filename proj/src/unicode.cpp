#include "toxspan/unicode.hpp"

namespace toxspan::unicode {

namespace {

constexpr char32_t kReplacement = 0xFFFD;

bool in(char32_t c, char32_t lo, char32_t hi) { return c >= lo && c <= hi; }

// Upper-case letters in paired blocks where the lowercase form is the next
// code point.
bool even_pair(char32_t c, char32_t lo, char32_t hi) {
  return in(c, lo, hi) && ((c - lo) % 2 == 0);
}

}  // namespace

std::u32string decode_utf8(std::string_view bytes) {
  std::u32string out;
  out.reserve(bytes.size());
  std::size_t i = 0;
  const std::size_t n = bytes.size();
  while (i < n) {
    const auto b0 = static_cast<unsigned char>(bytes[i]);
    if (b0 < 0x80) {
      out.push_back(b0);
      ++i;
      continue;
    }
    int extra = 0;
    char32_t cp = 0;
    char32_t min_cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
      extra = 1;
      cp = b0 & 0x1F;
      min_cp = 0x80;
    } else if ((b0 & 0xF0) == 0xE0) {
      extra = 2;
      cp = b0 & 0x0F;
      min_cp = 0x800;
    } else if ((b0 & 0xF8) == 0xF0) {
      extra = 3;
      cp = b0 & 0x07;
      min_cp = 0x10000;
    } else {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    if (i + extra >= n) {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    bool ok = true;
    for (int k = 1; k <= extra; ++k) {
      const auto b = static_cast<unsigned char>(bytes[i + k]);
      if ((b & 0xC0) != 0x80) {
        ok = false;
        break;
      }
      cp = (cp << 6) | (b & 0x3F);
    }
    if (!ok || cp < min_cp || cp > 0x10FFFF || in(cp, 0xD800, 0xDFFF)) {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += extra + 1;
  }
  return out;
}

void append_utf8(std::string& out, char32_t c) {
  if (c < 0x80) {
    out.push_back(static_cast<char>(c));
  } else if (c < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (c >> 6)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else if (c < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (c >> 12)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (c >> 18)));
    out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  }
}

std::string encode_utf8(std::u32string_view chars) {
  std::string out;
  out.reserve(chars.size());
  for (char32_t c : chars) append_utf8(out, c);
  return out;
}

bool is_space(char32_t c) {
  return in(c, 0x09, 0x0D) || c == 0x20 || c == 0x85 || c == 0xA0 ||
         c == 0x1680 || in(c, 0x2000, 0x200A) || c == 0x2028 ||
         c == 0x2029 || c == 0x202F || c == 0x205F || c == 0x3000;
}

bool is_punct(char32_t c) {
  if (c < 0x80) {
    // '_' is kept inside words.
    return c != '_' && (in(c, 0x21, 0x2F) || in(c, 0x3A, 0x40) ||
                        in(c, 0x5B, 0x60) || in(c, 0x7B, 0x7E));
  }
  return c == 0xA1 || c == 0xA7 || c == 0xAB || c == 0xB6 || c == 0xB7 ||
         c == 0xBB || c == 0xBF || in(c, 0x2010, 0x2027) ||
         in(c, 0x2030, 0x205E) || in(c, 0x3001, 0x3003) ||
         in(c, 0x3008, 0x3011) || in(c, 0xFF01, 0xFF0F) ||
         in(c, 0xFF1A, 0xFF20);
}

bool is_symbol(char32_t c) {
  return in(c, 0x2190, 0x2BFF) || in(c, 0x1F000, 0x1FAFF);
}

bool is_word_char(char32_t c) {
  return !is_space(c) && !is_punct(c) && !is_symbol(c);
}

char32_t to_lower(char32_t c) {
  if (c < 0x80) return in(c, 'A', 'Z') ? c + 32 : c;
  if (in(c, 0xC0, 0xDE) && c != 0xD7) return c + 32;
  if (c < 0x100) return c;
  if (c == 0x130) return U'i';
  if (even_pair(c, 0x100, 0x137) || even_pair(c, 0x14A, 0x177)) return c + 1;
  if (in(c, 0x139, 0x148) && (c % 2 == 1)) return c + 1;
  if (c == 0x178) return 0xFF;
  if (in(c, 0x179, 0x17E) && (c % 2 == 1)) return c + 1;
  // Greek
  if (c == 0x386) return 0x3AC;
  if (in(c, 0x388, 0x38A)) return c + 37;
  if (c == 0x38C) return 0x3CC;
  if (c == 0x38E || c == 0x38F) return c + 63;
  if (in(c, 0x391, 0x3A1) || in(c, 0x3A3, 0x3AB)) return c + 32;
  // Cyrillic
  if (in(c, 0x400, 0x40F)) return c + 80;
  if (in(c, 0x410, 0x42F)) return c + 32;
  if (even_pair(c, 0x460, 0x481) || even_pair(c, 0x48A, 0x4BF)) return c + 1;
  if (c == 0x4C0) return 0x4CF;
  if (in(c, 0x4C1, 0x4CE) && (c % 2 == 1)) return c + 1;
  if (even_pair(c, 0x4D0, 0x52F)) return c + 1;
  // Armenian
  if (in(c, 0x531, 0x556)) return c + 48;
  // Latin Extended Additional
  if (c == 0x1E9E) return 0xDF;
  if (even_pair(c, 0x1E00, 0x1E95) || even_pair(c, 0x1EA0, 0x1EFF)) return c + 1;
  // Fullwidth Latin
  if (in(c, 0xFF21, 0xFF3A)) return c + 32;
  return c;
}

std::u32string to_lower(std::u32string_view s) {
  std::u32string out(s);
  for (auto& c : out) c = to_lower(c);
  return out;
}

}  // namespace toxspan::unicode
