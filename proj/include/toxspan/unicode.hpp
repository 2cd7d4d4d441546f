#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace toxspan::unicode {

// Decodes UTF-8 into code points. Each malformed byte becomes U+FFFD so the
// result always has one entry per character the annotators would count.
std::u32string decode_utf8(std::string_view bytes);

std::string encode_utf8(std::u32string_view chars);
void append_utf8(std::string& out, char32_t c);

bool is_space(char32_t c);
bool is_punct(char32_t c);
// Pictographs and dingbats; each one is tokenized on its own.
bool is_symbol(char32_t c);
bool is_word_char(char32_t c);

// Simple one-to-one lowercase mapping (Latin, Greek, Cyrillic, Armenian).
char32_t to_lower(char32_t c);
std::u32string to_lower(std::u32string_view s);

}  // namespace toxspan::unicode
