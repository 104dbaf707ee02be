#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace geolex::text {

// Decodes one UTF-8 codepoint starting at `i` and advances `i`. Malformed
// bytes decode to U+FFFD and advance by one, so broken input cannot stall
// a streaming pass.
char32_t decode_utf8(std::string_view s, std::size_t& i);

void append_utf8(std::string& out, char32_t cp);

std::u32string decode(std::string_view s);
std::string encode(const std::u32string& s);

// Letters of the Unicode Basic Latin and Latin-1 Supplement blocks
// (A-Z, a-z, U+00AA, U+00B5, U+00BA, U+00C0-U+00FF minus the multiplication
// and division signs).
bool is_latin_letter(char32_t cp);

bool is_ascii_digit(char32_t cp);

// ASCII + Latin-1 case folding; other codepoints pass through unchanged.
char32_t to_lower(char32_t cp);
std::string lower_copy(std::string_view s);

// Lowercased words made of Latin letters only; every other character is a
// separator. This is the cleaning rule for profile metadata features.
std::vector<std::string> letter_words(std::string_view s);

// Lowercased tweet-text tokens: letters, ASCII digits and underscore are
// token characters. Digits and underscores stay so handles like
// "@some_user" and tokens like "id2020" survive tokenization.
std::vector<std::string> word_tokens(std::string_view s);

}  // namespace geolex::text
