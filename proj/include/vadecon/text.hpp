#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace vadecon::text {

// Alphabet used for token segmentation: ASCII letters plus the Latin-1
// Supplement and Latin Extended-A letter blocks. The corpus and the common
// VAD lexicons are English with occasional Western European names, so the
// full Unicode property tables (an ICU dependency) are not pulled in.
// Everything outside these ranges acts as a token separator.
bool is_alphabetic(char32_t cp);

// Lowercase mapping for the alphabet above; identity elsewhere.
char32_t to_lower(char32_t cp);

// Decodes the UTF-8 sequence starting at `pos` and advances `pos` past it.
// Malformed sequences decode as U+FFFD and advance one byte.
char32_t decode_utf8(std::string_view s, std::size_t& pos);

void append_utf8(std::string& out, char32_t cp);

// Lowercases alphabetic code points; other code points pass through.
std::string lower_copy(std::string_view s);

// Maximal runs of alphabetic code points, lowercased, in input order.
// Digits, punctuation, and symbols separate tokens and are dropped.
std::vector<std::string> tokenize(std::string_view s);

}  // namespace vadecon::text
