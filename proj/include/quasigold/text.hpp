#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

// Low-level text machinery shared by title normalization, deduplication
// and phrase matching. Case folding covers ASCII, Latin-1 Supplement,
// Latin Extended-A, Greek and Cyrillic; other scripts pass through
// unchanged. That is enough for bibliographic metadata in this domain;
// it is not a full Unicode fold.

namespace qg {

/// Decode UTF-8 into codepoints. Invalid byte sequences become U+FFFD.
std::u32string utf8_decode(std::string_view s);

std::string utf8_encode(std::u32string_view s);

char32_t fold_char(char32_t c);

/// Word characters survive tokenization; everything else separates tokens.
/// Hyphens, apostrophes and the general-punctuation block all separate.
bool is_word_char(char32_t c);

std::string fold_case(std::string_view s);

std::string trim(std::string_view s);

/// Collapse runs of ASCII whitespace to single spaces and trim.
std::string collapse_whitespace(std::string_view s);

/// Case-fold + punctuation-to-space + whitespace collapse, in that order.
std::string normalize_title(std::string_view title);

/// Folded word tokens of `s`, in order.
std::vector<std::string> tokenize(std::string_view s);

/// FNV-1a 64-bit, hex-encoded. Used for title-hash record ids.
std::string fnv1a64_hex(std::string_view s);

bool ascii_iequals(std::string_view a, std::string_view b);

std::string to_lower_ascii(std::string_view s);

/// Split on a single-character separator, trimming each piece and
/// dropping empties.
std::vector<std::string> split_trimmed(std::string_view s, char sep);

}  // namespace qg
