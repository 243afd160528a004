#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace crs::text {

// Decodes the UTF-8 scalar starting at byte offset `i`. Returns the code
// point and advances `i` past it. Malformed bytes are consumed one at a time
// so that splitting and reassembly stay lossless on arbitrary input.
char32_t next_scalar(std::string_view s, std::size_t& i);

// Number of Unicode scalar values (not bytes).
std::size_t scalar_count(std::string_view s);

// Splits into pieces of at most `max_scalars` scalar values each. The
// concatenation of the pieces equals the input byte-for-byte.
std::vector<std::string> split_scalars(std::string_view s, std::size_t max_scalars);

bool is_space_scalar(char32_t cp);

// Strips leading/trailing whitespace (ASCII plus NBSP and ideographic space).
std::string trim(std::string_view s);

// Canonical composition (NFC). Requires ICU; falls back to the identity
// mapping when the library was built without it.
std::string nfc(std::string_view s);
bool nfc_supported();

// The canonical form used for every name comparison in the pipeline:
// NFC normalization followed by whitespace trimming.
std::string normalize_name(std::string_view s);

std::string to_lower_ascii(std::string_view s);
bool iequals_ascii(std::string_view a, std::string_view b);

// True when `s` equals "Information not provided" up to case, surrounding
// quotes/brackets and a trailing period. Agents use this marker for absent
// fields.
bool is_not_provided(std::string_view s);

}  // namespace crs::text
