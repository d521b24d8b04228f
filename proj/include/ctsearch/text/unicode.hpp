#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ctsearch::text {

// NFC-normalizes UTF-8 input. Invalid sequences are replaced with U+FFFD.
std::string nfc(std::string_view utf8);

// Full Unicode case folding (ASCII fast path).
std::string casefold(std::string_view utf8);

bool is_valid_utf8(std::string_view bytes);

// Number of code points in text[0, byte_offset). byte_offset is clamped.
std::size_t codepoint_offset(std::string_view text, std::size_t byte_offset);

std::size_t codepoint_length(std::string_view text);

std::string_view trim(std::string_view s);

std::vector<std::string> split_whitespace(std::string_view s);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

bool is_ascii_space(char c);

bool starts_with_ci(std::string_view s, std::string_view prefix);

// Collapses runs of whitespace to a single space and trims the ends.
std::string normalize_whitespace(std::string_view s);

}  // namespace ctsearch::text
