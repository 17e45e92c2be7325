#pragma once

#include <string>
#include <string_view>

namespace morphotag::utf8 {

// Invalid byte sequences decode to U+FFFD, one replacement per offending byte.
std::u32string decode(std::string_view text);
std::string encode(std::u32string_view text);
void append(std::string& out, char32_t cp);

std::size_t length(std::string_view text);

// First / last n code points (whole string when n exceeds the length).
std::string prefix(std::string_view text, std::size_t n);
std::string suffix(std::string_view text, std::size_t n);

// Simple case mapping for Latin, Latin-1, Greek and Cyrillic.
bool is_upper(char32_t cp);
char32_t to_lower(char32_t cp);
std::string to_lower(std::string_view text);

bool starts_with_upper(std::string_view text);
bool contains_digit(std::string_view text);
bool all_digits(std::string_view text);

}  // namespace morphotag::utf8
