#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// Minimal UTF-8 helpers for the tokenizer. Invalid byte sequences decode to
// U+FFFD one byte at a time so malformed input never throws.
namespace vsd::utf8 {

struct CodePoint {
  char32_t value;
  std::size_t offset;  // byte offset of the first code unit
  std::size_t length;  // number of code units
};

std::vector<CodePoint> decode(std::string_view text);
void append(std::string& out, char32_t cp);

// Number of code points (not bytes).
std::size_t length(std::string_view text);

char32_t to_lower(char32_t cp);
std::string to_lower(std::string_view text);

bool is_space(char32_t cp);
bool is_punct(char32_t cp);

// Strips leading and trailing Unicode whitespace.
std::string_view trim(std::string_view text);

}  // namespace vsd::utf8
