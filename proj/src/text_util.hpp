#ifndef SCIGIS_SRC_TEXT_UTIL_HPP
#define SCIGIS_SRC_TEXT_UTIL_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace scigis::detail {

struct CodePoint {
  char32_t value;
  std::size_t length;  // bytes consumed
};

/// Decodes one UTF-8 sequence at `pos`. Invalid bytes decode to U+FFFD with
/// length 1 so every byte is consumed exactly once.
CodePoint decode_utf8(std::string_view text, std::size_t pos);

std::size_t count_code_points(std::string_view text);

bool is_space(char32_t c);

/// Letters, digits and non-ASCII code points outside the punctuation blocks.
bool is_word_char(char32_t c);

bool has_word_char(std::string_view text);
bool has_ascii_letter(std::string_view text);

std::string to_lower_ascii(std::string_view text);
std::string_view trim(std::string_view text);

/// Splits on runs of ASCII whitespace.
std::vector<std::string_view> split_ws(std::string_view text);
std::vector<std::string_view> split(std::string_view text, char sep);

/// Reads newline-separated entries, dropping blanks and `#` comments.
std::vector<std::string> data_lines(std::string_view text);

}  // namespace scigis::detail

#endif  // SCIGIS_SRC_TEXT_UTIL_HPP
