// Small UTF-8 and whitespace-token helpers shared by every module.
#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace twostep {

class InvalidUtf8 : public std::runtime_error {
 public:
  InvalidUtf8(std::size_t offset)
      : std::runtime_error("invalid UTF-8 byte sequence at offset " + std::to_string(offset)),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Splits on runs of ASCII whitespace; never yields empty tokens.
std::vector<std::string> split_tokens(std::string_view line);

std::string join_tokens(std::span<const std::string> tokens, std::string_view sep = " ");

/// Splits a document into lines. A trailing newline does not produce an
/// extra empty line; '\r' before '\n' is stripped.
std::vector<std::string> split_lines(std::string_view text);

/// Returns the byte offset of the first invalid sequence, or npos.
std::size_t find_invalid_utf8(std::string_view text);
inline bool is_valid_utf8(std::string_view text) {
  return find_invalid_utf8(text) == std::string_view::npos;
}
void require_valid_utf8(std::string_view text);

/// One string per code point. Invalid bytes are passed through one by one.
std::vector<std::string> utf8_chars(std::string_view text);

// Case mapping covers ASCII, Latin-1 and Latin Extended-A, which is what
// Czech and German text needs.
std::string to_lower(std::string_view text);
std::string lower_first(std::string_view text);
std::string upper_first(std::string_view text);

}  // namespace twostep
