#ifndef NULLREL_PARSE_UTIL_HPP
#define NULLREL_PARSE_UTIL_HPP

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace nullrel::detail {

struct ParsePosError : std::runtime_error {
  std::size_t pos;
  ParsePosError(const std::string& msg, std::size_t p)
      : std::runtime_error(msg + " (at offset " + std::to_string(p) + ")"), pos(p) {}
};

// Character-level cursor shared by the small recursive-descent parsers.
struct Cursor {
  std::string_view text;
  std::size_t pos = 0;

  explicit Cursor(std::string_view t) : text(t) {}

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  bool try_char(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect_char(char c) {
    if (!try_char(c)) fail(std::string("expected '") + c + "'");
  }
  // Case-insensitive keyword match with a word boundary after it.
  bool try_keyword(std::string_view kw) {
    skip_ws();
    if (pos + kw.size() > text.size()) return false;
    for (std::size_t k = 0; k < kw.size(); ++k)
      if (std::tolower(static_cast<unsigned char>(text[pos + k])) !=
          std::tolower(static_cast<unsigned char>(kw[k])))
        return false;
    std::size_t end = pos + kw.size();
    if (end < text.size()) {
      char c = text[end];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') return false;
    }
    pos += kw.size();
    return true;
  }
  void expect_keyword(std::string_view kw) {
    if (!try_keyword(kw)) fail("expected keyword \"" + std::string(kw) + "\"");
  }
  bool peek_ident() {
    skip_ws();
    return pos < text.size() &&
           (std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_');
  }
  std::string ident() {
    skip_ws();
    if (!peek_ident()) fail("expected identifier");
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    return std::string(text.substr(start, pos - start));
  }
  bool peek_int() {
    skip_ws();
    if (pos >= text.size()) return false;
    if (std::isdigit(static_cast<unsigned char>(text[pos]))) return true;
    return text[pos] == '-' && pos + 1 < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[pos + 1]));
  }
  std::int64_t integer() {
    skip_ws();
    if (!peek_int()) fail("expected integer");
    std::size_t start = pos;
    if (text[pos] == '-') ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    return std::stoll(std::string(text.substr(start, pos - start)));
  }
  bool peek_quote() {
    skip_ws();
    return pos < text.size() && text[pos] == '\'';
  }
  // Single-quoted text; '' escapes a quote.
  std::string quoted() {
    skip_ws();
    if (!peek_quote()) fail("expected quoted text");
    ++pos;
    std::string out;
    while (pos < text.size()) {
      char c = text[pos++];
      if (c == '\'') {
        if (pos < text.size() && text[pos] == '\'') {
          out += '\'';
          ++pos;
          continue;
        }
        return out;
      }
      out += c;
    }
    fail("unterminated quoted text");
    return out;
  }
  [[noreturn]] void fail(const std::string& msg) { throw ParsePosError(msg, pos); }
  void expect_eof() {
    if (!eof()) fail("trailing input");
  }
};

}  // namespace nullrel::detail

#endif
