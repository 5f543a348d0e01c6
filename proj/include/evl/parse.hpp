#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "evl/term.hpp"

namespace evl {

/// Syntax error carrying a 1-based line and column into the parsed text.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);

  [[nodiscard]] std::size_t line() const noexcept { return line_; }
  [[nodiscard]] std::size_t column() const noexcept { return column_; }
  [[nodiscard]] const std::string& message() const noexcept { return message_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

/// Parses `pred(arg,...)`; a trailing `.` is accepted. Identifiers are
/// lowercase-initial, variables uppercase- or underscore-initial.
[[nodiscard]] Literal parse_atom(std::string_view text);

/// Like parse_atom but accepts a leading `not`.
[[nodiscard]] Literal parse_literal(std::string_view text);

[[nodiscard]] Term parse_term(std::string_view text);

/// `head :- l1, l2, not l3.` or `head.`
[[nodiscard]] Clause parse_clause(std::string_view text);

/// Sequence of clauses separated by `.`; `%` starts a comment.
[[nodiscard]] std::vector<Clause> parse_program(std::string_view text);

}  // namespace evl
