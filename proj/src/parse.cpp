#include "evl/parse.hpp"

#include "reader.hpp"

namespace evl {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + message),
      message_(message),
      line_(line),
      column_(column) {}

namespace {

void finish(detail::Reader& r) {
  (void)r.try_consume(".");
  if (!r.at_end()) r.fail("unexpected trailing input");
}

}  // namespace

Literal parse_atom(std::string_view text) {
  detail::Reader r(text);
  Literal l(r.read_atom());
  finish(r);
  return l;
}

Literal parse_literal(std::string_view text) {
  detail::Reader r(text);
  Literal l = r.read_literal();
  finish(r);
  return l;
}

Term parse_term(std::string_view text) {
  detail::Reader r(text);
  Term t = r.read_term();
  if (!r.at_end()) r.fail("unexpected trailing input");
  return t;
}

Clause parse_clause(std::string_view text) {
  detail::Reader r(text);
  Clause c = r.read_clause();
  if (!r.at_end()) r.fail("unexpected trailing input");
  return c;
}

std::vector<Clause> parse_program(std::string_view text) {
  detail::Reader r(text);
  std::vector<Clause> out;
  while (!r.at_end()) out.push_back(r.read_clause());
  return out;
}

}  // namespace evl
