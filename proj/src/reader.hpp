#pragma once

// Character-level reader shared by the atom, clause and mode-bias parsers.

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "evl/parse.hpp"
#include "evl/term.hpp"

namespace evl::detail {

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  /// Called for a term position starting with a character that cannot begin
  /// a term. Returning true means the hook consumed it and set `out`.
  using TermHook = bool (*)(Reader&, Term& out, void* ctx);

  void set_term_hook(TermHook hook, void* ctx) {
    hook_ = hook;
    hook_ctx_ = ctx;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  [[nodiscard]] bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  [[nodiscard]] char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  [[nodiscard]] char peek_raw() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  [[nodiscard]] bool try_consume(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      for (std::size_t i = 0; i < token.size(); ++i) advance();
      return true;
    }
    return false;
  }

  void expect(std::string_view token) {
    if (!try_consume(token)) fail("expected '" + std::string(token) + "'");
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, line_, column_);
  }

  std::string read_name() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      advance();
    return std::string(text_.substr(start, pos_ - start));
  }

  Term read_term() {
    skip_space();
    const char c = peek_raw();
    if (c == '\0') fail("unexpected end of input");
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && pos_ + 1 < text_.size() &&
         std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
      return read_integer();
    }
    if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
      return Term::variable(read_name());
    }
    if (std::islower(static_cast<unsigned char>(c))) {
      const std::string name = read_name();
      if (peek_raw() == '(') {
        advance();
        std::vector<Term> args;
        args.push_back(read_term());
        while (try_consume(",")) args.push_back(read_term());
        expect(")");
        return Term::compound(name, std::move(args));
      }
      return Term::symbol(name);
    }
    Term hooked;
    if (hook_ && hook_(*this, hooked, hook_ctx_)) return hooked;
    fail(std::string("unexpected character '") + c + "'");
  }

  Term read_atom() {
    skip_space();
    if (!std::islower(static_cast<unsigned char>(peek_raw())))
      fail("expected a predicate name");
    Term t = read_term();
    if (t.kind() != Term::Kind::Symbol && t.kind() != Term::Kind::Compound)
      fail("expected an atom");
    return t;
  }

  Literal read_literal() {
    skip_space();
    bool negated = false;
    if (text_.substr(pos_, 4) == "not " || text_.substr(pos_, 4) == "not\t") {
      for (int i = 0; i < 4; ++i) advance();
      negated = true;
    }
    return Literal(read_atom(), negated);
  }

  Clause read_clause() {
    Clause c;
    c.head = read_literal();
    if (c.head.negated) fail("clause head cannot be negated");
    if (try_consume(":-")) {
      c.body.push_back(read_literal());
      while (try_consume(",")) c.body.push_back(read_literal());
    }
    expect(".");
    return c;
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

 private:
  Term read_integer() {
    const std::size_t start = pos_;
    if (text_[pos_] == '-') advance();
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
    const std::string digits(text_.substr(start, pos_ - start));
    try {
      return Term::integer(std::stoll(digits));
    } catch (const std::exception&) {
      fail("integer out of range: " + digits);
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
  TermHook hook_ = nullptr;
  void* hook_ctx_ = nullptr;
};

}  // namespace evl::detail
