#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "evl/symbol.hpp"

namespace evl {

/// First-order term: variable, symbolic constant, integer constant, or compound.
///
/// Equality and ordering are structural. Symbols order by spelling.
class Term {
 public:
  enum class Kind : std::uint8_t { Variable, Symbol, Integer, Compound };

  Term() = default;

  static Term variable(evl::Symbol name);
  static Term variable(std::string_view name) { return variable(evl::Symbol(name)); }
  static Term symbol(evl::Symbol name);
  static Term symbol(std::string_view name) { return symbol(evl::Symbol(name)); }
  static Term integer(std::int64_t value);
  static Term compound(evl::Symbol functor, std::vector<Term> args);
  static Term compound(std::string_view functor, std::vector<Term> args) {
    return compound(evl::Symbol(functor), std::move(args));
  }

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] bool is_variable() const noexcept { return kind_ == Kind::Variable; }
  [[nodiscard]] bool is_constant() const noexcept {
    return kind_ == Kind::Symbol || kind_ == Kind::Integer;
  }
  [[nodiscard]] bool is_compound() const noexcept { return kind_ == Kind::Compound; }

  /// Variable name, symbol spelling, or functor. Empty for integers.
  [[nodiscard]] evl::Symbol name() const noexcept { return name_; }
  [[nodiscard]] std::int64_t value() const noexcept { return value_; }
  [[nodiscard]] const std::vector<Term>& args() const noexcept { return args_; }
  [[nodiscard]] std::size_t arity() const noexcept { return args_.size(); }

  [[nodiscard]] bool is_ground() const;
  [[nodiscard]] std::size_t hash() const noexcept;

  /// Appends every distinct variable in first-occurrence order.
  void collect_variables(std::vector<evl::Symbol>& out) const;

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  Kind kind_ = Kind::Integer;
  evl::Symbol name_;
  std::int64_t value_ = 0;
  std::vector<Term> args_;
};

/// Atom with an optional negation-as-failure flag.
struct Literal {
  Term atom;
  bool negated = false;

  Literal() = default;
  explicit Literal(Term a, bool neg = false) : atom(std::move(a)), negated(neg) {}

  [[nodiscard]] Symbol predicate() const noexcept { return atom.name(); }
  [[nodiscard]] std::size_t arity() const noexcept { return atom.arity(); }
  [[nodiscard]] const std::vector<Term>& args() const noexcept { return atom.args(); }
  [[nodiscard]] bool is_ground() const { return atom.is_ground(); }

  friend bool operator==(const Literal&, const Literal&) = default;
  friend std::strong_ordering operator<=>(const Literal& a, const Literal& b);
};

struct Clause {
  Literal head;
  std::vector<Literal> body;

  [[nodiscard]] std::vector<Symbol> variables() const;
  /// Literal count including the head.
  [[nodiscard]] std::size_t size() const noexcept { return 1 + body.size(); }

  friend bool operator==(const Clause&, const Clause&) = default;
  friend std::strong_ordering operator<=>(const Clause& a, const Clause& b);
};

/// Variable bindings, kept as a small flat vector so a search can roll back by
/// truncation.
class Substitution {
 public:
  Substitution() = default;
  Substitution(std::initializer_list<std::pair<Symbol, Term>> init);

  [[nodiscard]] const Term* lookup(Symbol var) const noexcept {
    for (const auto& [v, t] : bindings_)
      if (v == var) return &t;
    return nullptr;
  }
  void bind(Symbol var, Term value) { bindings_.emplace_back(var, std::move(value)); }
  [[nodiscard]] std::size_t size() const noexcept { return bindings_.size(); }
  [[nodiscard]] bool empty() const noexcept { return bindings_.empty(); }
  void truncate(std::size_t n) { bindings_.resize(n); }
  [[nodiscard]] const std::vector<std::pair<Symbol, Term>>& bindings() const noexcept {
    return bindings_;
  }

  /// Same binding set irrespective of insertion order.
  [[nodiscard]] Substitution normalized() const;

  friend bool operator==(const Substitution& a, const Substitution& b);
  friend std::strong_ordering operator<=>(const Substitution& a, const Substitution& b);

 private:
  std::vector<std::pair<Symbol, Term>> bindings_;
};

[[nodiscard]] Term apply(const Term& t, const Substitution& s);
[[nodiscard]] Literal apply(const Literal& l, const Substitution& s);
[[nodiscard]] Clause apply(const Clause& c, const Substitution& s);

/// True when every variable of `t` is bound in `s`.
[[nodiscard]] bool ground_under(const Term& t, const Substitution& s) noexcept;
/// Hash of apply(t, s) without building it. Requires ground_under(t, s).
[[nodiscard]] std::size_t hash_under(const Term& t, const Substitution& s) noexcept;

[[nodiscard]] std::string to_string(const Term& t);
[[nodiscard]] std::string to_string(const Literal& l);
[[nodiscard]] std::string to_string(const Clause& c);
[[nodiscard]] std::string to_string(const Substitution& s);

std::ostream& operator<<(std::ostream& os, const Term& t);
std::ostream& operator<<(std::ostream& os, const Literal& l);
std::ostream& operator<<(std::ostream& os, const Clause& c);

}  // namespace evl

template <>
struct std::hash<evl::Term> {
  std::size_t operator()(const evl::Term& t) const noexcept { return t.hash(); }
};

template <>
struct std::hash<evl::Literal> {
  std::size_t operator()(const evl::Literal& l) const noexcept {
    return l.atom.hash() ^ (l.negated ? 0x9e3779b97f4a7c15ULL : 0);
  }
};
