#include "evl/term.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace evl {

namespace {

constexpr std::size_t mix(std::size_t h, std::size_t v) noexcept {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

constexpr std::size_t kSymbolSeed = 0x51ed27b5a1c3e9f1ULL;
constexpr std::size_t kIntegerSeed = 0x2545f4914f6cdd1dULL;
constexpr std::size_t kCompoundSeed = 0x7a3b9c1e5d2f4a6bULL;
constexpr std::size_t kVariableSeed = 0x3c6ef372fe94f82bULL;

std::size_t hash_integer(std::int64_t v) noexcept {
  return mix(kIntegerSeed, std::hash<std::int64_t>{}(v));
}

void write(std::ostream& os, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Variable:
    case Term::Kind::Symbol:
      os << t.name().name();
      break;
    case Term::Kind::Integer:
      os << t.value();
      break;
    case Term::Kind::Compound: {
      os << t.name().name() << '(';
      bool first = true;
      for (const auto& a : t.args()) {
        if (!first) os << ',';
        first = false;
        write(os, a);
      }
      os << ')';
      break;
    }
  }
}

}  // namespace

Term Term::variable(evl::Symbol name) {
  Term t;
  t.kind_ = Kind::Variable;
  t.name_ = name;
  return t;
}

Term Term::symbol(evl::Symbol name) {
  Term t;
  t.kind_ = Kind::Symbol;
  t.name_ = name;
  return t;
}

Term Term::integer(std::int64_t value) {
  Term t;
  t.kind_ = Kind::Integer;
  t.value_ = value;
  return t;
}

Term Term::compound(evl::Symbol functor, std::vector<Term> args) {
  if (args.empty()) return symbol(functor);
  Term t;
  t.kind_ = Kind::Compound;
  t.name_ = functor;
  t.args_ = std::move(args);
  return t;
}

bool Term::is_ground() const {
  switch (kind_) {
    case Kind::Variable:
      return false;
    case Kind::Compound:
      return std::all_of(args_.begin(), args_.end(), [](const Term& a) { return a.is_ground(); });
    default:
      return true;
  }
}

std::size_t Term::hash() const noexcept {
  switch (kind_) {
    case Kind::Variable:
      return mix(kVariableSeed, name_.hash());
    case Kind::Symbol:
      return mix(kSymbolSeed, name_.hash());
    case Kind::Integer:
      return hash_integer(value_);
    case Kind::Compound: {
      std::size_t h = mix(kCompoundSeed, name_.hash());
      for (const auto& a : args_) h = mix(h, a.hash());
      return h;
    }
  }
  return 0;
}

void Term::collect_variables(std::vector<evl::Symbol>& out) const {
  if (kind_ == Kind::Variable) {
    if (std::find(out.begin(), out.end(), name_) == out.end()) out.push_back(name_);
  } else if (kind_ == Kind::Compound) {
    for (const auto& a : args_) a.collect_variables(out);
  }
}

bool operator==(const Term& a, const Term& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case Term::Kind::Integer:
      return a.value_ == b.value_;
    case Term::Kind::Compound:
      return a.name_ == b.name_ && a.args_ == b.args_;
    default:
      return a.name_ == b.name_;
  }
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
  switch (a.kind_) {
    case Term::Kind::Integer:
      return a.value_ <=> b.value_;
    case Term::Kind::Compound: {
      if (auto c = a.name_ <=> b.name_; c != 0) return c;
      if (auto c = a.args_.size() <=> b.args_.size(); c != 0) return c;
      for (std::size_t i = 0; i < a.args_.size(); ++i)
        if (auto c = a.args_[i] <=> b.args_[i]; c != 0) return c;
      return std::strong_ordering::equal;
    }
    default:
      return a.name_ <=> b.name_;
  }
}

std::strong_ordering operator<=>(const Literal& a, const Literal& b) {
  if (auto c = a.atom <=> b.atom; c != 0) return c;
  return a.negated <=> b.negated;
}

std::vector<Symbol> Clause::variables() const {
  std::vector<Symbol> out;
  head.atom.collect_variables(out);
  for (const auto& l : body) l.atom.collect_variables(out);
  return out;
}

std::strong_ordering operator<=>(const Clause& a, const Clause& b) {
  if (auto c = a.head <=> b.head; c != 0) return c;
  if (auto c = a.body.size() <=> b.body.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.body.size(); ++i)
    if (auto c = a.body[i] <=> b.body[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

Substitution::Substitution(std::initializer_list<std::pair<Symbol, Term>> init)
    : bindings_(init) {}

Substitution Substitution::normalized() const {
  Substitution out = *this;
  std::sort(out.bindings_.begin(), out.bindings_.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

bool operator==(const Substitution& a, const Substitution& b) {
  return a.normalized().bindings_ == b.normalized().bindings_;
}

std::strong_ordering operator<=>(const Substitution& a, const Substitution& b) {
  const auto na = a.normalized();
  const auto nb = b.normalized();
  const auto& x = na.bindings_;
  const auto& y = nb.bindings_;
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    if (auto c = x[i].first <=> y[i].first; c != 0) return c;
    if (auto c = x[i].second <=> y[i].second; c != 0) return c;
  }
  return x.size() <=> y.size();
}

Term apply(const Term& t, const Substitution& s) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      if (const Term* bound = s.lookup(t.name())) return *bound;
      return t;
    case Term::Kind::Compound: {
      std::vector<Term> args;
      args.reserve(t.arity());
      for (const auto& a : t.args()) args.push_back(apply(a, s));
      return Term::compound(t.name(), std::move(args));
    }
    default:
      return t;
  }
}

Literal apply(const Literal& l, const Substitution& s) { return Literal(apply(l.atom, s), l.negated); }

Clause apply(const Clause& c, const Substitution& s) {
  Clause out{apply(c.head, s), {}};
  out.body.reserve(c.body.size());
  for (const auto& l : c.body) out.body.push_back(apply(l, s));
  return out;
}

bool ground_under(const Term& t, const Substitution& s) noexcept {
  switch (t.kind()) {
    case Term::Kind::Variable: {
      const Term* bound = s.lookup(t.name());
      return bound != nullptr && bound->is_ground();
    }
    case Term::Kind::Compound:
      for (const auto& a : t.args())
        if (!ground_under(a, s)) return false;
      return true;
    default:
      return true;
  }
}

std::size_t hash_under(const Term& t, const Substitution& s) noexcept {
  switch (t.kind()) {
    case Term::Kind::Variable: {
      const Term* bound = s.lookup(t.name());
      return bound ? bound->hash() : t.hash();
    }
    case Term::Kind::Compound: {
      std::size_t h = mix(kCompoundSeed, t.name().hash());
      for (const auto& a : t.args()) h = mix(h, hash_under(a, s));
      return h;
    }
    default:
      return t.hash();
  }
}

std::string to_string(const Term& t) {
  std::ostringstream os;
  write(os, t);
  return os.str();
}

std::string to_string(const Literal& l) { return (l.negated ? "not " : "") + to_string(l.atom); }

std::string to_string(const Clause& c) {
  std::string out = to_string(c.head);
  if (!c.body.empty()) {
    out += " :- ";
    for (std::size_t i = 0; i < c.body.size(); ++i) {
      if (i) out += ", ";
      out += to_string(c.body[i]);
    }
  }
  out += '.';
  return out;
}

std::string to_string(const Substitution& s) {
  const auto n = s.normalized();
  std::string out = "{";
  bool first = true;
  for (const auto& [v, t] : n.bindings()) {
    if (!first) out += ", ";
    first = false;
    out += v.name() + "->" + to_string(t);
  }
  return out + "}";
}

std::ostream& operator<<(std::ostream& os, const Term& t) {
  write(os, t);
  return os;
}

std::ostream& operator<<(std::ostream& os, const Literal& l) { return os << to_string(l); }

std::ostream& operator<<(std::ostream& os, const Clause& c) { return os << to_string(c); }

}  // namespace evl
