#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evl/term.hpp"

namespace evl {

struct Placemarker {
  enum class Kind { Input, Output, Constant };
  Kind kind;
  Symbol type;

  friend bool operator==(const Placemarker&, const Placemarker&) = default;
};

/// A `modeh`/`modeb` template. Placemarker positions are represented in
/// `pattern` by variables `_P0`, `_P1`, ...; `slots[i]` describes `_Pi`.
struct ModeDeclaration {
  Literal pattern;
  std::vector<Placemarker> slots;

  [[nodiscard]] Symbol slot_variable(std::size_t i) const;
  /// Index of the slot variable, or slots.size() if `var` is not one.
  [[nodiscard]] std::size_t slot_index(Symbol var) const;

  /// Matches a ground literal against the template. On success returns the
  /// constant found at every slot, indexed like `slots`.
  [[nodiscard]] std::optional<std::vector<Term>> bind(const Literal& ground) const;

  /// `modeb(distanceLessThan(+person,+person,#dist,+time))` style text.
  [[nodiscard]] std::string render(std::string_view keyword) const;

  friend bool operator==(const ModeDeclaration&, const ModeDeclaration&) = default;
};

/// Language bias: head and body mode declarations plus the candidate
/// constants of `#` types.
struct ModeBias {
  std::vector<ModeDeclaration> heads;
  std::vector<ModeDeclaration> bodies;
  std::map<Symbol, std::vector<Term>> constants;

  /// Head declaration whose pattern matches `head` (e.g. initiatedAt(moving(a,b),3)).
  [[nodiscard]] const ModeDeclaration* head_mode_for(const Literal& head) const;

  [[nodiscard]] std::string render() const;
};

/// Parses one declaration per line: `modeh(...)`, `modeb(...)`,
/// `constants(type, [c1,c2,...])`, each optionally `.`-terminated; `%` starts
/// a comment. Duplicate declarations are dropped. Throws ParseError, including
/// for an unknown placemarker symbol.
[[nodiscard]] ModeBias parse_mode_bias(std::string_view text);

}  // namespace evl
