#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "evl/event_calculus.hpp"
#include "evl/mode_bias.hpp"

namespace evl {

/// Abduced head atom kind(fluent, time) explaining one annotation transition.
struct Seed {
  HeadKind kind = HeadKind::Initiation;
  Term fluent;
  std::int64_t time = 0;

  [[nodiscard]] Literal head() const;

  friend bool operator==(const Seed&, const Seed&) = default;
  friend std::strong_ordering operator<=>(const Seed& a, const Seed& b);
};

struct BottomClause {
  Literal head;
  std::vector<Literal> body;
  /// Index into ModeBias::bodies of the declaration each body literal instantiates.
  std::vector<std::size_t> body_modes;
  /// Variable -> originating constant, filled by variabilize.
  std::vector<std::pair<Symbol, Term>> bindings;

  [[nodiscard]] Clause as_clause() const { return Clause{head, body}; }
};

/// Closed-form abduction in the two-axiom dialect: a fluent false at t and
/// true at t+1 needs initiatedAt(F,t); true at t and false at t+1 needs
/// terminatedAt(F,t). Sorted.
[[nodiscard]] std::vector<Seed> abduce_seeds(const GroundingContext& ctx);
[[nodiscard]] std::vector<Seed> abduce_seeds(const Interpretation& interp, const Target& target);

/// Ground bottom clause for `seed`. Collects, in rounds, every fact matching a
/// positive modeb whose `+` slots hold constants already known (from the head
/// or earlier `-` slots, by type) and whose `#` slots hold listed constants.
/// Stops at `max_body` literals.
[[nodiscard]] BottomClause saturate(const Seed& seed, const GroundingContext& ctx,
                                    const ModeBias& bias, std::size_t max_body = 25);
/// Convenience overload that derives comparison atoms from the bias.
[[nodiscard]] BottomClause saturate(const Seed& seed, const Interpretation& interp,
                                    const Target& target, const ModeBias& bias,
                                    std::size_t max_body = 25);

/// Replaces `+`/`-` slot constants by variables, one variable per distinct
/// constant: `T`, `T1`, ... for the `time` type, `X0`, `X1`, ... otherwise,
/// numbered in order of first occurrence (head first). `#` constants stay.
[[nodiscard]] BottomClause variabilize(const BottomClause& ground, const ModeBias& bias);

}  // namespace evl
