#pragma once

#include <functional>
#include <span>
#include <vector>

#include "evl/fact_base.hpp"
#include "evl/term.hpp"

namespace evl {

/// One-sided matching: extends `s` so that apply(pattern, s) == target.
/// Variables occurring in `target` are treated as rigid constants. On failure
/// `s` is left unchanged.
bool match(const Term& pattern, const Term& target, Substitution& s);

/// apply(pattern, s) == ground, evaluated without building the instance.
[[nodiscard]] bool instance_equal(const Term& pattern, const Substitution& s, const Term& ground);

/// Visits every substitution extending `seed` under which each positive
/// literal of `body` is in `facts` and no negated literal is (closed world
/// over `facts`). A negated literal whose variables are not all bound by the
/// seed or by positive literals succeeds iff no fact matches it.
///
/// Literals are joined most-bound-first; the visited set does not depend on
/// the literal order. Returning false from `visit` stops the search.
/// Returns false iff the search was stopped.
bool for_each_match(std::span<const Literal> body, const FactBase& facts, const Substitution& seed,
                    const std::function<bool(const Substitution&)>& visit);

/// All answers of for_each_match, normalized, sorted and deduplicated.
[[nodiscard]] std::vector<Substitution> match_body(std::span<const Literal> body,
                                                   const FactBase& facts,
                                                   const Substitution& seed);

/// True if at least one answer exists.
[[nodiscard]] bool body_satisfiable(std::span<const Literal> body, const FactBase& facts,
                                    const Substitution& seed);

/// True iff some θ gives head(c1)θ = head(c2) and body(c1)θ ⊆ body(c2).
[[nodiscard]] bool theta_subsumes(const Clause& c1, const Clause& c2);

}  // namespace evl
