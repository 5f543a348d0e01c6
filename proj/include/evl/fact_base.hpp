#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "evl/term.hpp"

namespace evl {

/// Immutable indexed set of ground atoms.
///
/// Atoms are grouped by predicate/arity and, when the first argument is a
/// compound, additionally by that compound's functor, so a pattern such as
/// `happensAt(walking(X),T)` only scans `happensAt/2` facts about `walking/1`.
/// Fully bound patterns are answered through a hash lookup.
class FactBase {
 public:
  FactBase() = default;
  explicit FactBase(std::vector<Term> atoms);

  [[nodiscard]] std::span<const Term> atoms() const noexcept { return atoms_; }
  [[nodiscard]] std::size_t size() const noexcept { return atoms_.size(); }

  [[nodiscard]] bool contains(const Term& ground) const;
  /// True if apply(pattern, s) is in the base. Requires ground_under(pattern, s).
  [[nodiscard]] bool contains_instance(const Term& pattern, const Substitution& s) const;

  /// Indices of atoms that could unify with `pattern`, in sorted atom order.
  [[nodiscard]] std::span<const std::uint32_t> candidates(const Term& pattern) const;

 private:
  struct Key {
    Symbol predicate;
    std::uint32_t arity = 0;
    Symbol first_functor;
    std::uint32_t first_arity = 0;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      return k.predicate.hash() * 31 + k.arity * 7 + k.first_functor.hash() * 131 + k.first_arity;
    }
  };

  static Key coarse_key(const Term& t);
  static bool fine_key(const Term& t, Key& out);

  std::vector<Term> atoms_;
  std::unordered_multimap<std::size_t, std::uint32_t> by_hash_;
  std::unordered_map<Key, std::vector<std::uint32_t>, KeyHash> coarse_;
  std::unordered_map<Key, std::vector<std::uint32_t>, KeyHash> fine_;
};

}  // namespace evl
