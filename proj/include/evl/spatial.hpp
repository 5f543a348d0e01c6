#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "evl/mode_bias.hpp"
#include "evl/term.hpp"

namespace evl {

/// Threshold constants per derived comparison predicate
/// (`distanceLessThan`, `distanceMoreThan`, `directionLessThan`,
/// `directionMoreThan`).
struct SpatialVocabulary {
  std::map<Symbol, std::vector<std::int64_t>> thresholds;

  /// Thresholds listed for the `#` slot type of each derived modeb.
  static SpatialVocabulary from_bias(const ModeBias& bias);
  /// Thresholds appearing in derived literals of the given clauses.
  static SpatialVocabulary from_clauses(std::span<const Clause> clauses);

  void merge(const SpatialVocabulary& other);
  [[nodiscard]] bool empty() const noexcept { return thresholds.empty(); }
};

[[nodiscard]] bool is_spatial_predicate(Symbol predicate);

/// Smallest absolute difference between two headings in degrees, in [0,180].
[[nodiscard]] double heading_difference(double a, double b);

/// Comparison atoms at `time` for every ordered pair of distinct entities
/// with `holdsAt(coords(P,X,Y),time)` (distance tests) or
/// `holdsAt(direction(P,D),time)` (direction tests), one per vocabulary
/// threshold that the pair satisfies. Comparisons are strict.
[[nodiscard]] std::vector<Term> derive_spatial(std::span<const Term> atoms, std::int64_t time,
                                               const SpatialVocabulary& vocabulary);

}  // namespace evl
