#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "evl/fact_base.hpp"
#include "evl/spatial.hpp"
#include "evl/term.hpp"

namespace evl {

// The dialect's two domain-independent axioms:
//   holdsAt(F,T+1) :- initiatedAt(F,T).
//   holdsAt(F,T+1) :- holdsAt(F,T), not terminatedAt(F,T).
// They are built into compute_model / next_state rather than stored as clauses.

enum class HeadKind { Initiation, Termination };

[[nodiscard]] Symbol head_predicate(HeadKind kind);
[[nodiscard]] std::string_view to_string(HeadKind kind);
/// Kind of an initiatedAt/2 or terminatedAt/2 head, nullopt otherwise.
[[nodiscard]] std::optional<HeadKind> head_kind_of(const Literal& head);

/// Fluent template selecting the target complex event, e.g. moving(_,_).
class Target {
 public:
  Target() = default;
  explicit Target(Term pattern) : pattern_(std::move(pattern)) {}
  /// `functor(_F0,...,_F{arity-1})`.
  static Target named(std::string_view functor, std::size_t arity);

  [[nodiscard]] bool matches(const Term& fluent) const;
  [[nodiscard]] const Term& pattern() const noexcept { return pattern_; }
  [[nodiscard]] Symbol functor() const noexcept { return pattern_.name(); }

 private:
  Term pattern_;
};

/// One training instance: ground facts over the time pair (t, t+1).
struct Interpretation {
  std::uint64_t id = 0;
  std::int64_t t = 0;
  /// Observations at t and t+1 (happensAt events, holdsAt context).
  std::vector<Literal> narrative;
  /// holdsAt(F,t) / holdsAt(F,t+1) for target fluents; absent means false.
  std::vector<Literal> annotation;
};

/// Produces interpretations one at a time, in stream order.
class InterpretationSource {
 public:
  virtual ~InterpretationSource() = default;
  virtual std::optional<Interpretation> next() = 0;
};

class VectorSource final : public InterpretationSource {
 public:
  explicit VectorSource(std::span<const Interpretation> items) : items_(items) {}
  std::optional<Interpretation> next() override {
    if (pos_ >= items_.size()) return std::nullopt;
    return items_[pos_++];
  }

 private:
  std::span<const Interpretation> items_;
  std::size_t pos_ = 0;
};

struct Theory {
  std::vector<Clause> clauses;

  /// Total literal count, heads included.
  [[nodiscard]] std::size_t size() const noexcept;
  [[nodiscard]] bool empty() const noexcept { return clauses.empty(); }
};

/// Everything clause evaluation needs from one interpretation: an indexed fact
/// base (narrative plus derived comparison atoms), the annotation split by
/// time point, and the symbolic-constant domain. Immutable once built, so one
/// instance can be shared by concurrent learners.
class GroundingContext {
 public:
  GroundingContext(const Interpretation& interp, const Target& target,
                   std::vector<Term> derived_atoms);
  GroundingContext(const Interpretation& interp, const Target& target,
                   const SpatialVocabulary& vocabulary);

  [[nodiscard]] std::uint64_t id() const noexcept { return id_; }
  [[nodiscard]] std::int64_t t() const noexcept { return t_; }
  [[nodiscard]] const FactBase& facts() const noexcept { return facts_; }
  [[nodiscard]] const Target& target() const noexcept { return target_; }

  /// Target fluents annotated at t / t+1, sorted.
  [[nodiscard]] const std::vector<Term>& holding_now() const noexcept { return now_; }
  [[nodiscard]] const std::vector<Term>& holding_next() const noexcept { return next_; }
  [[nodiscard]] bool holds_now(const Term& fluent) const { return now_set_.contains(fluent); }
  [[nodiscard]] bool holds_next(const Term& fluent) const { return next_set_.contains(fluent); }

  /// Symbolic constants occurring as arguments of facts or annotation; head
  /// variables not bound by a clause body range over this set.
  [[nodiscard]] const std::vector<Term>& domain() const noexcept { return domain_; }

 private:
  std::uint64_t id_;
  std::int64_t t_;
  Target target_;
  FactBase facts_;
  std::vector<Term> now_, next_;
  std::unordered_set<Term> now_set_, next_set_;
  std::vector<Term> domain_;
};

/// Builds contexts for consecutive windows, reusing the derived atoms of the
/// shared time point.
class ContextBuilder {
 public:
  ContextBuilder(Target target, SpatialVocabulary vocabulary)
      : target_(std::move(target)), vocabulary_(std::move(vocabulary)) {}

  std::shared_ptr<const GroundingContext> build(const Interpretation& interp);

  [[nodiscard]] const Target& target() const noexcept { return target_; }
  [[nodiscard]] const SpatialVocabulary& vocabulary() const noexcept { return vocabulary_; }

 private:
  Target target_;
  SpatialVocabulary vocabulary_;
  std::optional<std::int64_t> cached_time_;
  std::vector<Term> cached_atoms_;
};

struct OutcomeDelta {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;

  friend bool operator==(const OutcomeDelta&, const OutcomeDelta&) = default;
};

/// Whether `clause` derives initiatedAt/terminatedAt(fluent, t).
[[nodiscard]] bool fires(const Clause& clause, const GroundingContext& ctx, const Term& fluent);

/// Distinct target fluents F for which `clause` derives its head for (F, t).
/// Head variables not bound by the seed range over ctx.domain().
[[nodiscard]] std::vector<Term> firing_fluents(const Clause& clause, const GroundingContext& ctx,
                                               const Target& target);

/// Per-clause outcome counts on one interpretation under the decoupled
/// evaluation convention:
///  - initiatedAt: every distinct fluent F it initiates at t is a TP if
///    holdsAt(F,t+1) is annotated, an FP otherwise;
///  - terminatedAt: every annotated fluent persisting from t to t+1 is a TP
///    if the clause does not terminate it, an FN if it does.
[[nodiscard]] OutcomeDelta count_outcomes(const Clause& clause, const GroundingContext& ctx,
                                          const Target& target);

/// Fluents holding at t+1 given the fluents holding at t.
[[nodiscard]] std::vector<Term> next_state(std::span<const Clause> theory,
                                           const GroundingContext& ctx,
                                           std::span<const Term> holding_now);

/// holdsAt(F,t+1) atoms entailed by the axioms, the theory and the narrative,
/// with the annotation at t as inertia source.
[[nodiscard]] std::vector<Literal> compute_model(const Theory& theory, const GroundingContext& ctx);

/// Chained recognition: each window's inertia source is the previous
/// window's prediction; a gap in time resets the state to empty.
class Recognizer {
 public:
  explicit Recognizer(const Theory& theory) : theory_(theory) {}

  /// Predicted fluents at ctx.t() + 1.
  const std::vector<Term>& step(const GroundingContext& ctx);

 private:
  const Theory& theory_;
  std::optional<std::int64_t> last_t_;
  std::vector<Term> state_;
};

/// Every predicted holdsAt(F, T) over the stream (T ranges over the second
/// time point of each window), sorted.
[[nodiscard]] std::vector<Literal> infer_stream(const Theory& theory,
                                                std::span<const Interpretation> stream,
                                                const Target& target,
                                                const SpatialVocabulary& vocabulary);

[[nodiscard]] Literal holds_at(const Term& fluent, std::int64_t time);

}  // namespace evl
