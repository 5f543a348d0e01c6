#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <vector>

#include "evl/event_calculus.hpp"
#include "evl/learner.hpp"

namespace evl {

enum class Failure { FP, FN };
enum class Action { TheoryExpansion, ClauseExpansion };

struct FailureKind {
  HeadKind learner;
  Failure failure;
  friend bool operator==(const FailureKind&, const FailureKind&) = default;
};

/// (init, FP) → clause expansion, (init, FN) → theory expansion,
/// (term, FP) → theory expansion, (term, FN) → clause expansion.
[[nodiscard]] Action dispatch(HeadKind learner, Failure failure);

/// Failures of the learner's current clauses on one interpretation, with the
/// annotation at t as inertia source. Initiation: FN if a transition into
/// holding is not initiated, FP if a clause initiates a fluent false at t+1.
/// Termination: FP if an ending fluent is not terminated, FN if a clause
/// terminates a persisting fluent. At most one entry per Failure, FP first.
[[nodiscard]] std::vector<FailureKind> detect_failures(const Learner& learner,
                                                       const GroundingContext& ctx);

struct StepOutcome {
  std::vector<FailureKind> failures;
  bool theory_expanded = false;
  std::size_t clause_expansions = 0;
  std::size_t pruned = 0;
};

/// One iteration of the online loop for one learner: update statistics,
/// detect failures, expand the theory if a dispatched failure asks for it and
/// a clause can be added, otherwise try to expand every clause; then prune.
StepOutcome learner_step(Learner& learner, const GroundingContext& ctx);

struct OnlineConfig {
  double delta = 1e-5;
  std::size_t depth = 1;
  double s_min = 0.5;
  std::uint64_t n_min = 0;
  std::size_t max_bottom = 25;
  /// Interpretations buffered per learner before the reader blocks.
  std::size_t queue_capacity = 64;
  /// Run the two learners on their own threads.
  bool concurrent = true;
  DecisionLog* log = nullptr;
  /// Status line every `progress_every` interpretations per learner (0: never).
  std::ostream* progress = nullptr;
  std::uint64_t progress_every = 0;
  /// Record each learner's peak state size after every step.
  bool track_memory = false;

  [[nodiscard]] LearnerConfig learner(HeadKind kind) const;
};

struct OnlineResult {
  std::unique_ptr<Learner> init;
  std::unique_ptr<Learner> term;
  double init_seconds = 0;
  double term_seconds = 0;
  std::uint64_t interpretations = 0;
  std::uint64_t theory_expansions[2] = {0, 0};
  std::uint64_t clause_expansions[2] = {0, 0};
  std::uint64_t prunes[2] = {0, 0};

  /// The slower learner's processing time.
  [[nodiscard]] double train_seconds() const { return std::max(init_seconds, term_seconds); }
  [[nodiscard]] std::size_t peak_state_bytes() const {
    return init->peak_state_bytes() + term->peak_state_bytes();
  }
};

/// Feeds every interpretation, in order, to an initiation and a termination
/// learner. Errors raised by the source are rethrown after both learners stop.
[[nodiscard]] OnlineResult run_online(InterpretationSource& stream,
                                      std::shared_ptr<const ModeBias> bias, const Target& target,
                                      const OnlineConfig& cfg);

/// Initiation clauses followed by termination clauses.
[[nodiscard]] Theory merge_output(const Theory& init, const Theory& term);

}  // namespace evl
