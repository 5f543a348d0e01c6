#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "evl/bottom_clause.hpp"
#include "evl/event_calculus.hpp"
#include "evl/mode_bias.hpp"

namespace evl {

class DecisionLog;

/// N_r, TP_r, FP_r, FN_r.
struct ClauseStats {
  std::uint64_t n = 0;
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;

  void add(const OutcomeDelta& d) {
    ++n;
    tp += d.tp;
    fp += d.fp;
    fn += d.fn;
  }
  friend bool operator==(const ClauseStats&, const ClauseStats&) = default;
};

/// Precision for initiation clauses, recall for termination clauses, from
/// accumulated counts. 0 when the denominator is 0.
[[nodiscard]] double g_score(const ClauseStats& stats, HeadKind kind);

/// sqrt(ln(1/δ) / 2n). Throws std::domain_error("insufficient observations")
/// for n = 0.
[[nodiscard]] double hoeffding_epsilon(double delta, std::uint64_t n);

struct LearnerConfig {
  HeadKind kind = HeadKind::Initiation;
  double delta = 1e-5;
  std::size_t depth = 1;
  double s_min = 0.5;
  std::uint64_t n_min = 0;
  std::size_t max_bottom = 25;

  /// Throws ConfigError when a parameter is out of range.
  void validate() const;
};

/// One member of ρ_d(r).
struct Candidate {
  Clause clause;
  /// Positions of the body literals in the bottom clause, ascending.
  std::vector<std::uint32_t> from_bottom;
  ClauseStats stats;
};

struct LearnedClause {
  std::uint64_t id = 0;
  Clause clause;
  std::vector<std::uint32_t> from_bottom;
  /// ⊥_r; shared with every clause expanded from this one.
  std::shared_ptr<const BottomClause> bottom;
  ClauseStats stats;
  std::vector<Candidate> candidates;

  [[nodiscard]] HeadKind kind() const { return *head_kind_of(clause.head); }
};

/// Clause head(⊥) ← body(⊥)[from_bottom], with zeroed stats and its ρ_d candidates.
[[nodiscard]] LearnedClause make_learned_clause(std::shared_ptr<const BottomClause> bottom,
                                                std::vector<std::uint32_t> from_bottom,
                                                std::size_t depth, std::uint64_t id = 0);

/// ρ_d(r): body(r) plus every nonempty D ⊆ body(⊥_r) \ body(r) with |D| ≤ d,
/// deduplicated up to variable renaming, variants of r excluded. Body order
/// follows ⊥_r.
[[nodiscard]] std::vector<Candidate> specializations(const LearnedClause& r, std::size_t depth);

/// Adds one interpretation's outcomes to r and to all of its candidates.
void update_clause_stats(LearnedClause& r, const GroundingContext& ctx);

struct ExpansionDecision {
  bool expand = false;
  /// Index into r.candidates of r1; nullopt when r itself ranks first.
  std::optional<std::size_t> best;
  ClauseStats parent_stats, best_stats, second_stats;
  double g_parent = 0, g_best = 0, g_second = 0;
  double epsilon = 0, tau = 0;
  /// ΔḠ > ε held (otherwise the expansion, if any, came from ε < τ).
  bool hoeffding = false;
};

/// Ranks r and its candidates by Ḡ (r wins ties) and applies the rule
/// Ḡ(r1) > Ḡ(r) and (Ḡ(r1) − Ḡ(r2) > ε or ε < τ). Requires r.stats.n ≥ 1.
[[nodiscard]] ExpansionDecision evaluate_expansion(const LearnedClause& r, double epsilon,
                                                   double tau);

/// r1 with ⊥_r inherited, zeroed stats and fresh candidates when the rule
/// fires, otherwise r unchanged. ε is computed from cfg.delta and r.stats.n.
[[nodiscard]] LearnedClause try_expand_clause(const LearnedClause& r, const LearnerConfig& cfg,
                                              double tau);

/// S_min − Ḡ(r) > ε(δ, n), with pruning suppressed while n < n_min.
[[nodiscard]] bool prune_condition(const LearnedClause& r, const LearnerConfig& cfg);

/// Removes every clause satisfying prune_condition.
[[nodiscard]] std::vector<LearnedClause> prune(std::vector<LearnedClause> theory,
                                               const LearnerConfig& cfg);

/// Empty-bodied clause for the preferred seed of cfg.kind, or nullopt when the
/// interpretation has no usable seed. Preference: most bottom body literals,
/// then smallest ground head.
[[nodiscard]] std::optional<LearnedClause> start_new_clause(const GroundingContext& ctx,
                                                            const ModeBias& bias,
                                                            const LearnerConfig& cfg);

/// Clauses evaluated on at least n_min interpretations.
[[nodiscard]] Theory output_hypothesis(std::span<const LearnedClause> clauses,
                                       const LearnerConfig& cfg);

/// Approximate heap footprint of a term/clause, for memory accounting.
[[nodiscard]] std::size_t approx_bytes(const Term& t);
[[nodiscard]] std::size_t approx_bytes(const Clause& c);

/// State of one online learner (initiation or termination). Holds no
/// interpretations: each one is reduced to counter updates and dropped.
class Learner {
 public:
  Learner(LearnerConfig cfg, std::shared_ptr<const ModeBias> bias, DecisionLog* log = nullptr);

  [[nodiscard]] const LearnerConfig& config() const noexcept { return cfg_; }
  [[nodiscard]] const std::vector<LearnedClause>& clauses() const noexcept { return clauses_; }

  void update_stats(const GroundingContext& ctx);

  /// Seeds of this learner's kind not explained by any current clause.
  [[nodiscard]] std::vector<Seed> uncovered_seeds(const GroundingContext& ctx) const;

  /// StartNewClause for the preferred uncovered seed whose bottom is not
  /// θ-subsumed by an existing clause's bottom. Returns whether a clause was added.
  bool expand_theory(const GroundingContext& ctx);

  /// ExpandClause on every clause; returns the number of expansions.
  std::size_t expand_clauses();

  /// Returns the number of clauses removed.
  std::size_t prune_clauses();

  [[nodiscard]] Theory output() const { return output_hypothesis(clauses_, cfg_); }

  /// τ: mean of every ε computed by expand_clauses so far (0 before the first).
  [[nodiscard]] double tau() const noexcept {
    return eps_count_ ? eps_sum_ / static_cast<double>(eps_count_) : 0.0;
  }
  [[nodiscard]] std::uint64_t epsilon_count() const noexcept { return eps_count_; }

  [[nodiscard]] std::size_t state_bytes() const;
  [[nodiscard]] std::size_t peak_state_bytes() const noexcept { return peak_bytes_; }
  void track_peak() { peak_bytes_ = std::max(peak_bytes_, state_bytes()); }

  [[nodiscard]] std::uint64_t processed() const noexcept { return processed_; }
  void mark_processed() { ++processed_; }

 private:
  LearnerConfig cfg_;
  std::shared_ptr<const ModeBias> bias_;
  DecisionLog* log_;
  std::vector<LearnedClause> clauses_;
  std::uint64_t next_id_ = 1;
  double eps_sum_ = 0;
  std::uint64_t eps_count_ = 0;
  std::size_t peak_bytes_ = 0;
  std::uint64_t processed_ = 0;
};

}  // namespace evl
