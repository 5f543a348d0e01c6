#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "evl/bottom_clause.hpp"
#include "evl/decision_log.hpp"
#include "evl/errors.hpp"
#include "evl/learner.hpp"
#include "evl/matching.hpp"
#include "evl/stream_io.hpp"
#include "evl/synthetic.hpp"
#include "support.hpp"

using namespace evl;
using fixtures::lit;
using fixtures::moving;

namespace {

// ε(1e-5, n) evaluated at 30 digits.
constexpr double kEps1000 = 0.0758713564692573175;
constexpr double kEps4000 = 0.0379356782346286588;

/// Bottom clause initiatedAt(moving(X0,X1),T) :- happensAt(eK(X0),T), K = 1..size.
std::shared_ptr<const BottomClause> synthetic_bottom(std::size_t size, HeadKind kind = HeadKind::Initiation) {
  BottomClause b;
  b.head = lit(kind == HeadKind::Initiation ? "initiatedAt(moving(X0,X1),T)" : "terminatedAt(moving(X0,X1),T)");
  for (std::size_t k = 1; k <= size; ++k) {
    b.body.push_back(lit("happensAt(e" + std::to_string(k) + "(X0),T)"));
    b.body_modes.push_back(k - 1);
  }
  return std::make_shared<const BottomClause>(std::move(b));
}

ClauseStats init_stats(std::uint64_t n, std::uint64_t tp, std::uint64_t fp) { return {n, tp, fp, 0}; }

GroundingContext context(const Interpretation& i) {
  return GroundingContext(i, moving(), SpatialVocabulary::from_bias(fixtures::moving_bias()));
}

}  // namespace

TEST_CASE("g_score") {
  CHECK(g_score({4, 3, 1, 0}, HeadKind::Initiation) == doctest::Approx(0.75));
  CHECK(g_score({4, 0, 0, 0}, HeadKind::Termination) == 0.0);
  CHECK(g_score({4, 0, 0, 0}, HeadKind::Initiation) == 0.0);
  CHECK(g_score({10, 9, 5, 1}, HeadKind::Termination) == doctest::Approx(0.9));
  for (std::uint64_t tp = 0; tp < 20; ++tp)
    for (std::uint64_t fp = 0; fp < 20; fp += 3)
      for (auto kind : {HeadKind::Initiation, HeadKind::Termination}) {
        const double g = g_score({1, tp, fp, fp}, kind);
        CHECK(g >= 0.0);
        CHECK(g <= 1.0);
      }
}

TEST_CASE("hoeffding_epsilon") {
  CHECK(hoeffding_epsilon(1e-5, 1000) == doctest::Approx(kEps1000).epsilon(1e-12));
  CHECK(hoeffding_epsilon(1e-5, 4000) == doctest::Approx(kEps4000).epsilon(1e-12));
  for (std::uint64_t n : {1u, 7u, 1000u})
    CHECK(hoeffding_epsilon(1.0, n) == 0.0);
  for (std::uint64_t n = 1; n < 500; ++n) CHECK(hoeffding_epsilon(1e-5, n + 1) < hoeffding_epsilon(1e-5, n));
  CHECK_THROWS_WITH_AS((void)hoeffding_epsilon(1e-5, 0), "insufficient observations", std::domain_error);
}

TEST_CASE("specializations count") {
  const auto bottom = synthetic_bottom(15);
  CHECK(make_learned_clause(bottom, {}, 1).candidates.size() == 15);
  CHECK(make_learned_clause(bottom, {}, 2).candidates.size() == 120);

  std::vector<std::uint32_t> all(15);
  for (std::uint32_t k = 0; k < 15; ++k) all[k] = k;
  CHECK(make_learned_clause(bottom, all, 2).candidates.empty());

  const LearnedClause r = make_learned_clause(bottom, {2, 7}, 2);
  CHECK(r.clause.body.size() == 2);
  CHECK(r.candidates.size() == 13 + 13 * 12 / 2);
  for (const auto& c : r.candidates) {
    CHECK(theta_subsumes(r.clause, c.clause));
    CHECK(theta_subsumes(c.clause, bottom->as_clause()));
    CHECK(c.clause.body.size() > r.clause.body.size());
    CHECK(c.clause.body.size() <= r.clause.body.size() + 2);
    CHECK(c.stats == ClauseStats{});
  }
}

TEST_CASE("specializations drop variants") {
  BottomClause b;
  b.head = lit("initiatedAt(moving(X0,X1),T)");
  // Two output literals differing only in the name of a fresh variable.
  b.body = fixtures::lits({"holdsAt(coords(X0,X2,X3),T)", "holdsAt(coords(X0,X4,X5),T)"});
  b.body_modes = {0, 0};
  const auto r = make_learned_clause(std::make_shared<const BottomClause>(b), {}, 1);
  CHECK(r.candidates.size() == 1);
}

TEST_CASE("expansion examples") {
  LearnedClause r = make_learned_clause(synthetic_bottom(3), {}, 1);
  REQUIRE(r.candidates.size() == 3);
  r.stats = init_stats(1000, 600, 400);
  r.candidates[0].stats = init_stats(1000, 700, 300);
  r.candidates[1].stats = init_stats(1000, 900, 100);
  r.candidates[2].stats = init_stats(1000, 100, 900);

  LearnerConfig cfg;
  auto d = evaluate_expansion(r, hoeffding_epsilon(cfg.delta, 1000), 0.0);
  CHECK(d.expand);
  CHECK(d.hoeffding);
  CHECK(d.best == 1u);
  CHECK(d.g_best == doctest::Approx(0.9));
  CHECK(d.g_second == doctest::Approx(0.7));
  CHECK(d.epsilon == doctest::Approx(kEps1000));

  const LearnedClause r1 = try_expand_clause(r, cfg, 0.0);
  CHECK(r1.clause == r.candidates[1].clause);
  CHECK(r1.bottom == r.bottom);
  CHECK(r1.stats == ClauseStats{});
  CHECK(r1.candidates.size() == 2);

  // Parent ranks above every candidate.
  r.stats = init_stats(1000, 950, 50);
  d = evaluate_expansion(r, 0.0, 1.0);
  CHECK_FALSE(d.expand);
  CHECK_FALSE(d.best.has_value());
  CHECK(try_expand_clause(r, cfg, 1.0).clause == r.clause);

  // Tied leaders above the parent: only the ε < τ rule fires.
  r.stats = init_stats(1000, 600, 400);
  r.candidates[0].stats = init_stats(1000, 800, 200);
  r.candidates[1].stats = init_stats(1000, 800, 200);
  d = evaluate_expansion(r, kEps1000, kEps1000 * 2);
  CHECK(d.expand);
  CHECK_FALSE(d.hoeffding);
  CHECK(d.best == 0u);
  CHECK_FALSE(evaluate_expansion(r, kEps1000, kEps1000 / 2).expand);

  // A candidate tied with the parent loses to it.
  r.stats = init_stats(1000, 800, 200);
  CHECK_FALSE(evaluate_expansion(r, 0.0, 1.0).expand);
}

TEST_CASE("prune examples") {
  LearnerConfig cfg;
  cfg.s_min = 0.7;
  LearnedClause r = make_learned_clause(synthetic_bottom(2), {}, 1);
  r.stats = init_stats(1000, 500, 500);
  CHECK(prune_condition(r, cfg));
  LearnedClause kept = r;
  kept.stats = init_stats(1000, 690, 310);
  CHECK_FALSE(prune_condition(kept, cfg));
  CHECK(prune({r, kept}, cfg).size() == 1);

  LearnerConfig lenient;
  lenient.s_min = 0.0;
  r.stats = init_stats(1000, 0, 1000);
  CHECK_FALSE(prune_condition(r, lenient));

  LearnerConfig warm = cfg;
  warm.n_min = 2000;
  r.stats = init_stats(1000, 0, 1000);
  CHECK_FALSE(prune_condition(r, warm));
  r.stats = init_stats(0, 0, 0);
  CHECK_FALSE(prune_condition(r, cfg));
}

TEST_CASE("start_new_clause") {
  const ModeBias bias = fixtures::moving_bias();
  LearnerConfig init_cfg;
  const auto interp = fixtures::two_person();
  const auto r = start_new_clause(context(interp), bias, init_cfg);
  REQUIRE(r);
  CHECK(r->clause == fixtures::clause("initiatedAt(moving(X0,X1),T)."));
  CHECK(r->stats == ClauseStats{});
  CHECK(r->bottom->body.size() == 14);
  CHECK(r->candidates.size() == 14);

  Interpretation quiet = interp;
  quiet.annotation.clear();
  CHECK_FALSE(start_new_clause(context(quiet), bias, init_cfg));

  LearnerConfig term_cfg;
  term_cfg.kind = HeadKind::Termination;
  CHECK_FALSE(start_new_clause(context(interp), bias, term_cfg));
  Interpretation ending;
  ending.t = 20;
  ending.narrative = fixtures::lits({"happensAt(inactive(id1),20)", "happensAt(walking(id2),20)",
                                     "holdsAt(coords(id1,0,0),20)", "holdsAt(coords(id2,50,0),20)"});
  ending.annotation = fixtures::lits({"holdsAt(moving(id1,id2),20)"});
  const auto t = start_new_clause(context(ending), bias, term_cfg);
  REQUIRE(t);
  CHECK(t->clause == fixtures::clause("terminatedAt(moving(X0,X1),T)."));
}

TEST_CASE("output_hypothesis gates on n_min") {
  LearnerConfig cfg;
  cfg.n_min = 1000;
  std::vector<LearnedClause> clauses;
  for (std::uint64_t n : {0u, 999u, 1000u, 5000u}) {
    auto r = make_learned_clause(synthetic_bottom(3), {static_cast<std::uint32_t>(clauses.size() % 3)}, 1);
    r.stats.n = n;
    clauses.push_back(r);
  }
  const Theory out = output_hypothesis(clauses, cfg);
  REQUIRE(out.clauses.size() == 2);
  CHECK(out.clauses[0] == clauses[2].clause);
  CHECK(out.clauses[1] == clauses[3].clause);
  cfg.n_min = 0;
  CHECK(output_hypothesis(clauses, cfg).clauses.size() == 4);
  cfg.n_min = 1000;
  CHECK(output_hypothesis(std::span<const LearnedClause>(clauses.data(), 1), cfg).clauses.empty());
}

TEST_CASE("config validation") {
  LearnerConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  for (double delta : {0.0, 1.0, -0.5, 2.0}) {
    LearnerConfig bad;
    bad.delta = delta;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
  }
  LearnerConfig shallow;
  shallow.depth = 0;
  CHECK_THROWS_AS(shallow.validate(), ConfigError);
  LearnerConfig over;
  over.s_min = 1.5;
  CHECK_THROWS_AS(over.validate(), ConfigError);
}

TEST_CASE("update_stats feeds the clause and its candidates") {
  auto bias = std::make_shared<const ModeBias>(fixtures::moving_bias());
  Learner learner(LearnerConfig{}, bias);
  const auto interp = fixtures::two_person();
  learner.update_stats(context(interp));
  CHECK(learner.clauses().empty());
  REQUIRE(learner.expand_theory(context(interp)));
  learner.update_stats(context(interp));
  const auto& r = learner.clauses().front();
  // The empty body fires for all four ordered pairs over {id1,id2}.
  CHECK(r.stats == ClauseStats{1, 1, 3, 0});
  for (const auto& c : r.candidates) {
    CHECK(c.stats.n == 1);
    CHECK(c.stats.tp + c.stats.fp <= r.stats.tp + r.stats.fp);
  }
  // The redundancy gate stops a second identical clause.
  CHECK_FALSE(learner.expand_theory(context(interp)));
}

TEST_CASE("tau is the running mean of attempted epsilons") {
  std::ostringstream log_text;
  DecisionLog log(log_text);
  auto bias = std::make_shared<const ModeBias>(fixtures::moving_bias());
  Learner learner(LearnerConfig{}, bias, &log);
  CHECK(learner.tau() == 0.0);

  GeneratorConfig gen;
  gen.length = 600;
  gen.seed = 3;
  SyntheticSource frames(Theory{parse_program(fixtures::kGroundTruth)}, gen);
  Windower source(frames, moving());
  while (auto interp = source.next()) {
    const auto ctx = context(*interp);
    learner.update_stats(ctx);
    if (!learner.expand_theory(ctx)) learner.expand_clauses();
  }
  REQUIRE(learner.epsilon_count() > 0);

  double sum = 0;
  std::uint64_t count = 0;
  std::istringstream in(log_text.str());
  for (std::string line; std::getline(in, line);) {
    const auto rec = nlohmann::json::parse(line);
    if (rec["type"] != "attempts") continue;
    for (const auto& item : rec["items"]) {
      sum += std::sqrt(std::log(1.0 / 1e-5) / (2.0 * item[1].get<double>()));
      ++count;
    }
  }
  CHECK(count == learner.epsilon_count());
  CHECK(learner.tau() == doctest::Approx(sum / static_cast<double>(count)).epsilon(1e-12));
}
