#include <doctest.h>

#include <random>

#include "evl/fact_base.hpp"
#include "evl/matching.hpp"
#include "evl/mode_bias.hpp"
#include "evl/parse.hpp"
#include "oracle/brute_force.hpp"
#include "support.hpp"

using namespace evl;
using fixtures::clause;
using fixtures::lit;

namespace {

FactBase facts_of(const std::vector<Literal>& lits) {
  std::vector<Term> atoms;
  for (const auto& l : lits) atoms.push_back(l.atom);
  return FactBase(std::move(atoms));
}

Term random_term(std::mt19937_64& rng, int depth) {
  static const char* names[] = {"a", "walking", "id1", "moving", "coords", "p"};
  static const char* vars[] = {"X", "Y", "T", "_G1", "X0"};
  switch (depth <= 0 ? rng() % 3 : rng() % 4) {
    case 0:
      return Term::symbol(names[rng() % 6]);
    case 1:
      return Term::variable(vars[rng() % 5]);
    case 2:
      return Term::integer(static_cast<std::int64_t>(rng() % 2000) - 1000);
    default: {
      std::vector<Term> args;
      for (std::size_t i = 0, n = 1 + rng() % 3; i < n; ++i) args.push_back(random_term(rng, depth - 1));
      return Term::compound(names[rng() % 6], std::move(args));
    }
  }
}

}  // namespace

TEST_CASE("parse_atom builds nested literals") {
  const Literal a = parse_atom("happensAt(walking(id1),1)");
  CHECK(a.predicate().name() == "happensAt");
  REQUIRE(a.arity() == 2);
  CHECK(a.args()[0] == Term::compound("walking", {Term::symbol("id1")}));
  CHECK(a.args()[1] == Term::integer(1));
  CHECK_FALSE(a.negated);

  const Literal b = parse_atom("holdsAt(moving(id1,id2),2)");
  CHECK(b.args()[0] == Term::compound("moving", {Term::symbol("id1"), Term::symbol("id2")}));
  CHECK(b.args()[1] == Term::integer(2));
}

TEST_CASE("parse errors carry a position") {
  CHECK_THROWS_AS((void)parse_atom("foo("), ParseError);
  try {
    (void)parse_atom("foo(a,,b)");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 7);
  }
  CHECK_THROWS_AS((void)parse_atom("Foo(a)"), ParseError);
  CHECK_THROWS_AS((void)parse_clause("p(X) :- q(X)"), ParseError);
}

TEST_CASE("variables and negation") {
  const Literal l = parse_literal("not happensAt(inactive(X),T)");
  CHECK(l.negated);
  CHECK(l.args()[0].args()[0].is_variable());
  CHECK(to_string(l) == "not happensAt(inactive(X),T)");
  const Clause c = clause("initiatedAt(moving(X,Y),T) :- happensAt(walking(X),T), not happensAt(inactive(Y),T).");
  CHECK(c.size() == 3);
  CHECK(to_string(c) ==
        "initiatedAt(moving(X,Y),T) :- happensAt(walking(X),T), not happensAt(inactive(Y),T).");
}

TEST_CASE("render/parse round trip on random terms") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 2000; ++i) {
    const Term t = random_term(rng, 3);
    const std::string text = to_string(t);
    const Term back = parse_term(text);
    CHECK(back == t);
    CHECK(to_string(back) == text);
  }
  // Whitespace is normalized away.
  CHECK(to_string(parse_atom("holdsAt( coords(id1, 201 ,454) , 1 )")) == "holdsAt(coords(id1,201,454),1)");
}

TEST_CASE("match_body examples") {
  const auto table = fixtures::two_person();
  std::vector<Literal> time1;
  for (const auto& l : table.narrative)
    if (l.args().back() == Term::integer(1)) time1.push_back(l);
  const FactBase facts = facts_of(time1);

  const auto walking = match_body(fixtures::lits({"happensAt(walking(X),T)"}), facts, {});
  REQUIRE(walking.size() == 2);
  CHECK(walking[0] == Substitution{{Symbol("X"), Term::symbol("id1")}, {Symbol("T"), Term::integer(1)}});
  CHECK(walking[1] == Substitution{{Symbol("X"), Term::symbol("id2")}, {Symbol("T"), Term::integer(1)}});

  const Substitution seed{{Symbol("Q"), Term::symbol("z")}};
  const auto empty = match_body({}, facts, seed);
  REQUIRE(empty.size() == 1);
  CHECK(empty[0] == seed);

  CHECK(match_body(fixtures::lits({"happensAt(inactive(X),T)"}), facts, {}).empty());
}

TEST_CASE("match_body agrees with brute-force enumeration") {
  std::mt19937_64 rng(2024);
  std::size_t nonempty = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Interpretation interp = fixtures::random_interpretation(rng);
    const Clause c = fixtures::random_clause(rng, 3);
    std::set<Term> facts(oracle::spatial_atoms(interp.narrative, oracle::thresholds_of({c})));
    for (const auto& l : interp.narrative) facts.insert(l.atom);
    const FactBase base(std::vector<Term>(facts.begin(), facts.end()));
    std::set<Term> universe = oracle::leaf_constants(facts);
    // Safe bodies only: the oracle ranges head-only variables over the universe,
    // matching leaves them unbound, so compare on the body alone.
    const Substitution seed{{Symbol("T"), Term::integer(interp.t)}};
    universe.insert(Term::integer(interp.t));
    const auto expected = oracle::enumerate_matches(c.body, facts, seed, universe);
    const auto actual = match_body(c.body, base, seed);
    CHECK_MESSAGE(actual == expected, to_string(c));
    nonempty += !expected.empty();
  }
  CHECK(nonempty > 30);
}

TEST_CASE("theta_subsumes examples") {
  const Clause c = clause("initiatedAt(moving(X,Y),T) :- happensAt(walking(X),T), distanceLessThan(X,Y,25,T).");
  CHECK(theta_subsumes(c, c));
  CHECK(theta_subsumes(clause("initiatedAt(moving(A,B),S)."), c));
  CHECK_FALSE(theta_subsumes(clause("p(X) :- q(X), r(X)."), clause("p(a) :- q(a).")));
  CHECK(theta_subsumes(clause("p(X) :- q(X)."), clause("p(a) :- q(a), r(a).")));
  CHECK_FALSE(theta_subsumes(clause("p(X) :- not q(X)."), clause("p(a) :- q(a).")));
}

TEST_CASE("theta_subsumes is reflexive, transitive and matches brute force") {
  std::mt19937_64 rng(99);
  std::vector<Clause> corpus;
  for (int i = 0; i < 60; ++i) corpus.push_back(fixtures::random_clause(rng, 3));
  std::size_t related = 0;
  for (const auto& a : corpus) {
    CHECK(theta_subsumes(a, a));
    for (const auto& b : corpus) {
      const bool ab = theta_subsumes(a, b);
      CHECK_MESSAGE(ab == oracle::subsumes(a, b), to_string(a) << " vs " << to_string(b));
      if (!ab) continue;
      ++related;
      for (const auto& c : corpus)
        if (theta_subsumes(b, c)) CHECK(theta_subsumes(a, c));
    }
  }
  CHECK(related > corpus.size());
}

TEST_CASE("parse_mode_bias") {
  const ModeBias bias = parse_mode_bias(
      "% moving\n"
      "modeh(initiatedAt(moving(+person,+person),+time))\n"
      "modeb(distanceLessThan(+person,+person,#dist,+time)).\n"
      "modeb(distanceLessThan(+person,+person,#dist,+time))\n"
      "modeb(orientation(+person,-angle,+time))\n"
      "constants(dist,[25,30])\n");
  REQUIRE(bias.heads.size() == 1);
  const auto& h = bias.heads[0];
  REQUIRE(h.slots.size() == 3);
  CHECK(h.slots[0].kind == Placemarker::Kind::Input);
  CHECK(h.slots[0].type == Symbol("person"));
  CHECK(h.slots[1].kind == Placemarker::Kind::Input);
  CHECK(h.slots[2].type == Symbol("time"));

  REQUIRE(bias.bodies.size() == 2);  // duplicate dropped
  const auto& d = bias.bodies[0];
  REQUIRE(d.slots.size() == 4);
  CHECK(d.slots[2].kind == Placemarker::Kind::Constant);
  CHECK(d.slots[2].type == Symbol("dist"));
  CHECK(bias.bodies[1].slots[1].kind == Placemarker::Kind::Output);
  CHECK(bias.constants.at(Symbol("dist")) == std::vector<Term>{Term::integer(25), Term::integer(30)});

  const auto bound = d.bind(lit("distanceLessThan(id1,id2,25,3)"));
  REQUIRE(bound);
  CHECK((*bound)[2] == Term::integer(25));
  CHECK_FALSE(d.bind(lit("distanceMoreThan(id1,id2,25,3)")));

  CHECK(parse_mode_bias(bias.render()).bodies == bias.bodies);
  CHECK_THROWS_AS((void)parse_mode_bias("modeb(p(*x))"), ParseError);
  CHECK_THROWS_AS((void)parse_mode_bias("modex(p(+x))"), ParseError);
}
