#pragma once

// Fixtures and random generators shared by the test binaries.

#include <random>
#include <string>
#include <vector>

#include "evl/event_calculus.hpp"
#include "evl/mode_bias.hpp"
#include "evl/parse.hpp"
#include "evl/spatial.hpp"

namespace fixtures {

inline evl::Literal lit(std::string_view text) { return evl::parse_literal(text); }
inline evl::Clause clause(std::string_view text) { return evl::parse_clause(text); }

inline std::vector<evl::Literal> lits(std::initializer_list<std::string_view> texts) {
  std::vector<evl::Literal> out;
  for (auto t : texts) out.push_back(lit(t));
  return out;
}

inline const evl::Target& moving() {
  static const evl::Target t = evl::Target::named("moving", 2);
  return t;
}

/// The two-person example: both walking at 1 and 2, 32.2 apart, near-equal
/// headings; moving(id1,id2) annotated at 2 only.
inline evl::Interpretation two_person() {
  evl::Interpretation i;
  i.id = 0;
  i.t = 1;
  i.narrative = lits({"happensAt(walking(id1),1)", "happensAt(walking(id2),1)",
                      "holdsAt(coords(id1,201,454),1)", "holdsAt(coords(id2,230,440),1)",
                      "holdsAt(direction(id1,270),1)", "holdsAt(direction(id2,270),1)",
                      "happensAt(walking(id1),2)", "happensAt(walking(id2),2)",
                      "holdsAt(coords(id1,201,454),2)", "holdsAt(coords(id2,227,440),2)",
                      "holdsAt(direction(id1,275),2)", "holdsAt(direction(id2,278),2)"});
  i.annotation = lits({"holdsAt(moving(id1,id2),2)"});
  return i;
}

inline const char* kTwoPersonFacts =
    "happensAt(walking(id1),1).\nhappensAt(walking(id2),1).\n"
    "holdsAt(coords(id1,201,454),1).\nholdsAt(coords(id2,230,440),1).\n"
    "holdsAt(direction(id1,270),1).\nholdsAt(direction(id2,270),1).\n"
    "happensAt(walking(id1),2).\nhappensAt(walking(id2),2).\n"
    "holdsAt(coords(id1,201,454),2).\nholdsAt(coords(id2,227,440),2).\n"
    "holdsAt(direction(id1,275),2).\nholdsAt(direction(id2,278),2).\n"
    "holdsAt(moving(id1,id2),2).\n";

inline const char* kGroundTruth =
    "initiatedAt(moving(X,Y),T) :- happensAt(walking(X),T), happensAt(walking(Y),T), "
    "distanceLessThan(X,Y,25,T), directionLessThan(X,Y,45,T).\n"
    "terminatedAt(moving(X,Y),T) :- happensAt(inactive(X),T), distanceMoreThan(X,Y,30,T).\n";

inline const char* kMovingBias =
    "modeh(initiatedAt(moving(+person,+person),+time))\n"
    "modeh(terminatedAt(moving(+person,+person),+time))\n"
    "modeb(happensAt(walking(+person),+time))\n"
    "modeb(happensAt(active(+person),+time))\n"
    "modeb(happensAt(inactive(+person),+time))\n"
    "modeb(distanceLessThan(+person,+person,#dist,+time))\n"
    "modeb(distanceMoreThan(+person,+person,#dist,+time))\n"
    "modeb(directionLessThan(+person,+person,#angle,+time))\n"
    "constants(dist,[25,30,34,40])\n"
    "constants(angle,[45,90])\n";

inline evl::ModeBias moving_bias() { return evl::parse_mode_bias(kMovingBias); }

/// Random interpretation over up to `max_entities` people with at most
/// `max_facts` narrative facts at times t and t+1, plus a random annotation.
inline evl::Interpretation random_interpretation(std::mt19937_64& rng, std::size_t max_entities = 4,
                                                 std::size_t max_facts = 20) {
  std::uniform_int_distribution<std::size_t> n_ent(2, max_entities);
  const std::size_t entities = n_ent(rng);
  const std::int64_t t = std::uniform_int_distribution<std::int64_t>(0, 50)(rng);
  std::vector<std::string> ids;
  for (std::size_t i = 1; i <= entities; ++i) ids.push_back("id" + std::to_string(i));
  static const char* states[] = {"walking", "active", "inactive"};
  std::vector<std::string> pool;
  for (std::int64_t time : {t, t + 1}) {
    const std::string ts = std::to_string(time);
    for (const auto& id : ids) {
      pool.push_back("happensAt(" + std::string(states[rng() % 3]) + "(" + id + ")," + ts + ")");
      pool.push_back("holdsAt(coords(" + id + "," + std::to_string(rng() % 60) + "," +
                     std::to_string(rng() % 60) + ")," + ts + ")");
      pool.push_back("holdsAt(direction(" + id + "," + std::to_string((rng() % 8) * 45 + rng() % 20) + ")," +
                     ts + ")");
    }
  }
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(std::min(pool.size(), 1 + rng() % max_facts));

  evl::Interpretation i;
  i.t = t;
  for (const auto& p : pool) i.narrative.push_back(evl::parse_literal(p));
  for (const auto& a : ids)
    for (const auto& b : ids) {
      if (a == b) continue;
      for (std::int64_t time : {t, t + 1})
        if (rng() % 3 == 0)
          i.annotation.push_back(evl::parse_literal("holdsAt(moving(" + a + "," + b + ")," + std::to_string(time) + ")"));
    }
  return i;
}

/// Random safe clause over the moving vocabulary: head variables X, Y, T,
/// body of up to `max_body` literals over X, Y, Z, optionally negated
/// happensAt literals whose variable occurs positively.
inline evl::Clause random_clause(std::mt19937_64& rng, std::size_t max_body = 3, bool allow_negation = true) {
  static const char* states[] = {"walking", "active", "inactive"};
  static const char* vars[] = {"X", "Y", "Z"};
  static const char* comparisons[] = {"distanceLessThan", "distanceMoreThan", "directionLessThan"};
  static const int thresholds[][3] = {{10, 25, 40}, {10, 25, 40}, {30, 45, 90}};
  const bool init = rng() % 2 == 0;
  std::string text = std::string(init ? "initiatedAt" : "terminatedAt") + "(moving(X,Y),T)";
  std::vector<std::string> body;
  std::vector<std::string> positive_vars;
  const std::size_t n = rng() % (max_body + 1);
  for (std::size_t k = 0; k < n; ++k) {
    if (rng() % 2 == 0) {
      const std::string v = vars[rng() % 3];
      body.push_back("happensAt(" + std::string(states[rng() % 3]) + "(" + v + "),T)");
      positive_vars.push_back(v);
    } else {
      const std::size_t c = rng() % 3;
      std::string a = vars[rng() % 3], b = vars[rng() % 3];
      if (a == b) b = a == "X" ? "Y" : "X";
      body.push_back(std::string(comparisons[c]) + "(" + a + "," + b + "," + std::to_string(thresholds[c][rng() % 3]) +
                     ",T)");
      positive_vars.push_back(a);
      positive_vars.push_back(b);
    }
  }
  if (allow_negation && !positive_vars.empty() && rng() % 3 == 0) {
    const std::string v = positive_vars[rng() % positive_vars.size()];
    body.push_back("not happensAt(" + std::string(states[rng() % 3]) + "(" + v + "),T)");
  }
  if (!body.empty()) {
    text += " :- ";
    for (std::size_t k = 0; k < body.size(); ++k) text += (k ? ", " : "") + body[k];
  }
  return evl::parse_clause(text + ".");
}

}  // namespace fixtures
