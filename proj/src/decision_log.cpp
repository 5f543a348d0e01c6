#include "evl/decision_log.hpp"

#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "evl/learner.hpp"

namespace evl {

void DecisionLog::write(const nlohmann::json& record) {
  const std::string line = record.dump();
  std::lock_guard lock(mutex_);
  *out_ << line << '\n';
}

namespace {

struct LearnerReplay {
  bool configured = false;
  HeadKind kind = HeadKind::Initiation;
  double delta = 0, s_min = 0;
  std::uint64_t n_min = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> attempts;  // (clause, n)
  std::vector<double> prefix;  // prefix[k] = sum of the first k+1 ε
};

ClauseStats stats_from(const nlohmann::json& triple) {
  ClauseStats s;
  s.tp = triple.at(0).get<std::uint64_t>();
  s.fp = triple.at(1).get<std::uint64_t>();
  s.fn = triple.at(2).get<std::uint64_t>();
  return s;
}

}  // namespace

AuditReport audit_log(std::istream& in, double tol) {
  AuditReport report;
  std::map<std::string, LearnerReplay> learners;
  std::string line;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    ++report.records;
    auto fail = [&](const std::string& what) {
      report.violations.push_back("line " + std::to_string(line_no) + ": " + what);
    };
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      fail(std::string("malformed record: ") + e.what());
      continue;
    }
    try {
      const std::string type = rec.at("type").get<std::string>();
      const std::string who = rec.at("learner").get<std::string>();
      LearnerReplay& L = learners[who];

      if (type == "config") {
        L.configured = true;
        L.kind = who == "init" ? HeadKind::Initiation : HeadKind::Termination;
        L.delta = rec.at("delta").get<double>();
        L.s_min = rec.at("s_min").get<double>();
        L.n_min = rec.at("n_min").get<std::uint64_t>();
        continue;
      }
      if (!L.configured) {
        fail("record for learner '" + who + "' before its config");
        continue;
      }

      if (type == "attempts") {
        for (const auto& item : rec.at("items")) {
          const auto n = item.at(1).get<std::uint64_t>();
          if (n == 0) {
            fail("attempt with n = 0");
            continue;
          }
          L.attempts.emplace_back(item.at(0).get<std::uint64_t>(), n);
          const double eps = hoeffding_epsilon(L.delta, n);
          L.prefix.push_back((L.prefix.empty() ? 0.0 : L.prefix.back()) + eps);
          ++report.attempts;
        }
      } else if (type == "expand") {
        ++report.expansions;
        const auto k = rec.at("attempt").get<std::uint64_t>();
        const auto n = rec.at("n").get<std::uint64_t>();
        if (k >= L.attempts.size()) {
          fail("expansion refers to an unlogged attempt");
          continue;
        }
        if (L.attempts[k].first != rec.at("clause").get<std::uint64_t>() || L.attempts[k].second != n)
          fail("expansion does not match its attempt record");
        const double eps = hoeffding_epsilon(L.delta, n);
        const double tau = L.prefix[k] / static_cast<double>(k + 1);
        const ClauseStats parent = stats_from(rec.at("parent"));
        const ClauseStats best = stats_from(rec.at("best"));
        const ClauseStats second = stats_from(rec.at("second"));
        const double gp = g_score(parent, L.kind);
        const double gb = g_score(best, L.kind);
        const double gs = g_score(second, L.kind);
        if (std::fabs(eps - rec.at("epsilon").get<double>()) > tol) fail("logged epsilon differs from recomputed value");
        if (std::fabs(tau - rec.at("tau").get<double>()) > tol) fail("logged tau is not the running mean of epsilon");
        if (std::fabs(gp - rec.at("g_parent").get<double>()) > tol ||
            std::fabs(gb - rec.at("g_best").get<double>()) > tol ||
            std::fabs(gs - rec.at("g_second").get<double>()) > tol)
          fail("logged G values differ from the counters");
        if (!(gb > gp)) fail("expansion without G(r1) > G(r)");
        if (!(gb - gs > eps || eps < tau)) fail("expansion without dG > epsilon or epsilon < tau");
      } else if (type == "prune") {
        ++report.prunes;
        const auto n = rec.at("n").get<std::uint64_t>();
        ClauseStats s;
        s.n = n;
        s.tp = rec.at("tp").get<std::uint64_t>();
        s.fp = rec.at("fp").get<std::uint64_t>();
        s.fn = rec.at("fn").get<std::uint64_t>();
        const double g = g_score(s, L.kind);
        const double eps = hoeffding_epsilon(L.delta, n);
        if (std::fabs(g - rec.at("g").get<double>()) > tol) fail("logged G differs from the counters");
        if (std::fabs(eps - rec.at("epsilon").get<double>()) > tol) fail("logged epsilon differs from recomputed value");
        if (n < L.n_min) fail("prune before warm-up");
        if (!(L.s_min - g > eps)) fail("prune without S_min - G > epsilon");
      } else if (type != "new_clause") {
        fail("unknown record type '" + type + "'");
      }
    } catch (const std::exception& e) {
      fail(std::string("incomplete record: ") + e.what());
    }
  }
  return report;
}

}  // namespace evl
