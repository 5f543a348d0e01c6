#include <doctest.h>

#include <sstream>

#include "evl/decision_log.hpp"
#include "evl/errors.hpp"
#include "evl/evaluation.hpp"
#include "evl/stream_io.hpp"
#include "evl/synthetic.hpp"
#include "support.hpp"

using namespace evl;
using fixtures::moving;

namespace {

Theory ground_truth() { return Theory{parse_program(fixtures::kGroundTruth)}; }

std::vector<Interpretation> synthetic(GeneratorConfig cfg) {
  SyntheticSource frames(ground_truth(), cfg);
  Windower windows(frames, moving());
  std::vector<Interpretation> out;
  while (auto i = windows.next()) out.push_back(std::move(*i));
  return out;
}

std::shared_ptr<const ModeBias> bias() { return std::make_shared<const ModeBias>(fixtures::moving_bias()); }

std::string noisy_run_log() {
  GeneratorConfig gen;
  gen.length = 4000;
  gen.seed = 2;
  gen.noise.flip = 0.1;
  gen.noise.seed = 2;
  const auto stream = synthetic(gen);
  std::ostringstream text;
  DecisionLog log(text);
  OnlineConfig cfg;
  cfg.log = &log;
  cfg.n_min = 200;
  VectorSource source(stream);
  (void)run_online(source, bias(), moving(), cfg);
  return text.str();
}

std::vector<nlohmann::json> records(const std::string& text) {
  std::vector<nlohmann::json> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(nlohmann::json::parse(line));
  return out;
}

std::string render(const std::vector<nlohmann::json>& recs) {
  std::string out;
  for (const auto& r : recs) out += r.dump() + "\n";
  return out;
}

AuditReport audit_text(const std::string& text) {
  std::istringstream in(text);
  return audit_log(in);
}

}  // namespace

TEST_CASE("Metrics::from_counts") {
  const Metrics m = Metrics::from_counts(709, 291, 39);
  CHECK(m.precision == doctest::Approx(0.709));
  CHECK(m.recall == doctest::Approx(709.0 / 748.0));
  CHECK(m.recall == doctest::Approx(0.948).epsilon(1e-3));
  CHECK(m.f1 == doctest::Approx(2 * m.precision * m.recall / (m.precision + m.recall)));

  const Metrics none = Metrics::from_counts(0, 0, 0);
  CHECK(none.precision == 0.0);
  CHECK(none.recall == 0.0);
  CHECK(none.f1 == 0.0);

  const auto j = m.to_json();
  for (const char* key : {"tp", "fp", "fn", "precision", "recall", "f1", "theory_size", "train_time"})
    CHECK(j.contains(key));
}

TEST_CASE("evaluate with the ground truth and with an empty theory") {
  GeneratorConfig gen;
  gen.length = 2000;
  gen.seed = 21;
  const auto stream = synthetic(gen);
  const Metrics perfect = evaluate(ground_truth(), stream, moving());
  CHECK(perfect.tp > 0);
  CHECK(perfect.fp == 0);
  CHECK(perfect.fn == 0);
  CHECK(perfect.f1 == 1.0);
  CHECK(perfect.theory_size == 8);

  const Metrics empty = evaluate(Theory{}, stream, moving());
  CHECK(empty.tp == 0);
  CHECK(empty.fn == perfect.tp);
  CHECK(empty.precision == 0.0);
  CHECK(empty.recall == 0.0);
  CHECK(empty.f1 == 0.0);

  // Pure function of its inputs.
  const Metrics again = evaluate(ground_truth(), stream, moving());
  CHECK(again.tp == perfect.tp);
  VectorSource source(stream);
  CHECK(evaluate(ground_truth(), source, moving()).tp == perfect.tp);
}

TEST_CASE("evaluate counts per predicted atom") {
  const auto stream = read_stream_text(fixtures::kTwoPersonFacts, moving());
  const Theory relaxed{parse_program(
      "initiatedAt(moving(X,Y),T) :- happensAt(walking(X),T), happensAt(walking(Y),T), "
      "distanceLessThan(X,Y,34,T), directionLessThan(X,Y,45,T).")};
  const Metrics m = evaluate(relaxed, stream, moving());
  CHECK(m.tp == 1);
  CHECK(m.fp == 1);
  CHECK(m.fn == 0);
}

TEST_CASE("split_episodes") {
  GeneratorConfig gen;
  gen.length = 600;
  gen.episodes = 6;
  gen.seed = 3;
  const auto stream = synthetic(gen);
  const auto episodes = split_episodes(stream);
  REQUIRE(episodes.size() == 6);
  std::size_t total = 0;
  for (const auto& e : episodes) {
    total += e.size();
    for (std::size_t k = 1; k < e.size(); ++k) CHECK(e[k].t == e[k - 1].t + 1);
  }
  CHECK(total == stream.size());
  CHECK(split_episodes({}).empty());
}

TEST_CASE("cross_validate") {
  GeneratorConfig gen;
  gen.length = 8000;
  gen.episodes = 8;
  gen.seed = 9;
  const auto episodes = split_episodes(synthetic(gen));
  REQUIRE(episodes.size() == 8);
  OnlineConfig cfg;
  cfg.n_min = 500;
  const auto cv = cross_validate(episodes, 4, bias(), moving(), cfg);
  REQUIRE(cv.folds.size() == 4);
  std::uint64_t tp = 0, fp = 0, fn = 0;
  for (const auto& f : cv.folds) {
    tp += f.tp;
    fp += f.fp;
    fn += f.fn;
  }
  CHECK(cv.pooled.tp == tp);
  CHECK(cv.pooled.fp == fp);
  CHECK(cv.pooled.fn == fn);
  CHECK(cv.pooled.f1 == doctest::Approx(Metrics::from_counts(tp, fp, fn).f1));
  CHECK(cv.pooled.f1 > 0.9);

  CHECK_THROWS_AS((void)cross_validate(episodes, 1, bias(), moving(), cfg), ConfigError);
  CHECK_THROWS_AS((void)cross_validate(episodes, 9, bias(), moving(), cfg), ConfigError);
}

TEST_CASE("audit accepts logs from real runs and rejects tampered ones") {
  const std::string text = noisy_run_log();
  const AuditReport report = audit_text(text);
  CHECK(report.ok());
  CHECK(report.expansions > 0);
  CHECK(report.prunes > 0);
  CHECK(report.attempts > 0);

  auto recs = records(text);
  auto tamper = [&](const char* type, auto&& edit) {
    auto copy = recs;
    for (auto& r : copy)
      if (r["type"] == type) {
        edit(r);
        break;
      }
    return audit_text(render(copy));
  };

  CHECK_FALSE(tamper("expand", [](nlohmann::json& r) { r["epsilon"] = r["epsilon"].get<double>() * 0.5; }).ok());
  CHECK_FALSE(tamper("expand", [](nlohmann::json& r) { r["tau"] = r["tau"].get<double>() + 0.01; }).ok());
  // Best candidate no better than its parent.
  CHECK_FALSE(tamper("expand", [](nlohmann::json& r) {
                r["best"] = r["parent"];
                r["g_best"] = r["g_parent"];
              }).ok());
  // A pruned clause that in fact scored well.
  CHECK_FALSE(tamper("prune", [](nlohmann::json& r) {
                r["tp"] = r["n"];
                r["fp"] = 0;
                r["fn"] = 0;
                r["g"] = 1.0;
              }).ok());
  CHECK_FALSE(tamper("attempts", [](nlohmann::json& r) { r["items"].clear(); }).ok());
}

TEST_CASE("audit on malformed input") {
  CHECK(audit_text("").ok());
  CHECK_FALSE(audit_text("not json\n").ok());
  CHECK_FALSE(audit_text("{\"type\":\"expand\",\"learner\":\"init\"}\n").ok());
}
