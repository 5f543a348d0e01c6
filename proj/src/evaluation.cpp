#include "evl/evaluation.hpp"

#include <algorithm>

#include "evl/errors.hpp"

namespace evl {

Metrics Metrics::from_counts(std::uint64_t tp, std::uint64_t fp, std::uint64_t fn) {
  Metrics m;
  m.tp = tp;
  m.fp = fp;
  m.fn = fn;
  const auto ratio = [](std::uint64_t a, std::uint64_t b) {
    return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b);
  };
  m.precision = ratio(tp, tp + fp);
  m.recall = ratio(tp, tp + fn);
  m.f1 = m.precision + m.recall == 0 ? 0.0 : 2 * m.precision * m.recall / (m.precision + m.recall);
  return m;
}

nlohmann::json Metrics::to_json() const {
  return {{"tp", tp},         {"fp", fp}, {"fn", fn}, {"precision", precision}, {"recall", recall},
          {"f1", f1},         {"theory_size", theory_size}, {"train_time", train_time}};
}

Metrics evaluate(const Theory& theory, InterpretationSource& stream, const Target& target) {
  ContextBuilder builder(target, SpatialVocabulary::from_clauses(theory.clauses));
  Recognizer recognizer(theory);
  std::uint64_t tp = 0, fp = 0, fn = 0;
  while (auto interp = stream.next()) {
    const auto ctx = builder.build(*interp);
    const auto& predicted = recognizer.step(*ctx);
    const auto& actual = ctx->holding_next();
    // Both lists are sorted.
    std::size_t i = 0, j = 0;
    while (i < predicted.size() || j < actual.size()) {
      if (j == actual.size() || (i < predicted.size() && predicted[i] < actual[j])) {
        ++fp;
        ++i;
      } else if (i == predicted.size() || actual[j] < predicted[i]) {
        ++fn;
        ++j;
      } else {
        ++tp;
        ++i;
        ++j;
      }
    }
  }
  Metrics m = Metrics::from_counts(tp, fp, fn);
  m.theory_size = theory.size();
  return m;
}

Metrics evaluate(const Theory& theory, std::span<const Interpretation> stream, const Target& target) {
  VectorSource source(stream);
  return evaluate(theory, source, target);
}

std::vector<std::vector<Interpretation>> split_episodes(std::vector<Interpretation> stream) {
  std::vector<std::vector<Interpretation>> out;
  for (auto& i : stream) {
    if (out.empty() || out.back().back().t + 1 != i.t) out.emplace_back();
    out.back().push_back(std::move(i));
  }
  return out;
}

CrossValidation cross_validate(const std::vector<std::vector<Interpretation>>& episodes, std::size_t k,
                               std::shared_ptr<const ModeBias> bias, const Target& target,
                               const OnlineConfig& cfg) {
  if (k < 2) throw ConfigError("cross-validation needs at least 2 folds");
  if (k > episodes.size())
    throw ConfigError("cannot split " + std::to_string(episodes.size()) + " episodes into " +
                      std::to_string(k) + " folds");
  CrossValidation cv;
  std::uint64_t tp = 0, fp = 0, fn = 0;
  double time_sum = 0, size_sum = 0;
  for (std::size_t f = 0; f < k; ++f) {
    const std::size_t lo = f * episodes.size() / k, hi = (f + 1) * episodes.size() / k;
    std::vector<Interpretation> train, test;
    for (std::size_t e = 0; e < episodes.size(); ++e) {
      auto& dst = e >= lo && e < hi ? test : train;
      dst.insert(dst.end(), episodes[e].begin(), episodes[e].end());
    }
    VectorSource source(train);
    const auto run = run_online(source, bias, target, cfg);
    const Theory theory = merge_output(run.init->output(), run.term->output());
    Metrics m = evaluate(theory, test, target);
    m.train_time = run.train_seconds();
    tp += m.tp;
    fp += m.fp;
    fn += m.fn;
    time_sum += m.train_time;
    size_sum += static_cast<double>(m.theory_size);
    cv.folds.push_back(m);
  }
  cv.pooled = Metrics::from_counts(tp, fp, fn);
  cv.pooled.train_time = time_sum / static_cast<double>(k);
  cv.pooled.theory_size = static_cast<std::size_t>(size_sum / static_cast<double>(k) + 0.5);
  return cv;
}

}  // namespace evl
