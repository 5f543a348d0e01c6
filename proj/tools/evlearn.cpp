// evlearn: online learning of Event Calculus theories from fact streams.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "evl/decision_log.hpp"
#include "evl/dispatcher.hpp"
#include "evl/errors.hpp"
#include "evl/evaluation.hpp"
#include "evl/mode_bias.hpp"
#include "evl/parse.hpp"
#include "evl/stream_io.hpp"
#include "evl/synthetic.hpp"

namespace {

using namespace evl;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

/// Bad input the user can fix: missing files, malformed bias or theory.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  return out;
}

struct LearnOptions {
  std::string train, test, bias, target = "moving", out, log, metrics;
  double delta = 1e-5;
  std::size_t depth = 1;
  double prune = 0.5;
  std::uint64_t warmup = 0;
  std::size_t folds = 10;
  std::uint64_t progress = 0;
  bool sequential = false;
};

void add_learner_flags(CLI::App& cmd, LearnOptions& o) {
  cmd.add_option("--bias", o.bias, "Mode declarations file")->required()->check(CLI::ExistingFile);
  cmd.add_option("--target", o.target, "Target fluent functor")->capture_default_str();
  cmd.add_option("--delta", o.delta, "Hoeffding confidence parameter")->capture_default_str();
  cmd.add_option("--depth", o.depth, "Specialization depth")->capture_default_str();
  cmd.add_option("--prune", o.prune, "G-score pruning threshold")->capture_default_str();
  cmd.add_option("--warmup", o.warmup, "Evaluations before a clause is output")->capture_default_str();
  cmd.add_option("--metrics", o.metrics, "JSON-lines metrics file");
  cmd.add_option("--progress", o.progress, "Status line to stderr every N interpretations");
  cmd.add_flag("--sequential", o.sequential, "Run both learners on the calling thread");
}

struct Setup {
  std::shared_ptr<const ModeBias> bias;
  Target target;
  OnlineConfig online;
};

Setup make_setup(const LearnOptions& o, DecisionLog* log) {
  ModeBias bias;
  try {
    bias = parse_mode_bias(read_file(o.bias));
  } catch (const ParseError& e) {
    throw UsageError(o.bias + ": " + e.what());
  }
  if (bias.heads.empty()) throw UsageError(o.bias + ": no modeh declaration");
  std::vector<Literal> heads;
  for (const auto& h : bias.heads) heads.push_back(h.pattern);
  Setup s{std::make_shared<const ModeBias>(std::move(bias)), target_from_heads(o.target, heads), {}};
  s.online.delta = o.delta;
  s.online.depth = o.depth;
  s.online.s_min = o.prune;
  s.online.n_min = o.warmup;
  s.online.concurrent = !o.sequential;
  s.online.log = log;
  s.online.progress = o.progress ? &std::cerr : nullptr;
  s.online.progress_every = o.progress;
  s.online.learner(HeadKind::Initiation).validate();
  return s;
}

void print_metrics(const char* label, const Metrics& m) {
  std::cout << label << ": precision=" << m.precision << " recall=" << m.recall << " f1=" << m.f1
            << " (tp=" << m.tp << " fp=" << m.fp << " fn=" << m.fn << ") theory_size=" << m.theory_size
            << " train_time=" << m.train_time << "s\n";
}

Metrics evaluate_file(const Theory& theory, const std::string& path, const Target& target) {
  auto in = open_input(path);
  FactStreamReader reader(in);
  Windower windows(reader, target);
  return evaluate(theory, windows, target);
}

int run_learn(const LearnOptions& o) {
  std::ofstream log_file;
  std::optional<DecisionLog> log;
  if (!o.log.empty()) {
    log_file = open_output(o.log);
    log.emplace(log_file);
  }
  const Setup s = make_setup(o, log ? &*log : nullptr);

  auto in = open_input(o.train);
  FactStreamReader reader(in);
  Windower windows(reader, s.target);
  const auto run = run_online(windows, s.bias, s.target, s.online);
  const Theory theory = merge_output(run.init->output(), run.term->output());

  if (o.out.empty()) {
    write_theory(std::cout, theory);
  } else {
    auto out = open_output(o.out);
    write_theory(out, theory);
  }
  std::cout << "learned " << theory.clauses.size() << " clauses (size " << theory.size() << ") from "
            << run.interpretations << " interpretations in " << run.train_seconds() << "s"
            << " [init " << run.init_seconds << "s, term " << run.term_seconds << "s]\n"
            << "theory expansions " << run.theory_expansions[0] << "/" << run.theory_expansions[1]
            << ", clause expansions " << run.clause_expansions[0] << "/" << run.clause_expansions[1]
            << ", prunes " << run.prunes[0] << "/" << run.prunes[1] << " (init/term)\n";

  Metrics m;
  m.theory_size = theory.size();
  m.train_time = run.train_seconds();
  if (!o.test.empty()) {
    m = evaluate_file(theory, o.test, s.target);
    m.train_time = run.train_seconds();
    print_metrics("test", m);
  }
  if (!o.metrics.empty()) {
    auto out = open_output(o.metrics);
    auto record = m.to_json();
    record["record"] = "summary";
    record["interpretations"] = run.interpretations;
    record["tested"] = !o.test.empty();
    out << record.dump() << '\n';
  }
  return 0;
}

int run_cv(const LearnOptions& o) {
  std::ofstream log_file;
  std::optional<DecisionLog> log;
  if (!o.log.empty()) {
    log_file = open_output(o.log);
    log.emplace(log_file);
  }
  Setup s = make_setup(o, log ? &*log : nullptr);
  auto in = open_input(o.train);
  const auto episodes = split_episodes(read_stream(in, s.target));
  const auto cv = cross_validate(episodes, o.folds, s.bias, s.target, s.online);

  std::optional<std::ofstream> metrics;
  if (!o.metrics.empty()) metrics = open_output(o.metrics);
  for (std::size_t f = 0; f < cv.folds.size(); ++f) {
    const std::string label = "fold " + std::to_string(f + 1);
    print_metrics(label.c_str(), cv.folds[f]);
    if (metrics) {
      auto record = cv.folds[f].to_json();
      record["record"] = "fold";
      record["fold"] = f + 1;
      *metrics << record.dump() << '\n';
    }
  }
  print_metrics("pooled", cv.pooled);
  if (metrics) {
    auto record = cv.pooled.to_json();
    record["record"] = "summary";
    record["folds"] = cv.folds.size();
    *metrics << record.dump() << '\n';
  }
  return 0;
}

struct EvalOptions {
  std::string theory, test, target, metrics;
};

int run_eval(const EvalOptions& o) {
  Theory theory;
  try {
    theory = parse_theory(read_file(o.theory));
  } catch (const ParseError& e) {
    throw UsageError(o.theory + ": " + e.what());
  }
  Target target = o.target.empty() ? target_of(theory) : Target::named(o.target, target_of(theory).pattern().arity());
  const Metrics m = evaluate_file(theory, o.test, target);
  print_metrics("test", m);
  if (!o.metrics.empty()) {
    auto out = open_output(o.metrics);
    auto record = m.to_json();
    record["record"] = "summary";
    out << record.dump() << '\n';
  }
  return 0;
}

struct GenOptions {
  std::string gt, out;
  GeneratorConfig cfg;
  std::optional<std::uint64_t> noise_seed;
};

int run_gen(GenOptions o) {
  Theory gt;
  try {
    gt = parse_theory(read_file(o.gt));
  } catch (const ParseError& e) {
    throw UsageError(o.gt + ": " + e.what());
  }
  o.cfg.noise.seed = o.noise_seed.value_or(o.cfg.seed);
  SyntheticSource source(std::move(gt), o.cfg);
  if (o.out.empty()) {
    write_facts(std::cout, source);
  } else {
    auto out = open_output(o.out);
    write_facts(out, source);
  }
  return 0;
}

int run_audit(const std::string& path) {
  auto in = open_input(path);
  const AuditReport report = audit_log(in);
  std::cout << "records " << report.records << ", attempts " << report.attempts << ", expansions "
            << report.expansions << ", prunes " << report.prunes << ", violations "
            << report.violations.size() << '\n';
  for (const auto& v : report.violations) std::cout << "violation: " << v << '\n';
  return report.ok() ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online learning of Event Calculus theories"};
  app.require_subcommand(1);

  LearnOptions learn_opts;
  auto* learn = app.add_subcommand("learn", "Learn a theory in a single pass over a fact stream");
  learn->add_option("--train", learn_opts.train, "Training fact stream")->required()->check(CLI::ExistingFile);
  learn->add_option("--test", learn_opts.test, "Test fact stream")->check(CLI::ExistingFile);
  learn->add_option("--out", learn_opts.out, "Theory output file (default stdout)");
  learn->add_option("--log", learn_opts.log, "Decision log file");
  add_learner_flags(*learn, learn_opts);

  LearnOptions cv_opts;
  auto* cv = app.add_subcommand("cv", "Cross-validate over contiguous episode blocks");
  cv->add_option("--train", cv_opts.train, "Fact stream to split")->required()->check(CLI::ExistingFile);
  cv->add_option("--folds", cv_opts.folds, "Number of folds")->capture_default_str();
  cv->add_option("--log", cv_opts.log, "Decision log file (all folds)");
  add_learner_flags(*cv, cv_opts);

  EvalOptions eval_opts;
  auto* eval = app.add_subcommand("eval", "Evaluate a theory on a fact stream");
  eval->add_option("--theory", eval_opts.theory, "Theory file")->required()->check(CLI::ExistingFile);
  eval->add_option("--test", eval_opts.test, "Test fact stream")->required()->check(CLI::ExistingFile);
  eval->add_option("--target", eval_opts.target, "Target fluent functor (default from the theory)");
  eval->add_option("--metrics", eval_opts.metrics, "JSON-lines metrics file");

  GenOptions gen_opts;
  auto* gen = app.add_subcommand("gen", "Generate a synthetic fact stream from a ground-truth theory");
  gen->add_option("--gt", gen_opts.gt, "Ground-truth theory")->required()->check(CLI::ExistingFile);
  gen->add_option("--entities", gen_opts.cfg.entities, "Number of entities")->capture_default_str();
  gen->add_option("--length", gen_opts.cfg.length, "Number of time points")->capture_default_str();
  gen->add_option("--episodes", gen_opts.cfg.episodes, "Number of episodes")->capture_default_str();
  gen->add_option("--gap", gen_opts.cfg.gap, "Missing time points between episodes")->capture_default_str();
  gen->add_option("--arena", gen_opts.cfg.arena, "Arena side length")->capture_default_str();
  gen->add_option("--noise-flip", gen_opts.cfg.noise.flip, "Annotation flip probability")->capture_default_str();
  gen->add_option("--noise-drop", gen_opts.cfg.noise.drop, "Narrative drop probability")->capture_default_str();
  gen->add_option("--gen-seed", gen_opts.cfg.seed, "Simulation seed")->capture_default_str();
  gen->add_option("--noise-seed", gen_opts.noise_seed, "Noise seed (default: the simulation seed)");
  gen->add_option("--out", gen_opts.out, "Output file (default stdout)");

  std::string audit_path;
  auto* audit = app.add_subcommand("audit", "Check a decision log against the expansion and pruning rules");
  audit->add_option("--log", audit_path, "Decision log file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*learn) return run_learn(learn_opts);
    if (*cv) return run_cv(cv_opts);
    if (*eval) return run_eval(eval_opts);
    if (*gen) return run_gen(gen_opts);
    if (*audit) return run_audit(audit_path);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const StreamOrderError& e) {
    std::cerr << "stream order error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}
