#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "config.hpp"
#include "mealypred/batch.hpp"
#include "mealypred/enumeration.hpp"
#include "mealypred/errors.hpp"
#include "mealypred/evaluation.hpp"
#include "mealypred/machine_format.hpp"
#include "mealypred/predictor_spec.hpp"
#include "mealypred/report.hpp"
#include "mealypred/search.hpp"
#include "mealypred/spectral.hpp"
#include "mealypred/version.hpp"

namespace mealypred::cli {

namespace {

using Shared = std::vector<std::shared_ptr<const MealyMachine>>;

/// Reads "-" from the caller's stream, at most once per invocation.
class Inputs {
 public:
  explicit Inputs(std::istream& in) : in_(in) {}

  std::string text(const std::string& path) {
    if (path == "-") {
      if (stdin_taken_) throw std::invalid_argument("stdin ('-') can only be read once");
      stdin_taken_ = true;
      return {std::istreambuf_iterator<char>(in_), {}};
    }
    std::ifstream file(path);
    if (!file) throw ParseError(0, "cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(file), {}};
  }

  MealyMachine machine(const std::string& path) {
    try {
      return parse_machine(text(path));
    } catch (const ParseError& e) {
      throw e.with_source(path == "-" ? "<stdin>" : path);
    }
  }

  /// Inline bits, "-" for stdin, or the contents of `file` when set.
  BitSequence bits(const std::string& inline_bits, const std::string& file) {
    if (!file.empty()) return BitSequence::from_string(text(file));
    if (inline_bits == "-") return BitSequence::from_string(text("-"));
    return BitSequence::from_string(inline_bits);
  }

 private:
  std::istream& in_;
  bool stdin_taken_ = false;
};

struct Session {
  ExperimentConfig config;
  OutputFormat format = OutputFormat::human;
  Inputs inputs;
  std::vector<MealyMachine> machines;
  std::ostringstream human;
  Json result = Json::object();

  EvaluationOptions evaluation() const {
    EvaluationOptions o;
    o.workers = std::max<std::size_t>(1, config.workers);
    o.horizon_cap = config.horizon_cap;
    o.allow_big = config.allow_big;
    o.per_step = config.per_step;
    return o;
  }
  EnumerationCaps caps() const { return {config.raw_cap, config.canonical_cap}; }

  Shared shared() const {
    Shared s;
    for (const auto& m : machines) s.push_back(std::make_shared<const MealyMachine>(m));
    return s;
  }

  void need_machines(std::size_t at_least, std::size_t at_most) const {
    if (machines.size() < at_least || machines.size() > at_most) {
      throw std::invalid_argument(
          config.command + " takes " +
          (at_least == at_most ? std::to_string(at_least)
                               : std::to_string(at_least) + " or more") +
          " machine file(s), got " + std::to_string(machines.size()));
    }
  }
};

std::string path_string(const std::vector<StateId>& path) {
  std::string s;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(path[i]);
  }
  return s;
}

std::string fraction(const Rational& r) { return to_fraction_string(r); }

void cmd_run(Session& s) {
  s.need_machines(1, 1);
  const auto& m = s.machines.front();
  const auto input = s.inputs.bits(s.config.input, s.config.input_file);
  const auto trace = run_traced(m, input);
  s.result["input"] = input.to_string();
  s.result["output"] = trace.output.to_string();
  s.result["path"] = trace.path;
  s.human << "output: " << trace.output.to_string() << '\n'
          << "path: " << path_string(trace.path) << '\n';
}

void cmd_analyze(Session& s) {
  s.need_machines(1, 1);
  const auto& m = s.machines.front();
  const std::size_t k = m.num_states();
  const auto classes = classify_states(m);
  const auto reachable = reachable_states(m);
  const auto freq = stationary_frequencies(m, s.config.tolerance, s.config.max_iterations);
  const double bound = perfect_knowledge_error_bound(m, freq);
  const auto a = adjacency(m);

  Json states = Json::array();
  std::vector<StateId> biased, unbiased, unreachable;
  for (StateId i = 0; i < k; ++i) {
    const bool b = is_biased(classes[i]);
    (b ? biased : unbiased).push_back(i);
    if (!reachable[i]) unreachable.push_back(i);
    Json st;
    st["state"] = i;
    st["class"] = to_string(classes[i]);
    st["biased"] = b;
    st["reachable"] = static_cast<bool>(reachable[i]);
    st["frequency"] = freq.weights[i];
    states.push_back(std::move(st));
  }
  Json rows = Json::array();
  for (std::size_t i = 0; i < k; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < k; ++j) row.push_back(a(i, j));
    rows.push_back(std::move(row));
  }
  s.result["states"] = std::move(states);
  s.result["biased"] = biased;
  s.result["unbiased"] = unbiased;
  s.result["unreachable"] = unreachable;
  s.result["adjacency"] = std::move(rows);
  s.result["stationary"] = {{"weights", freq.weights},
                            {"method", to_string(freq.method)},
                            {"residual", freq.residual},
                            {"iterations", freq.iterations}};
  s.result["perfect_knowledge_bound"] = bound;

  auto& h = s.human;
  h << "states: " << k << '\n';
  for (StateId i = 0; i < k; ++i) {
    h << "  " << i << ' ' << to_string(classes[i])
      << (is_biased(classes[i]) ? " biased" : " unbiased")
      << "  f=" << freq.weights[i] << (reachable[i] ? "" : "  unreachable") << '\n';
  }
  h << "adjacency:\n";
  for (std::size_t i = 0; i < k; ++i) {
    h << " ";
    for (std::size_t j = 0; j < k; ++j) h << ' ' << int{a(i, j)};
    h << '\n';
  }
  h << "stationary method: " << to_string(freq.method) << '\n'
    << "residual: " << freq.residual << '\n'
    << "iterations: " << freq.iterations << '\n'
    << "perfect-knowledge bound: " << bound << '\n';
}

PredictorSpec resolved_spec(const std::string& text) {
  auto spec = parse_predictor_spec(text);
  resolve_automaton(spec);
  return spec;
}

void cmd_predict(Session& s) {
  s.need_machines(1, std::numeric_limits<std::size_t>::max());
  const auto bits = s.inputs.bits(s.config.input, s.config.input_file);
  const auto spec = resolved_spec(s.config.predictor);
  const auto predictor = make_predictor(spec, s.shared(), InconsistencyPolicy::strict);

  BitSequence observed = bits;
  std::vector<StateId> path;
  if (s.config.from_input) {
    const auto trace = run_traced(s.machines.front(), bits);
    observed = trace.output;
    path = trace.path;
  } else if (predictor->uses_hidden_state()) {
    throw std::invalid_argument(spec.label() +
                                " needs the active state; pass the generating "
                                "sequence with --from-input");
  }
  const auto trace = trace_predictor(*predictor, observed, path.empty() ? nullptr : &path);

  s.result["predictor"] = spec.label();
  if (s.config.from_input) s.result["generating"] = bits.to_string();
  s.result["observed"] = trace.observed.to_string();
  s.result["predictions"] = trace.predictions.to_string();
  s.result["cumulative_errors"] = trace.cumulative_errors;
  s.result["errors"] = trace.errors();
  s.human << "predictor: " << spec.label() << '\n'
          << "observed:    " << trace.observed.to_string() << '\n'
          << "predictions: " << trace.predictions.to_string() << '\n'
          << "errors: " << trace.errors() << '\n';
}

void cmd_evaluate(Session& s) {
  s.need_machines(1, std::numeric_limits<std::size_t>::max());
  const auto spec = resolved_spec(s.config.predictor);
  // Lenient: a predictor built for another candidate must survive data it
  // cannot explain.
  const auto predictor = make_predictor(spec, s.shared(), InconsistencyPolicy::lenient);
  const auto& target = s.machines.front();
  ErrorReport report;
  if (s.config.method == "exhaustive") {
    report = evaluate_exhaustive(target, *predictor, s.config.horizon, s.evaluation());
  } else if (s.config.method == "monte_carlo" || s.config.method == "monte-carlo") {
    report = evaluate_monte_carlo(target, *predictor, s.config.horizon, s.config.samples,
                                  s.config.seed, s.evaluation());
  } else {
    throw std::invalid_argument("unknown method '" + s.config.method +
                                "' (exhaustive|monte_carlo)");
  }
  s.result = to_json(report);
  s.human << to_key_value(report);
}

void cmd_batch_select(Session& s) {
  s.need_machines(1, std::numeric_limits<std::size_t>::max());
  BatchProblem problem;
  problem.candidates = s.machines;
  problem.training = s.inputs.bits(s.config.training, s.config.training_file);
  problem.horizon = s.config.horizon;
  if (s.config.predictors.empty()) {
    problem.predictors = default_predictor_pool(s.machines.size());
  } else {
    for (const auto& p : s.config.predictors) problem.predictors.push_back(resolved_spec(p));
  }
  BatchOptions options;
  options.weighting = s.config.machine_uniform ? PairWeighting::machine_uniform
                                               : PairWeighting::per_pair;
  options.evaluation = s.evaluation();
  options.pair_cap = s.config.allow_big ? std::numeric_limits<std::uint64_t>::max()
                                        : s.config.pair_cap;
  const auto sel = batch_select(problem, options);

  Json scores = Json::array();
  for (const auto& sc : sel.scores) {
    scores.push_back({{"predictor", sc.predictor.label()},
                      {"score", fraction(sc.score)},
                      {"training_errors", sc.training_errors}});
  }
  Json pairs = Json::array();
  for (std::size_t i = 0; i < sel.pairs.size(); ++i) {
    Json counts = Json::array();
    for (const auto& c : sel.pairs[i].counts()) counts.push_back(c.str());
    pairs.push_back({{"machine_id", machine_id(s.machines[i])},
                     {"counts", std::move(counts)},
                     {"total", sel.pairs[i].total().str()}});
  }
  s.result["training"] = problem.training.to_string();
  s.result["horizon"] = problem.horizon;
  s.result["weighting"] = s.config.machine_uniform ? "machine_uniform" : "per_pair";
  s.result["best"] = sel.best_score().predictor.label();
  s.result["best_score"] = fraction(sel.best_score().score);
  s.result["selected_is_not_training_minimizer"] = sel.selected_is_not_training_minimizer();
  s.result["scores"] = std::move(scores);
  s.result["pairs"] = std::move(pairs);

  s.human << "best: " << sel.best_score().predictor.label() << '\n'
          << "score: " << fraction(sel.best_score().score) << '\n';
  for (const auto& sc : sel.scores) {
    s.human << "  " << sc.predictor.label() << "  score " << fraction(sc.score)
            << "  training errors " << sc.training_errors << '\n';
  }
}

// Streams in human mode so large spaces do not pile up in memory.
void cmd_enumerate(Session& s, std::ostream& out) {
  const auto mode = parse_enumeration_mode(s.config.mode);
  const std::size_t k = s.config.states;
  if (k == 0) throw std::invalid_argument("k must be positive");
  s.result["k"] = k;
  s.result["mode"] = to_string(mode);
  if (s.config.count_only) {
    const auto n = count_machines(k, mode, s.caps());
    s.result["count"] = n;
    s.human << n << '\n';
    return;
  }
  MachineEnumerator e(k, mode, s.caps());
  std::uint64_t n = 0;
  Json list = Json::array();
  while (auto m = e.next()) {
    ++n;
    if (s.format == OutputFormat::structured) {
      list.push_back(serialize_machine(*m));
    } else {
      out << serialize_machine(*m) << '\n';
    }
  }
  s.result["count"] = n;
  s.result["machines"] = std::move(list);
}

Json scored_json(const ScoredMachine& m) {
  return {{"machine_id", machine_id(m.machine)},
          {"score", fraction(m.score)},
          {"machine", m.serialization}};
}

void cmd_search(Session& s) {
  s.need_machines(1, std::numeric_limits<std::size_t>::max());
  SearchOptions options;
  options.top_n = s.config.top;
  options.caps = s.caps();
  options.evaluation = s.evaluation();
  const auto r = [&] {
    if (s.config.after_training.empty()) {
      return search_best_predictor(s.machines, s.config.states, s.config.horizon, options);
    }
    const auto training = s.inputs.bits("", s.config.after_training);
    s.result["training"] = training.to_string();
    return search_best_predictor_after_training(s.machines, training, s.config.states,
                                                s.config.horizon, options);
  }();
  Json board = Json::array();
  for (const auto& e : r.leaderboard) board.push_back(scored_json(e));
  s.result["k"] = s.config.states;
  s.result["t"] = s.config.horizon;
  s.result["search_space_size"] = r.search_space_size;
  s.result["evaluated"] = r.evaluated;
  s.result["best"] = scored_json(r.best);
  s.result["leaderboard"] = std::move(board);

  s.human << "searched: " << r.evaluated << " canonical of " << r.search_space_size
          << " raw\n"
          << "best score: " << fraction(r.best.score) << '\n';
  for (std::size_t i = 0; i < r.leaderboard.size(); ++i) {
    s.human << "  #" << i + 1 << "  " << fraction(r.leaderboard[i].score) << "  "
            << machine_id(r.leaderboard[i].machine) << '\n';
  }
  s.human << "best machine:\n" << r.best.serialization;
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// --config is read before the real parse so that flags land on top of it.
std::string find_config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].starts_with("--config=")) return args[i].substr(9);
  }
  return {};
}

void add_global_options(CLI::App& app, ExperimentConfig& c, std::string& config_path) {
  app.add_option("--config", config_path, "JSON experiment config; flags override it");
  app.add_option("--format", c.format, "human | structured");
  app.add_option("--out", c.out, "write the report here instead of stdout");
  app.add_option("--workers", c.workers, "parallel workers (results do not depend on it)");
  app.add_flag("--timestamps", c.timestamps, "stamp human output with the time");
  app.add_flag("--i-know-this-is-big", c.allow_big, "lift the horizon and pair caps");
  app.add_option("--horizon-cap", c.horizon_cap, "exhaustive horizon cap");
  app.add_option("--pair-cap", c.pair_cap, "batch pair cap n*2^t");
  app.add_option("--raw-cap", c.raw_cap, "largest k for raw enumeration");
  app.add_option("--canonical-cap", c.canonical_cap, "largest k for canonical enumeration");
  app.add_option("--tolerance", c.tolerance, "stationary iteration tolerance");
  app.add_option("--max-iterations", c.max_iterations, "stationary iteration limit");
  app.add_option("--seed", c.seed, "Monte Carlo seed");
  app.add_option("--samples", c.samples, "Monte Carlo samples");
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  ExperimentConfig config;
  try {
    const auto path = find_config_path(args);
    if (!path.empty()) config = load_config_file(path);
  } catch (const std::exception& e) {
    err << "mealypred: " << e.what() << '\n';
    return kExitUsage;
  }

  CLI::App app{"Prediction of sequences generated by Mealy machines", "mealypred"};
  app.set_version_flag("--version", std::string(kVersion));
  app.fallthrough();
  app.require_subcommand(0, 1);
  std::string config_path;
  add_global_options(app, config, config_path);

  std::string machine;
  std::vector<std::string> candidates;

  auto* run_cmd = app.add_subcommand("run", "run a machine on input bits");
  run_cmd->add_option("machine", machine, "machine file or -")->required();
  run_cmd->add_option("input", config.input, "input bits or -");
  run_cmd->add_option("--input-file", config.input_file, "read input bits from a file");

  auto* analyze = app.add_subcommand("analyze", "state classes, stationary frequencies, bound");
  analyze->add_option("machine", machine, "machine file or -")->required();

  auto* predict = app.add_subcommand("predict", "trace a predictor over observed bits");
  predict->add_option("machine", machine, "machine file or -")->required();
  predict->add_option("input", config.input, "observed bits or -");
  predict->add_option("--input-file", config.input_file, "read bits from a file");
  predict->add_option("--candidate", candidates, "further candidate machines (ensemble)")
      ->allow_extra_args(false);
  predict->add_option("--predictor", config.predictor, "predictor spec");
  predict->add_flag("--from-input", config.from_input,
                    "bits are the generating sequence of the machine");

  auto* evaluate = app.add_subcommand("evaluate", "average and worst-case error");
  evaluate->add_option("machines", config.machines, "target first, then candidates")
      ->required();
  evaluate->add_option("-t,--horizon", config.horizon, "horizon t");
  evaluate->add_option("--predictor", config.predictor, "predictor spec");
  evaluate->add_option("--method", config.method, "exhaustive | monte_carlo");
  evaluate->add_flag("--per-step", config.per_step, "report error at every step");

  auto* batch = app.add_subcommand("batch-select", "choose a predictor from training data");
  batch->add_option("machines", config.machines, "candidate machines")->required();
  batch->add_option("--training", config.training, "training bits or -");
  batch->add_option("--training-file", config.training_file, "training bits file");
  batch->add_option("-t,--horizon", config.horizon, "total horizon T");
  batch->add_option("--predictor", config.predictors, "predictor spec (repeatable)")
      ->allow_extra_args(false);
  batch->add_flag("--machine-uniform", config.machine_uniform,
                  "weight every surviving machine equally");

  auto* enumerate = app.add_subcommand("enumerate", "list k-state machines");
  enumerate->add_option("-k,--states", config.states, "state count");
  enumerate->add_option("--mode", config.mode, "raw | canonical | strongly-connected");
  enumerate->add_flag("--count-only", config.count_only, "print only the count");

  auto* search = app.add_subcommand("search", "best k-state predicting automaton");
  search->add_option("machines", config.machines, "target machines")->required();
  search->add_option("-k,--states", config.states, "predictor state budget");
  search->add_option("-t,--horizon", config.horizon, "horizon t");
  search->add_option("--top", config.top, "leaderboard size");
  search->add_option("--after-training", config.after_training,
                     "training bits file; score continuations only");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  for (auto* sub : app.get_subcommands()) config.command = sub->get_name();
  if (!machine.empty()) {
    config.machines = {machine};
    config.machines.insert(config.machines.end(), candidates.begin(), candidates.end());
  }
  if (config.command.empty()) {
    err << "mealypred: no command given (run --help)\n";
    return kExitUsage;
  }

  try {
    Session s{config, parse_format(config.format), Inputs(in)};
    for (const auto& path : config.machines) s.machines.push_back(s.inputs.machine(path));

    std::ofstream file;
    if (!config.out.empty()) {
      file.open(config.out);
      if (!file) throw std::invalid_argument("cannot write '" + config.out + "'");
    }
    std::ostream& sink = config.out.empty() ? out : file;

    const auto& c = config.command;
    if (c == "run") cmd_run(s);
    else if (c == "analyze") cmd_analyze(s);
    else if (c == "predict") cmd_predict(s);
    else if (c == "evaluate") cmd_evaluate(s);
    else if (c == "batch-select") cmd_batch_select(s);
    else if (c == "enumerate") cmd_enumerate(s, sink);
    else if (c == "search") cmd_search(s);
    else throw std::invalid_argument("unknown command '" + c + "'");

    if (s.format == OutputFormat::structured) {
      Json doc;
      doc["tool"] = "mealypred";
      doc["version"] = std::string(kVersion);
      doc["command"] = c;
      doc["config"] = experiment_json(config);
      Json ids = Json::array();
      for (std::size_t i = 0; i < s.machines.size(); ++i) {
        ids.push_back({{"path", config.machines[i]}, {"machine_id", machine_id(s.machines[i])}});
      }
      doc["machines"] = std::move(ids);
      doc["result"] = std::move(s.result);
      sink << doc.dump(2) << '\n';
    } else {
      if (config.timestamps) sink << "# " << utc_now() << '\n';
      sink << s.human.str();
    }
    sink.flush();
    return kExitOk;
  } catch (const CapExceededError& e) {
    err << "mealypred: refused: " << e.what() << '\n';
    return kExitCap;
  } catch (const InconsistentObservationError& e) {
    err << "mealypred: inconsistent data: " << e.what() << '\n';
    return kExitInconsistent;
  } catch (const ParseError& e) {
    err << "mealypred: parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "mealypred: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "mealypred: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace mealypred::cli
