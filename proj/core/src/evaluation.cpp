#include "mealypred/evaluation.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <stdexcept>

#include "mealypred/errors.hpp"
#include "mealypred/machine_format.hpp"
#include "mealypred/parallel.hpp"

namespace mealypred {

const char* to_string(EvaluationMethod method) noexcept {
  switch (method) {
    case EvaluationMethod::exhaustive: return "exhaustive";
    case EvaluationMethod::monte_carlo: return "monte_carlo";
  }
  return "?";
}

void ErrorTally::merge(const ErrorTally& other) {
  sequences += other.sequences;
  total_errors += other.total_errors;
  max_errors = std::max(max_errors, other.max_errors);
  if (errors_at_step.size() < other.errors_at_step.size()) {
    errors_at_step.resize(other.errors_at_step.size(), 0);
  }
  for (std::size_t i = 0; i < other.errors_at_step.size(); ++i) {
    errors_at_step[i] += other.errors_at_step[i];
  }
}

void check_horizon(std::size_t t, const EvaluationOptions& options) {
  if (t > kHardHorizonLimit) {
    throw CapExceededError("horizon " + std::to_string(t) +
                           " exceeds the hard limit of " +
                           std::to_string(kHardHorizonLimit) +
                           " for exhaustive evaluation; use Monte Carlo");
  }
  if (t > options.horizon_cap && !options.allow_big) {
    throw CapExceededError(
        "horizon " + std::to_string(t) + " exceeds the exhaustive cap of " +
        std::to_string(options.horizon_cap) + " (2^" + std::to_string(t) +
        " sequences); use Monte Carlo or acknowledge the size explicitly");
  }
}

namespace {

// Depth-first walk over the binary tree of generating sequences below one
// node. Siblings share the predictor state of their parent, so each tree edge
// is processed once instead of once per sequence through it.
class Sweeper {
 public:
  Sweeper(const MealyMachine& machine, const Predictor& root,
          std::size_t horizon, bool per_step)
      : machine_(machine), horizon_(horizon), per_step_(per_step) {
    stack_.reserve(horizon + 1);
    for (std::size_t d = 0; d <= horizon; ++d) stack_.push_back(root.clone());
    tally_.horizon = horizon;
    if (per_step) tally_.errors_at_step.assign(horizon, 0);
  }

  // Runs the fixed prefix `bits` (length `depth`) from `start`, then sweeps
  // every completion.
  ErrorTally sweep(StateId start, std::uint64_t bits, std::size_t depth) {
    const std::uint64_t leaves = std::uint64_t{1} << (horizon_ - depth);
    tally_.sequences = leaves;
    Predictor& p = *stack_[0];
    StateId state = start;
    std::uint64_t errors = 0;
    for (std::size_t d = 0; d < depth; ++d) {
      if (p.uses_hidden_state()) p.reveal_state(state);
      const Transition& t = machine_.entry(state, (bits >> d) & 1U);
      if (p.predict() != t.output) {
        ++errors;
        tally_.total_errors += leaves;
        if (per_step_) tally_.errors_at_step[d] += leaves;
      }
      p.observe(t.output);
      state = t.next;
    }
    base_ = depth;
    if (depth == horizon_) {
      tally_.max_errors = std::max(tally_.max_errors, errors);
    } else {
      visit(0, state, errors);
    }
    return tally_;
  }

 private:
  void visit(std::size_t level, StateId state, std::uint64_t errors) {
    const std::size_t depth = base_ + level;
    Predictor& p = *stack_[level];
    if (p.uses_hidden_state()) p.reveal_state(state);
    const Bit guess = p.predict();
    const std::uint64_t weight = std::uint64_t{1} << (horizon_ - depth - 1);
    const bool last = depth + 1 == horizon_;
    for (Bit b : {Bit{0}, Bit{1}}) {
      const Transition& t = machine_.entry(state, b);
      const std::uint64_t miss = guess != t.output ? 1 : 0;
      if (miss) {
        tally_.total_errors += weight;
        if (per_step_) tally_.errors_at_step[depth] += weight;
      }
      if (last) {
        tally_.max_errors = std::max(tally_.max_errors, errors + miss);
      } else {
        Predictor& child = *stack_[level + 1];
        child.assign(p);
        child.observe(t.output);
        visit(level + 1, t.next, errors + miss);
      }
    }
  }

  const MealyMachine& machine_;
  std::size_t horizon_;
  bool per_step_;
  std::size_t base_ = 0;
  std::vector<std::unique_ptr<Predictor>> stack_;
  ErrorTally tally_;
};

std::size_t split_depth(std::size_t horizon, std::size_t workers) {
  if (workers <= 1) return 0;
  const auto wanted =
      static_cast<std::size_t>(std::bit_width(4 * workers - 1));
  return std::min(horizon, wanted);
}

ErrorTally sweep_all(const MealyMachine& machine, StateId start,
                     const Predictor& root, std::size_t horizon,
                     const EvaluationOptions& options) {
  const std::size_t depth = split_depth(horizon, options.workers);
  const std::size_t tasks = std::size_t{1} << depth;
  std::vector<ErrorTally> partial(tasks);
  detail::parallel_for(tasks, options.workers, [&](std::size_t i) {
    Sweeper sweeper(machine, root, horizon, options.per_step);
    partial[i] = sweeper.sweep(start, i, depth);
  });
  ErrorTally total;
  total.horizon = horizon;
  if (options.per_step) total.errors_at_step.assign(horizon, 0);
  for (const auto& p : partial) total.merge(p);
  return total;
}

}  // namespace

ErrorTally continuation_tally(const MealyMachine& machine, StateId start,
                              const Predictor& predictor, std::size_t horizon,
                              const EvaluationOptions& options) {
  check_horizon(horizon, options);
  if (start >= machine.num_states()) {
    throw InvalidStateError("start state out of range");
  }
  return sweep_all(machine, start, predictor, horizon, options);
}

ErrorReport make_report(const MealyMachine& machine,
                        const Predictor& predictor, const ErrorTally& tally,
                        EvaluationMethod method,
                        std::optional<std::uint64_t> seed) {
  ErrorReport report;
  report.machine_id = machine_id(machine);
  report.predictor_id = predictor.descriptor();
  report.horizon = tally.horizon;
  report.method = method;
  report.samples = tally.sequences;
  report.seed = seed;
  const BigCount denominator = BigCount(tally.sequences) * tally.horizon;
  report.e_ave = Rational(BigCount(tally.total_errors), denominator);
  report.e_wc = Rational(BigCount(tally.max_errors), BigCount(tally.horizon));
  if (!tally.errors_at_step.empty()) {
    std::vector<Rational> steps;
    steps.reserve(tally.errors_at_step.size());
    for (const auto e : tally.errors_at_step) {
      steps.emplace_back(BigCount(e), BigCount(tally.sequences));
    }
    report.per_step_errors = std::move(steps);
  }
  return report;
}

namespace {

void require_positive_horizon(std::size_t t) {
  if (t == 0) throw std::invalid_argument("horizon must be at least 1");
}

}  // namespace

ErrorReport evaluate_exhaustive(const MealyMachine& machine,
                                const Predictor& predictor, std::size_t t,
                                const EvaluationOptions& options) {
  require_positive_horizon(t);
  check_horizon(t, options);
  auto root = predictor.clone();
  root->reset();
  const ErrorTally tally =
      sweep_all(machine, machine.initial_state(), *root, t, options);
  return make_report(machine, predictor, tally, EvaluationMethod::exhaustive);
}

Rational predictor_machine_error(const Predictor& predictor,
                                 const MealyMachine& machine, std::size_t t,
                                 const EvaluationOptions& options) {
  EvaluationOptions quiet = options;
  quiet.per_step = false;
  return evaluate_exhaustive(machine, predictor, t, quiet).e_ave;
}

namespace {

constexpr std::uint64_t kSamplesPerBlock = 4096;

ErrorTally sample_block(const MealyMachine& machine, const Predictor& root,
                        std::size_t t, std::uint64_t seed, std::uint64_t block,
                        std::uint64_t count, bool per_step) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(block),
                    static_cast<std::uint32_t>(block >> 32)};
  std::mt19937_64 engine(seq);
  ErrorTally tally;
  tally.horizon = t;
  tally.sequences = count;
  if (per_step) tally.errors_at_step.assign(t, 0);
  auto p = root.clone();
  for (std::uint64_t n = 0; n < count; ++n) {
    p->assign(root);
    StateId state = machine.initial_state();
    std::uint64_t word = 0;
    std::uint64_t errors = 0;
    for (std::size_t i = 0; i < t; ++i) {
      if (i % 64 == 0) word = engine();
      const Bit input = static_cast<Bit>((word >> (i % 64)) & 1U);
      if (p->uses_hidden_state()) p->reveal_state(state);
      const Transition& tr = machine.entry(state, input);
      if (p->predict() != tr.output) {
        ++errors;
        if (per_step) ++tally.errors_at_step[i];
      }
      p->observe(tr.output);
      state = tr.next;
    }
    tally.total_errors += errors;
    tally.max_errors = std::max(tally.max_errors, errors);
  }
  return tally;
}

}  // namespace

ErrorReport evaluate_monte_carlo(const MealyMachine& machine,
                                 const Predictor& predictor, std::size_t t,
                                 std::uint64_t samples, std::uint64_t seed,
                                 const EvaluationOptions& options) {
  require_positive_horizon(t);
  if (samples == 0) throw std::invalid_argument("samples must be positive");
  auto root = predictor.clone();
  root->reset();
  const std::uint64_t blocks = (samples + kSamplesPerBlock - 1) / kSamplesPerBlock;
  std::vector<ErrorTally> partial(blocks);
  detail::parallel_for(blocks, options.workers, [&](std::size_t b) {
    const std::uint64_t begin = b * kSamplesPerBlock;
    const std::uint64_t count = std::min(kSamplesPerBlock, samples - begin);
    partial[b] = sample_block(machine, *root, t, seed, b, count, options.per_step);
  });
  ErrorTally total;
  total.horizon = t;
  if (options.per_step) total.errors_at_step.assign(t, 0);
  for (const auto& p : partial) total.merge(p);
  return make_report(machine, predictor, total, EvaluationMethod::monte_carlo,
                     seed);
}

}  // namespace mealypred
