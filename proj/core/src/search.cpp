#include "mealypred/search.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "mealypred/batch.hpp"
#include "mealypred/errors.hpp"
#include "mealypred/machine_format.hpp"
#include "mealypred/parallel.hpp"
#include "mealypred/zoo.hpp"

namespace mealypred {

AutomatonPredictor::AutomatonPredictor(
    std::shared_ptr<const MealyMachine> machine, std::string name)
    : machine_(std::move(machine)), name_(std::move(name)) {
  reset();
}

void AutomatonPredictor::reset() {
  const Transition& primed = machine_->entry(machine_->initial_state(), 0);
  state_ = primed.next;
  prediction_ = primed.output;
}

void AutomatonPredictor::observe(Bit actual) {
  const Transition& t = machine_->entry(state_, actual);
  state_ = t.next;
  prediction_ = t.output;
}

AutomatonPredictor automaton_as_predictor(const MealyMachine& machine) {
  return AutomatonPredictor(std::make_shared<const MealyMachine>(machine));
}

namespace predicting_automata {

MealyMachine repeat_last() { return zoo::identity(); }

MealyMachine flip_last() { return MealyMachine(1, {{0, 1}, {0, 0}}); }

}  // namespace predicting_automata

namespace {

using Scorer = std::function<Rational(const AutomatonPredictor&)>;

SearchResult run_search(std::size_t k, const SearchOptions& options,
                        const Scorer& score) {
  if (options.top_n == 0) throw std::invalid_argument("top_n must be positive");
  const auto candidates =
      enumerate_machines(k, EnumerationMode::canonical, options.caps);

  std::vector<Rational> scores(candidates.size());
  detail::parallel_for(candidates.size(), options.evaluation.workers,
                       [&](std::size_t i) {
                         const AutomatonPredictor p(
                             std::make_shared<const MealyMachine>(candidates[i]));
                         scores[i] = score(p);
                       });

  std::vector<ScoredMachine> ranked;
  ranked.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    ranked.push_back(ScoredMachine{candidates[i], scores[i],
                                   serialize_machine(candidates[i])});
  }
  const std::size_t keep = std::min(options.top_n, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(keep),
                    ranked.end(), [](const ScoredMachine& a, const ScoredMachine& b) {
                      if (a.score != b.score) return a.score < b.score;
                      return a.serialization < b.serialization;
                    });
  ranked.erase(ranked.begin() + static_cast<std::ptrdiff_t>(keep), ranked.end());

  SearchResult result{ranked.front(), std::move(ranked), raw_machine_count(k),
                      candidates.size()};
  return result;
}

EvaluationOptions inner_options(const EvaluationOptions& options) {
  EvaluationOptions inner = options;
  inner.workers = 1;
  inner.per_step = false;
  return inner;
}

}  // namespace

SearchResult search_best_predictor(std::span<const MealyMachine> targets,
                                   std::size_t k, std::size_t t,
                                   const SearchOptions& options) {
  if (targets.empty()) throw std::invalid_argument("no target machines");
  check_enumeration_cap(k, EnumerationMode::canonical, options.caps);
  check_horizon(t, options.evaluation);
  const EvaluationOptions inner = inner_options(options.evaluation);
  return run_search(k, options, [&](const AutomatonPredictor& p) {
    Rational sum = 0;
    for (const auto& target : targets) {
      sum += evaluate_exhaustive(target, p, t, inner).e_ave;
    }
    return sum;
  });
}

SearchResult search_best_predictor_after_training(
    std::span<const MealyMachine> targets, const BitSequence& training,
    std::size_t k, std::size_t horizon, const SearchOptions& options) {
  if (targets.empty()) throw std::invalid_argument("no target machines");
  if (horizon <= training.size()) {
    throw std::invalid_argument("horizon must exceed the training length");
  }
  check_enumeration_cap(k, EnumerationMode::canonical, options.caps);
  const std::size_t continuation = horizon - training.size();
  check_horizon(continuation, options.evaluation);

  const std::vector<MealyMachine> candidates(targets.begin(), targets.end());
  const auto pairs = consistent_pairs(candidates, training);
  if (std::all_of(pairs.begin(), pairs.end(),
                  [](const ConsistencyVector& v) { return v.is_zero(); })) {
    throw InconsistentObservationError(
        "training data cannot be produced by any target machine");
  }
  const EvaluationOptions inner = inner_options(options.evaluation);
  return run_search(k, options, [&](const AutomatonPredictor& p) {
    AutomatonPredictor trained = p;
    for (std::size_t i = 0; i < training.size(); ++i) trained.observe(training[i]);
    return score_continuation(trained, candidates, pairs, continuation,
                              PairWeighting::per_pair, inner);
  });
}

}  // namespace mealypred
