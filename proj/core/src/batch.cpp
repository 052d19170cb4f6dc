#include "mealypred/batch.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>

#include "mealypred/enumeration.hpp"
#include "mealypred/errors.hpp"
#include "mealypred/search.hpp"

namespace mealypred {

bool BatchSelection::selected_is_not_training_minimizer() const {
  const auto chosen = best_score().training_errors;
  return std::any_of(scores.begin(), scores.end(), [&](const BatchScore& s) {
    return s.training_errors < chosen;
  });
}

bool BatchSelection::beats_training_minimizers() const {
  std::size_t fewest = best_score().training_errors;
  for (const auto& s : scores) fewest = std::min(fewest, s.training_errors);
  if (fewest == best_score().training_errors) return false;
  return std::all_of(scores.begin(), scores.end(), [&](const BatchScore& s) {
    return s.training_errors != fewest || best_score().score < s.score;
  });
}

std::vector<ConsistencyVector> consistent_pairs(
    const std::vector<MealyMachine>& candidates, const BitSequence& training) {
  std::vector<ConsistencyVector> pairs;
  pairs.reserve(candidates.size());
  for (const auto& machine : candidates) {
    const OutputTransitionMatrices m(machine);
    auto v = ConsistencyVector::initial(machine);
    for (std::size_t i = 0; i < training.size() && !v.is_zero(); ++i) {
      v.advance(m, training[i]);
    }
    pairs.push_back(std::move(v));
  }
  return pairs;
}

Rational score_continuation(const Predictor& trained,
                            const std::vector<MealyMachine>& candidates,
                            const std::vector<ConsistencyVector>& pairs,
                            std::size_t continuation, PairWeighting weighting,
                            const EvaluationOptions& options) {
  const BigCount per_pair_denominator =
      BigCount(continuation) * (BigCount(1) << continuation);
  Rational score = 0;
  for (std::size_t m = 0; m < candidates.size(); ++m) {
    const ConsistencyVector& v = pairs[m];
    if (v.is_zero()) continue;
    BigCount weighted_errors = 0;
    for (StateId s = 0; s < v.size(); ++s) {
      if (v[s] == 0) continue;
      const ErrorTally tally =
          continuation_tally(candidates[m], s, trained, continuation, options);
      weighted_errors += v[s] * tally.total_errors;
    }
    Rational contribution(weighted_errors, per_pair_denominator);
    if (weighting == PairWeighting::machine_uniform) {
      contribution /= Rational(v.total());
    }
    score += contribution;
  }
  return score;
}

BatchSelection batch_select(const BatchProblem& problem,
                            const BatchOptions& options) {
  if (problem.candidates.empty()) {
    throw std::invalid_argument("batch problem needs candidate machines");
  }
  if (problem.predictors.empty()) {
    throw std::invalid_argument("batch problem needs predictors");
  }
  if (problem.horizon <= problem.training.size()) {
    throw std::invalid_argument("horizon must exceed the training length");
  }
  const std::size_t t = problem.training.size();
  const std::size_t continuation = problem.horizon - t;
  check_horizon(continuation, options.evaluation);
  if (t >= 63 || (std::uint64_t{1} << t) >
                     options.pair_cap / problem.candidates.size()) {
    throw CapExceededError("pair space n * 2^t = " +
                           std::to_string(problem.candidates.size()) + " * 2^" +
                           std::to_string(t) + " exceeds the cap");
  }

  BatchSelection selection;
  selection.pairs = consistent_pairs(problem.candidates, problem.training);
  if (std::all_of(selection.pairs.begin(), selection.pairs.end(),
                  [](const ConsistencyVector& v) { return v.is_zero(); })) {
    throw InconsistentObservationError(
        "training data cannot be produced by any candidate machine");
  }

  std::vector<std::shared_ptr<const MealyMachine>> shared;
  shared.reserve(problem.candidates.size());
  for (const auto& m : problem.candidates) {
    shared.push_back(std::make_shared<const MealyMachine>(m));
  }

  for (const auto& spec : problem.predictors) {
    if (spec.kind == PredictorSpec::Kind::known_state) {
      throw std::invalid_argument(
          "known-state predictors need the hidden state and cannot be "
          "batch-selected");
    }
    auto predictor = make_predictor(spec, shared, InconsistencyPolicy::lenient);
    predictor->reset();
    BatchScore row{spec, 0, 0};
    for (std::size_t i = 0; i < t; ++i) {
      if (predictor->predict() != problem.training[i]) ++row.training_errors;
      predictor->observe(problem.training[i]);
    }
    row.score = score_continuation(*predictor, problem.candidates,
                                   selection.pairs, continuation,
                                   options.weighting, options.evaluation);
    selection.scores.push_back(std::move(row));
  }

  for (std::size_t i = 1; i < selection.scores.size(); ++i) {
    if (selection.scores[i].score < selection.scores[selection.best].score) {
      selection.best = i;
    }
  }
  return selection;
}

std::vector<PredictorSpec> default_predictor_pool(std::size_t candidates) {
  std::vector<PredictorSpec> pool;
  PredictorSpec zero;
  zero.kind = PredictorSpec::Kind::constant;
  zero.bit = 0;
  PredictorSpec one = zero;
  one.bit = 1;
  pool.push_back(zero);
  pool.push_back(one);
  pool.push_back(automaton_spec(predicting_automata::repeat_last(), "repeat-last"));
  pool.push_back(automaton_spec(predicting_automata::flip_last(), "flip-last"));
  for (std::size_t i = 0; i < candidates; ++i) {
    PredictorSpec c;
    c.kind = PredictorSpec::Kind::consistency;
    c.candidate = i;
    pool.push_back(c);
  }
  if (candidates > 1) {
    PredictorSpec e;
    e.kind = PredictorSpec::Kind::ensemble;
    pool.push_back(e);
  }
  return pool;
}

namespace {

std::optional<OccamWitness> try_candidates(
    const std::vector<MealyMachine>& candidates,
    const WitnessSearchOptions& options) {
  BatchOptions batch_options;
  batch_options.evaluation = options.evaluation;
  for (std::size_t length = 1; length <= options.max_training_length; ++length) {
    for (std::uint64_t value = 0; value < (std::uint64_t{1} << length); ++value) {
      BatchProblem problem{candidates, BitSequence::from_integer(value, length),
                           length + options.continuation_length,
                           default_predictor_pool(candidates.size())};
      const auto pairs = consistent_pairs(candidates, problem.training);
      if (std::all_of(pairs.begin(), pairs.end(),
                      [](const ConsistencyVector& v) { return v.is_zero(); })) {
        continue;
      }
      auto selection = batch_select(problem, batch_options);
      if (selection.beats_training_minimizers()) {
        return OccamWitness{std::move(problem), std::move(selection)};
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<OccamWitness> find_occam_witness(
    const WitnessSearchOptions& options) {
  std::vector<MealyMachine> pool;
  for (std::size_t k = 1; k <= options.max_states; ++k) {
    auto machines = enumerate_machines(k, EnumerationMode::canonical);
    pool.insert(pool.end(), machines.begin(), machines.end());
  }
  if (options.max_candidates >= 1) {
    for (const auto& m : pool) {
      if (auto w = try_candidates({m}, options)) return w;
    }
  }
  if (options.max_candidates >= 2) {
    for (std::size_t i = 0; i < pool.size(); ++i) {
      for (std::size_t j = i + 1; j < pool.size(); ++j) {
        if (auto w = try_candidates({pool[i], pool[j]}, options)) return w;
      }
    }
  }
  return std::nullopt;
}

}  // namespace mealypred
