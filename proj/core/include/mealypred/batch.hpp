#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "mealypred/bits.hpp"
#include "mealypred/consistency.hpp"
#include "mealypred/evaluation.hpp"
#include "mealypred/machine.hpp"
#include "mealypred/numeric.hpp"
#include "mealypred/predictor_spec.hpp"

namespace mealypred {

/// Choose among `predictors` for the continuation o_{t+1..T} of the training
/// data o_1..o_t, knowing only that the data came from one of `candidates`.
struct BatchProblem {
  std::vector<MealyMachine> candidates;
  BitSequence training;
  /// T; must exceed training.size().
  std::size_t horizon = 0;
  std::vector<PredictorSpec> predictors;
};

enum class PairWeighting {
  /// Every consistent (sequence, machine) pair counts once.
  per_pair,
  /// Each surviving machine carries total weight 1, split over its pairs.
  machine_uniform,
};

struct BatchOptions {
  PairWeighting weighting = PairWeighting::per_pair;
  EvaluationOptions evaluation;
  /// Cap on n * 2^t pairs represented by the consistency vectors.
  std::uint64_t pair_cap = std::uint64_t{1} << 26;
};

struct BatchScore {
  PredictorSpec predictor;
  /// Sum over consistent pairs of E^{T-t}(P, (g, G_m)).
  Rational score;
  /// Mistakes on the training data itself; reported, never used to rank.
  std::size_t training_errors = 0;
};

struct BatchSelection {
  std::size_t best = 0;
  std::vector<BatchScore> scores;
  /// Consistent pairs per candidate, as counts of sequences per end state.
  std::vector<ConsistencyVector> pairs;

  const BatchScore& best_score() const { return scores.at(best); }
  /// True when the selected predictor makes more training mistakes than some
  /// other predictor in the table.
  bool selected_is_not_training_minimizer() const;
  /// The selection scores strictly better than every predictor with the
  /// fewest training mistakes, so the outcome does not hinge on a tie.
  bool beats_training_minimizers() const;
};

/// Throws InconsistentObservationError when no candidate can produce the
/// training data, std::invalid_argument for a malformed problem, and
/// CapExceededError when the continuation or pair count is over its cap.
/// Ties go to the earliest predictor.
BatchSelection batch_select(const BatchProblem& problem,
                            const BatchOptions& options = {});

/// Sum over consistent pairs of the continuation error rate of `trained`
/// (a predictor that has already consumed the training data) over
/// `continuation` further steps, weighted per `weighting`.
Rational score_continuation(const Predictor& trained,
                            const std::vector<MealyMachine>& candidates,
                            const std::vector<ConsistencyVector>& pairs,
                            std::size_t continuation, PairWeighting weighting,
                            const EvaluationOptions& options = {});

/// Per-candidate consistency vectors after the training data.
std::vector<ConsistencyVector> consistent_pairs(
    const std::vector<MealyMachine>& candidates, const BitSequence& training);

struct WitnessSearchOptions {
  /// Candidate machines are drawn from all canonical machines with at most
  /// this many states; sets have one or two members.
  std::size_t max_states = 2;
  std::size_t max_candidates = 2;
  std::size_t max_training_length = 6;
  std::size_t continuation_length = 4;
  EvaluationOptions evaluation;
};

struct OccamWitness {
  BatchProblem problem;
  BatchSelection selection;
};

/// Default predictor pool for witness search: constant 0 and 1, repeat-last,
/// flip-last, consistency for each candidate, and the ensemble.
std::vector<PredictorSpec> default_predictor_pool(std::size_t candidates);

/// First instance (in a fixed enumeration order over candidate sets, then
/// training strings by length and value) whose batch selection is not a
/// training-error minimizer and strictly outscores every minimizer.
std::optional<OccamWitness> find_occam_witness(
    const WitnessSearchOptions& options = {});

}  // namespace mealypred
