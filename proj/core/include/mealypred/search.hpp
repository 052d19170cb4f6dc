#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mealypred/bits.hpp"
#include "mealypred/enumeration.hpp"
#include "mealypred/evaluation.hpp"
#include "mealypred/machine.hpp"
#include "mealypred/numeric.hpp"
#include "mealypred/predictor.hpp"

namespace mealypred {

/// A Mealy machine read as a predictor: it consumes observed bits and its
/// output on consuming bit i is the prediction for bit i + 1. Before anything
/// is observed it consumes a virtual 0 (a real step), and the output of that
/// step is the first prediction.
class AutomatonPredictor final : public PredictorBase<AutomatonPredictor> {
 public:
  explicit AutomatonPredictor(std::shared_ptr<const MealyMachine> machine,
                              std::string name = "automaton");

  Bit predict() const override { return prediction_; }
  void observe(Bit actual) override;
  void reset() override;
  std::string descriptor() const override { return name_; }

  StateId state() const noexcept { return state_; }
  const MealyMachine& machine() const noexcept { return *machine_; }

 private:
  std::shared_ptr<const MealyMachine> machine_;
  std::string name_;
  StateId state_ = 0;
  Bit prediction_ = 0;
};

AutomatonPredictor automaton_as_predictor(const MealyMachine& machine);

namespace predicting_automata {

/// One state echoing its input: predicts the last observed bit repeats.
MealyMachine repeat_last();
/// One state inverting its input: predicts the last observed bit flips.
MealyMachine flip_last();

}  // namespace predicting_automata

struct ScoredMachine {
  MealyMachine machine;
  Rational score;
  std::string serialization;
};

struct SearchResult {
  ScoredMachine best;
  /// Sorted by (score, serialization); at most top_n entries.
  std::vector<ScoredMachine> leaderboard;
  std::uint64_t search_space_size = 0;
  std::uint64_t evaluated = 0;
};

struct SearchOptions {
  std::size_t top_n = 10;
  EnumerationCaps caps;
  EvaluationOptions evaluation;
};

/// Exhaustive search over canonical k-state predicting automata for the
/// least sum over targets of the exact E_ave at horizon t.
SearchResult search_best_predictor(std::span<const MealyMachine> targets,
                                   std::size_t k, std::size_t t,
                                   const SearchOptions& options = {});

/// Same search where each automaton first consumes `training` and is then
/// scored on the continuation up to `horizon`, summed over the (sequence,
/// target) pairs consistent with the training data.
SearchResult search_best_predictor_after_training(
    std::span<const MealyMachine> targets, const BitSequence& training,
    std::size_t k, std::size_t horizon, const SearchOptions& options = {});

}  // namespace mealypred
