#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mealypred/bits.hpp"
#include "mealypred/consistency.hpp"
#include "mealypred/machine.hpp"

namespace mealypred {

/// Online next-bit predictor. The driver alternates predict() and
/// observe(actual); reset() returns to the state held at construction.
class Predictor {
 public:
  virtual ~Predictor() = default;

  virtual Bit predict() const = 0;
  virtual void observe(Bit actual) = 0;
  virtual void reset() = 0;

  virtual std::unique_ptr<Predictor> clone() const = 0;
  /// Copies the full state of `other`, which must have the same dynamic type.
  virtual void assign(const Predictor& other) = 0;

  /// Short, stable identifier used in reports.
  virtual std::string descriptor() const = 0;

  /// Oracle predictors receive the generating machine's active state before
  /// each prediction. Everyone else ignores it.
  virtual bool uses_hidden_state() const noexcept { return false; }
  virtual void reveal_state(StateId /*state*/) {}
};

template <class Derived>
class PredictorBase : public Predictor {
 public:
  std::unique_ptr<Predictor> clone() const override {
    return std::make_unique<Derived>(static_cast<const Derived&>(*this));
  }
  void assign(const Predictor& other) override {
    static_cast<Derived&>(*this) = dynamic_cast<const Derived&>(other);
  }
};

/// What a consistency-tracking predictor does when the observed bit rules out
/// every tracked sequence.
enum class InconsistencyPolicy {
  /// Throw InconsistentObservationError.
  strict,
  /// Keep the all-zero vector; ties then predict 0 for the rest of the run.
  /// Used when scoring a predictor against a machine it was not built for.
  lenient,
};

class ConstantPredictor final : public PredictorBase<ConstantPredictor> {
 public:
  explicit ConstantPredictor(Bit bit) : bit_(bit) {}

  Bit predict() const override { return bit_; }
  void observe(Bit) override {}
  void reset() override {}
  std::string descriptor() const override;

 private:
  Bit bit_;
};

/// Knows the machine and is told its active state. Biased states give their
/// forced output; unbiased states predict 0.
class KnownStatePredictor final : public PredictorBase<KnownStatePredictor> {
 public:
  explicit KnownStatePredictor(std::shared_ptr<const MealyMachine> machine);

  Bit predict() const override;
  /// No-op: the state is revealed before every prediction.
  void observe(Bit) override {}
  void reset() override;
  std::string descriptor() const override { return "known-state"; }

  bool uses_hidden_state() const noexcept override { return true; }
  void reveal_state(StateId state) override;

  StateId state() const noexcept { return state_; }

 private:
  std::shared_ptr<const MealyMachine> machine_;
  StateId state_;
};

/// Knows the machine but not its active state: tracks the consistency vector
/// and predicts 0 iff #p >= #q.
class ConsistencyPredictor final
    : public PredictorBase<ConsistencyPredictor> {
 public:
  explicit ConsistencyPredictor(
      std::shared_ptr<const MealyMachine> machine,
      InconsistencyPolicy policy = InconsistencyPolicy::strict);

  Bit predict() const override;
  void observe(Bit actual) override;
  void reset() override;
  std::string descriptor() const override { return "consistency"; }

  const ConsistencyVector& vector() const noexcept { return vector_; }
  /// #p: continuations emitting 0.
  BigCount zero_count() const;
  /// #q: continuations emitting 1.
  BigCount one_count() const;
  bool inconsistent() const noexcept { return inconsistent_; }

 private:
  std::shared_ptr<const MealyMachine> machine_;
  std::shared_ptr<const OutputTransitionMatrices> matrices_;
  InconsistencyPolicy policy_;
  ConsistencyVector vector_;
  bool inconsistent_ = false;
};

/// Tracks consistent (machine, sequence) pairs over a finite set of machines,
/// each pair counting once. Machines that cannot explain the data drop out.
class EnsemblePredictor final : public PredictorBase<EnsemblePredictor> {
 public:
  explicit EnsemblePredictor(
      std::vector<std::shared_ptr<const MealyMachine>> machines,
      InconsistencyPolicy policy = InconsistencyPolicy::strict);

  Bit predict() const override;
  void observe(Bit actual) override;
  void reset() override;
  std::string descriptor() const override { return "ensemble"; }

  std::size_t machine_count() const noexcept { return members_.size(); }
  const ConsistencyVector& vector(std::size_t machine) const {
    return members_.at(machine).vector;
  }
  bool eliminated(std::size_t machine) const;
  BigCount zero_count() const;
  BigCount one_count() const;

 private:
  struct Member {
    std::shared_ptr<const MealyMachine> machine;
    std::shared_ptr<const OutputTransitionMatrices> matrices;
    ConsistencyVector vector;
  };

  std::vector<Member> members_;
  InconsistencyPolicy policy_;
  bool inconsistent_ = false;
};

/// One online run: predictions, the observed bits, and running error count.
struct PredictorTrace {
  BitSequence predictions;
  BitSequence observed;
  std::vector<std::size_t> cumulative_errors;

  std::size_t errors() const noexcept {
    return cumulative_errors.empty() ? 0 : cumulative_errors.back();
  }
};

/// Feeds `observed` to a fresh copy of `predictor`. Predictors that use the
/// hidden state need `states` (the active state before each step).
PredictorTrace trace_predictor(const Predictor& predictor,
                               const BitSequence& observed,
                               const std::vector<StateId>* states = nullptr);

}  // namespace mealypred
