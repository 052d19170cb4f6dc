#include "mealypred/predictor.hpp"

#include <stdexcept>

#include "mealypred/errors.hpp"

namespace mealypred {

std::string ConstantPredictor::descriptor() const {
  return bit_ ? "constant:1" : "constant:0";
}

KnownStatePredictor::KnownStatePredictor(
    std::shared_ptr<const MealyMachine> machine)
    : machine_(std::move(machine)), state_(machine_->initial_state()) {}

Bit KnownStatePredictor::predict() const {
  const Bit on_zero = machine_->entry(state_, 0).output;
  const Bit on_one = machine_->entry(state_, 1).output;
  // Biased: both outputs agree. Unbiased: tie, predict 0.
  return on_zero == on_one ? on_zero : Bit{0};
}

void KnownStatePredictor::reset() { state_ = machine_->initial_state(); }

void KnownStatePredictor::reveal_state(StateId state) {
  if (state >= machine_->num_states()) {
    throw InvalidStateError("revealed state out of range");
  }
  state_ = state;
}

ConsistencyPredictor::ConsistencyPredictor(
    std::shared_ptr<const MealyMachine> machine, InconsistencyPolicy policy)
    : machine_(std::move(machine)),
      matrices_(std::make_shared<const OutputTransitionMatrices>(*machine_)),
      policy_(policy),
      vector_(ConsistencyVector::initial(*machine_)) {}

BigCount ConsistencyPredictor::zero_count() const {
  return vector_.continuations(*matrices_, 0);
}

BigCount ConsistencyPredictor::one_count() const {
  return vector_.continuations(*matrices_, 1);
}

Bit ConsistencyPredictor::predict() const {
  return zero_count() >= one_count() ? Bit{0} : Bit{1};
}

void ConsistencyPredictor::observe(Bit actual) {
  if (inconsistent_) return;
  vector_.advance(*matrices_, actual);
  if (vector_.is_zero()) {
    inconsistent_ = true;
    if (policy_ == InconsistencyPolicy::strict) {
      throw InconsistentObservationError(
          "observed output cannot be produced by the machine");
    }
  }
}

void ConsistencyPredictor::reset() {
  vector_ = ConsistencyVector::initial(*machine_);
  inconsistent_ = false;
}

EnsemblePredictor::EnsemblePredictor(
    std::vector<std::shared_ptr<const MealyMachine>> machines,
    InconsistencyPolicy policy)
    : policy_(policy) {
  if (machines.empty()) {
    throw std::invalid_argument("ensemble needs at least one machine");
  }
  members_.reserve(machines.size());
  for (auto& m : machines) {
    auto matrices = std::make_shared<const OutputTransitionMatrices>(*m);
    auto v = ConsistencyVector::initial(*m);
    members_.push_back(Member{std::move(m), std::move(matrices), std::move(v)});
  }
}

bool EnsemblePredictor::eliminated(std::size_t machine) const {
  return members_.at(machine).vector.is_zero();
}

BigCount EnsemblePredictor::zero_count() const {
  BigCount sum = 0;
  for (const auto& m : members_) sum += m.vector.continuations(*m.matrices, 0);
  return sum;
}

BigCount EnsemblePredictor::one_count() const {
  BigCount sum = 0;
  for (const auto& m : members_) sum += m.vector.continuations(*m.matrices, 1);
  return sum;
}

Bit EnsemblePredictor::predict() const {
  return zero_count() >= one_count() ? Bit{0} : Bit{1};
}

void EnsemblePredictor::observe(Bit actual) {
  if (inconsistent_) return;
  bool any = false;
  for (auto& m : members_) {
    if (m.vector.is_zero()) continue;
    m.vector.advance(*m.matrices, actual);
    any = any || !m.vector.is_zero();
  }
  if (!any) {
    inconsistent_ = true;
    if (policy_ == InconsistencyPolicy::strict) {
      throw InconsistentObservationError(
          "observed output cannot be produced by any machine in the ensemble");
    }
  }
}

void EnsemblePredictor::reset() {
  for (auto& m : members_) m.vector = ConsistencyVector::initial(*m.machine);
  inconsistent_ = false;
}

PredictorTrace trace_predictor(const Predictor& predictor,
                               const BitSequence& observed,
                               const std::vector<StateId>* states) {
  if (predictor.uses_hidden_state() &&
      (states == nullptr || states->size() < observed.size())) {
    throw std::invalid_argument(
        "predictor needs the active state before every step");
  }
  auto p = predictor.clone();
  p->reset();
  PredictorTrace trace{BitSequence(observed.size()), observed, {}};
  trace.cumulative_errors.reserve(observed.size());
  std::size_t errors = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (p->uses_hidden_state()) p->reveal_state((*states)[i]);
    const Bit guess = p->predict();
    if (guess) trace.predictions.set(i, 1);
    if (guess != observed[i]) ++errors;
    trace.cumulative_errors.push_back(errors);
    p->observe(observed[i]);
  }
  return trace;
}

}  // namespace mealypred
