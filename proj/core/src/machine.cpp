#include "mealypred/machine.hpp"

#include <stdexcept>
#include <string>

#include "mealypred/errors.hpp"

namespace mealypred {

const char* to_string(StateClass c) noexcept {
  switch (c) {
    case StateClass::L00: return "L00";
    case StateClass::L01: return "L01";
    case StateClass::L10: return "L10";
    case StateClass::L11: return "L11";
  }
  return "?";
}

MealyMachine::MealyMachine(std::size_t num_states,
                           std::vector<Transition> table,
                           StateId initial_state)
    : num_states_(num_states), table_(std::move(table)), initial_(initial_state) {
  if (num_states_ == 0) {
    throw std::invalid_argument("machine needs at least one state");
  }
  if (table_.size() != 2 * num_states_) {
    throw std::invalid_argument("transition table must have 2k entries");
  }
  for (const auto& t : table_) {
    if (t.next >= num_states_) {
      throw std::invalid_argument("transition target " + std::to_string(t.next) +
                                  " out of range");
    }
    if (t.output > 1) throw std::invalid_argument("output must be 0 or 1");
  }
  if (initial_ >= num_states_) {
    throw std::invalid_argument("initial state out of range");
  }
}

namespace {

void check_state(const MealyMachine& machine, StateId state) {
  if (state >= machine.num_states()) {
    throw InvalidStateError("state " + std::to_string(state) +
                            " out of range for " +
                            std::to_string(machine.num_states()) +
                            "-state machine");
  }
}

}  // namespace

Transition step(const MealyMachine& machine, StateId state, Bit input) {
  check_state(machine, state);
  if (input > 1) throw std::invalid_argument("input must be 0 or 1");
  return machine.entry(state, input);
}

BitSequence run(const MealyMachine& machine, const BitSequence& input) {
  BitSequence output(input.size());
  StateId state = machine.initial_state();
  for (std::size_t i = 0; i < input.size(); ++i) {
    const Transition& t = machine.entry(state, input[i]);
    if (t.output) output.set(i, 1);
    state = t.next;
  }
  return output;
}

RunTrace run_traced(const MealyMachine& machine, const BitSequence& input) {
  RunTrace trace{BitSequence(input.size()), {}};
  trace.path.reserve(input.size() + 1);
  StateId state = machine.initial_state();
  trace.path.push_back(state);
  for (std::size_t i = 0; i < input.size(); ++i) {
    const Transition& t = machine.entry(state, input[i]);
    if (t.output) trace.output.set(i, 1);
    state = t.next;
    trace.path.push_back(state);
  }
  return trace;
}

StateClass classify_state(const MealyMachine& machine, StateId state) {
  check_state(machine, state);
  const unsigned code = 2U * machine.entry(state, 0).output +
                        machine.entry(state, 1).output;
  return static_cast<StateClass>(code);
}

std::vector<StateClass> classify_states(const MealyMachine& machine) {
  std::vector<StateClass> classes;
  classes.reserve(machine.num_states());
  for (StateId s = 0; s < machine.num_states(); ++s) {
    classes.push_back(classify_state(machine, s));
  }
  return classes;
}

std::vector<bool> reachable_states(const MealyMachine& machine) {
  std::vector<bool> seen(machine.num_states(), false);
  std::vector<StateId> stack{machine.initial_state()};
  seen[machine.initial_state()] = true;
  while (!stack.empty()) {
    const StateId s = stack.back();
    stack.pop_back();
    for (Bit b : {Bit{0}, Bit{1}}) {
      const StateId n = machine.entry(s, b).next;
      if (!seen[n]) {
        seen[n] = true;
        stack.push_back(n);
      }
    }
  }
  return seen;
}

}  // namespace mealypred
