#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mealypred/bits.hpp"

namespace mealypred {

using StateId = std::uint32_t;

/// Output pattern of a state: Lab emits a on input 0 and b on input 1.
enum class StateClass : std::uint8_t { L00, L01, L10, L11 };

constexpr bool is_biased(StateClass c) noexcept {
  return c == StateClass::L00 || c == StateClass::L11;
}

const char* to_string(StateClass c) noexcept;

struct Transition {
  StateId next;
  Bit output;

  friend bool operator==(const Transition&, const Transition&) = default;
  friend auto operator<=>(const Transition&, const Transition&) = default;
};

/// Deterministic binary Mealy machine with a designated initial state.
///
/// The table is stored row-major by (state, input): entry 2*s + b holds the
/// transition taken from state s on input bit b. Instances are immutable.
class MealyMachine {
 public:
  /// Throws std::invalid_argument when the table size is not 2k, a target is
  /// out of range, an output is not a bit, or the initial state is invalid.
  MealyMachine(std::size_t num_states, std::vector<Transition> table,
               StateId initial_state = 0);

  std::size_t num_states() const noexcept { return num_states_; }
  StateId initial_state() const noexcept { return initial_; }

  /// Unchecked table lookup.
  const Transition& entry(StateId state, Bit input) const noexcept {
    return table_[2 * static_cast<std::size_t>(state) + input];
  }
  std::span<const Transition> table() const noexcept { return table_; }

  friend bool operator==(const MealyMachine&, const MealyMachine&) = default;

 private:
  std::size_t num_states_;
  std::vector<Transition> table_;
  StateId initial_;
};

/// Checked single step; throws InvalidStateError for a bad state index.
Transition step(const MealyMachine& machine, StateId state, Bit input);

/// Output sequence for `input`, starting from the initial state. Output bit i
/// is emitted while consuming input bit i, so lengths always agree.
BitSequence run(const MealyMachine& machine, const BitSequence& input);

struct RunTrace {
  BitSequence output;
  /// Active states including the initial one: input.size() + 1 entries.
  std::vector<StateId> path;
};

RunTrace run_traced(const MealyMachine& machine, const BitSequence& input);

StateClass classify_state(const MealyMachine& machine, StateId state);

std::vector<StateClass> classify_states(const MealyMachine& machine);

/// reachable[s] is true iff s can be reached from the initial state.
std::vector<bool> reachable_states(const MealyMachine& machine);

}  // namespace mealypred
