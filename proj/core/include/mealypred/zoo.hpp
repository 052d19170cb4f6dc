#pragma once

#include <span>

#include "mealypred/machine.hpp"

// Small named machines used throughout the tests, benchmarks and CLI docs.
namespace mealypred::zoo {

/// One state that emits `bit` on both inputs.
MealyMachine constant(Bit bit);

/// One state whose output equals its input.
MealyMachine identity();

/// Ring of outputs.size() states; both inputs advance to the next state and
/// state i emits outputs[i]. The output is periodic and input-independent.
MealyMachine ring(std::span<const Bit> outputs);

/// Two-state ring emitting 0101...
MealyMachine alternating();

/// Delay by one step: the state stores the previous input and emits it.
/// Input 010111 produces 001011.
MealyMachine shift();

/// Output is the XOR of the current and previous input. Both states are
/// unbiased.
MealyMachine difference();

/// Seven-state machine consistent with the worked example of input 001111
/// producing 000100 along S0 S1 S4 S5 S7 S0 S2. Index i carries label
/// figure1_labels()[i]; transitions not exercised by the example are fixed
/// arbitrarily.
MealyMachine figure1();
std::span<const char* const> figure1_labels();

}  // namespace mealypred::zoo
