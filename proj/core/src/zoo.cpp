#include "mealypred/zoo.hpp"

#include <array>
#include <stdexcept>

namespace mealypred::zoo {

MealyMachine constant(Bit bit) {
  return MealyMachine(1, {{0, bit}, {0, bit}});
}

MealyMachine identity() {
  return MealyMachine(1, {{0, 0}, {0, 1}});
}

MealyMachine ring(std::span<const Bit> outputs) {
  if (outputs.empty()) throw std::invalid_argument("ring needs a state");
  const auto n = static_cast<StateId>(outputs.size());
  std::vector<Transition> table;
  table.reserve(2 * n);
  for (StateId s = 0; s < n; ++s) {
    const Transition t{(s + 1) % n, outputs[s]};
    table.push_back(t);
    table.push_back(t);
  }
  return MealyMachine(n, std::move(table));
}

MealyMachine alternating() {
  constexpr std::array<Bit, 2> outputs{0, 1};
  return ring(outputs);
}

MealyMachine shift() {
  return MealyMachine(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
}

MealyMachine difference() {
  return MealyMachine(2, {{0, 0}, {1, 1}, {0, 1}, {1, 0}});
}

namespace {

constexpr std::array<const char*, 7> kFigure1Labels{"S0", "S1", "S2", "S3",
                                                    "S4", "S5", "S7"};

}  // namespace

MealyMachine figure1() {
  // Indices: S0=0 S1=1 S2=2 S3=3 S4=4 S5=5 S7=6.
  return MealyMachine(7, {
      {1, 0}, {2, 0},  // S0
      {4, 0}, {3, 1},  // S1
      {3, 1}, {4, 0},  // S2
      {5, 1}, {0, 0},  // S3
      {2, 1}, {5, 0},  // S4
      {0, 0}, {6, 1},  // S5
      {3, 1}, {0, 0},  // S7
  });
}

std::span<const char* const> figure1_labels() { return kFigure1Labels; }

}  // namespace mealypred::zoo
