#include "mealypred/consistency.hpp"

#include <algorithm>

namespace mealypred {

OutputTransitionMatrices::OutputTransitionMatrices(const MealyMachine& machine)
    : size_(machine.num_states()) {
  for (Bit d : {Bit{0}, Bit{1}}) {
    entries_[d].assign(size_ * size_, 0);
    row_sums_[d].assign(size_, 0);
  }
  for (StateId s = 0; s < size_; ++s) {
    for (Bit b : {Bit{0}, Bit{1}}) {
      const Transition& t = machine.entry(s, b);
      ++entries_[t.output][s * size_ + t.next];
      ++row_sums_[t.output][s];
    }
  }
}

ConsistencyVector ConsistencyVector::initial(const MealyMachine& machine) {
  std::vector<BigCount> counts(machine.num_states());
  counts[machine.initial_state()] = 1;
  return ConsistencyVector(std::move(counts));
}

ConsistencyVector::ConsistencyVector(std::vector<BigCount> counts)
    : counts_(std::move(counts)) {}

BigCount ConsistencyVector::total() const {
  BigCount sum = 0;
  for (const auto& c : counts_) sum += c;
  return sum;
}

bool ConsistencyVector::is_zero() const {
  return std::all_of(counts_.begin(), counts_.end(),
                     [](const BigCount& c) { return c == 0; });
}

BigCount ConsistencyVector::continuations(const OutputTransitionMatrices& m,
                                          Bit output) const {
  BigCount sum = 0;
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    switch (m.emitting(output, i)) {
      case 0: break;
      case 1: sum += counts_[i]; break;
      default: sum += counts_[i] * m.emitting(output, i); break;
    }
  }
  return sum;
}

void ConsistencyVector::advance(const OutputTransitionMatrices& m, Bit output) {
  const std::size_t k = counts_.size();
  std::vector<BigCount> next(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (counts_[i] == 0 || m.emitting(output, i) == 0) continue;
    for (std::size_t j = 0; j < k; ++j) {
      const auto w = m(output, i, j);
      if (w == 1) {
        next[j] += counts_[i];
      } else if (w == 2) {
        next[j] += 2 * counts_[i];
      }
    }
  }
  counts_ = std::move(next);
}

}  // namespace mealypred
