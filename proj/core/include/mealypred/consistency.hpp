#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "mealypred/machine.hpp"
#include "mealypred/numeric.hpp"

namespace mealypred {

/// M_d(i, j) counts the inputs b with transition(i, b) = j and
/// output(i, b) = d. M_0 + M_1 equals the adjacency matrix.
class OutputTransitionMatrices {
 public:
  explicit OutputTransitionMatrices(const MealyMachine& machine);

  std::size_t size() const noexcept { return size_; }
  std::uint8_t operator()(Bit output, std::size_t i,
                          std::size_t j) const noexcept {
    return entries_[output][i * size_ + j];
  }

  /// Row sums of M_d: how many inputs at state i emit d.
  std::uint8_t emitting(Bit output, std::size_t i) const noexcept {
    return row_sums_[output][i];
  }

 private:
  std::size_t size_;
  std::array<std::vector<std::uint8_t>, 2> entries_;
  std::array<std::vector<std::uint8_t>, 2> row_sums_;
};

/// counts[i]: number of generating sequences that reproduce the observed
/// output prefix and leave the machine in state i.
class ConsistencyVector {
 public:
  /// One sequence (the empty one) at the initial state.
  static ConsistencyVector initial(const MealyMachine& machine);

  explicit ConsistencyVector(std::vector<BigCount> counts);

  std::size_t size() const noexcept { return counts_.size(); }
  const BigCount& operator[](std::size_t i) const noexcept {
    return counts_[i];
  }
  const std::vector<BigCount>& counts() const noexcept { return counts_; }

  BigCount total() const;
  bool is_zero() const;

  /// Number of one-bit extensions whose next output is `output`:
  /// |v M_output|_1. For output 0 this is #p, for output 1 it is #q.
  BigCount continuations(const OutputTransitionMatrices& m, Bit output) const;

  /// v <- v M_output.
  void advance(const OutputTransitionMatrices& m, Bit output);

  friend bool operator==(const ConsistencyVector&,
                         const ConsistencyVector&) = default;

 private:
  std::vector<BigCount> counts_;
};

}  // namespace mealypred
