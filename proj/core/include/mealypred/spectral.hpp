#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mealypred/machine.hpp"
#include "mealypred/numeric.hpp"

namespace mealypred {

/// entry(i, j) counts the input bits that take state i to state j. Every row
/// sums to 2.
class AdjacencyMatrix {
 public:
  explicit AdjacencyMatrix(const MealyMachine& machine);

  std::size_t size() const noexcept { return size_; }
  std::uint8_t operator()(std::size_t i, std::size_t j) const noexcept {
    return entries_[i * size_ + j];
  }

  /// A / 2 in exact arithmetic; rows sum to exactly 1.
  std::vector<std::vector<Rational>> normalized() const;

 private:
  std::size_t size_;
  std::vector<std::uint8_t> entries_;
};

AdjacencyMatrix adjacency(const MealyMachine& machine);

enum class FrequencyMethod : std::uint8_t { eigen, cesaro, empirical };

const char* to_string(FrequencyMethod method) noexcept;

struct StationaryVector {
  std::vector<double> weights;
  FrequencyMethod method = FrequencyMethod::cesaro;
  /// Max-norm change of the last iteration.
  double residual = 0.0;
  std::size_t iterations = 0;
};

inline constexpr double kDefaultTolerance = 1e-10;
inline constexpr std::size_t kDefaultMaxIterations = 1'000'000;

/// Long-run fraction of time each state is active, started from the initial
/// state: lim_T (1/T) sum_{i<T} (N^i)_{s0,.} with N = A/2.
///
/// The time average is evaluated through the lazy chain L = (I + N)/2, whose
/// powers converge geometrically to the same limit for every stochastic N,
/// periodic or reducible. Iteration stops once successive iterates differ by
/// less than `tolerance` in max-norm; otherwise the last iterate is returned
/// tagged `empirical` with its residual.
StationaryVector stationary_frequencies(
    const MealyMachine& machine, double tolerance = kDefaultTolerance,
    std::size_t max_iterations = kDefaultMaxIterations);

/// Finite-horizon running average (1/T) sum_{i<T} (N^i)_{s0,.}: the expected
/// fraction of the first T steps spent in each state.
std::vector<double> cesaro_average(const MealyMachine& machine,
                                   std::size_t horizon);

/// Max-norm of v N - v.
double stationarity_residual(const MealyMachine& machine,
                             const std::vector<double>& v);

/// (1/2) * sum of frequencies over unbiased states: the long-run average
/// error of the predictor that always knows the active state.
double perfect_knowledge_error_bound(const MealyMachine& machine,
                                     const StationaryVector& frequencies);

}  // namespace mealypred
