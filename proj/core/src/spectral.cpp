#include "mealypred/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace mealypred {

AdjacencyMatrix::AdjacencyMatrix(const MealyMachine& machine)
    : size_(machine.num_states()), entries_(size_ * size_, 0) {
  for (StateId s = 0; s < size_; ++s) {
    for (Bit b : {Bit{0}, Bit{1}}) {
      ++entries_[s * size_ + machine.entry(s, b).next];
    }
  }
}

std::vector<std::vector<Rational>> AdjacencyMatrix::normalized() const {
  std::vector<std::vector<Rational>> n(size_, std::vector<Rational>(size_));
  for (std::size_t i = 0; i < size_; ++i) {
    for (std::size_t j = 0; j < size_; ++j) {
      n[i][j] = Rational((*this)(i, j), 2);
    }
  }
  return n;
}

AdjacencyMatrix adjacency(const MealyMachine& machine) {
  return AdjacencyMatrix(machine);
}

const char* to_string(FrequencyMethod method) noexcept {
  switch (method) {
    case FrequencyMethod::eigen: return "eigen";
    case FrequencyMethod::cesaro: return "cesaro";
    case FrequencyMethod::empirical: return "empirical";
  }
  return "?";
}

namespace {

// out = v N, where N moves half of each state's mass along each input.
void apply_normalized(const MealyMachine& machine, const std::vector<double>& v,
                      std::vector<double>& out) {
  std::fill(out.begin(), out.end(), 0.0);
  for (StateId s = 0; s < machine.num_states(); ++s) {
    if (v[s] == 0.0) continue;
    const double half = 0.5 * v[s];
    out[machine.entry(s, 0).next] += half;
    out[machine.entry(s, 1).next] += half;
  }
}

}  // namespace

StationaryVector stationary_frequencies(const MealyMachine& machine,
                                        double tolerance,
                                        std::size_t max_iterations) {
  const std::size_t k = machine.num_states();
  std::vector<double> v(k, 0.0);
  v[machine.initial_state()] = 1.0;
  std::vector<double> moved(k), next(k);

  StationaryVector result;
  result.method = FrequencyMethod::empirical;
  result.residual = 1.0;
  for (std::size_t it = 1; it <= max_iterations; ++it) {
    apply_normalized(machine, v, moved);
    double change = 0.0;
    for (std::size_t s = 0; s < k; ++s) {
      next[s] = 0.5 * (v[s] + moved[s]);
      change = std::max(change, std::abs(next[s] - v[s]));
    }
    v.swap(next);
    result.iterations = it;
    result.residual = change;
    if (change < tolerance) {
      result.method = FrequencyMethod::cesaro;
      break;
    }
  }
  result.weights = std::move(v);
  return result;
}

std::vector<double> cesaro_average(const MealyMachine& machine,
                                   std::size_t horizon) {
  const std::size_t k = machine.num_states();
  std::vector<double> v(k, 0.0), next(k), sum(k, 0.0);
  v[machine.initial_state()] = 1.0;
  for (std::size_t i = 0; i < horizon; ++i) {
    for (std::size_t s = 0; s < k; ++s) sum[s] += v[s];
    apply_normalized(machine, v, next);
    v.swap(next);
  }
  if (horizon > 0) {
    for (auto& x : sum) x /= static_cast<double>(horizon);
  }
  return sum;
}

double stationarity_residual(const MealyMachine& machine,
                             const std::vector<double>& v) {
  std::vector<double> moved(machine.num_states());
  apply_normalized(machine, v, moved);
  double worst = 0.0;
  for (std::size_t s = 0; s < v.size(); ++s) {
    worst = std::max(worst, std::abs(moved[s] - v[s]));
  }
  return worst;
}

double perfect_knowledge_error_bound(const MealyMachine& machine,
                                     const StationaryVector& frequencies) {
  double unbiased = 0.0;
  for (StateId s = 0; s < machine.num_states(); ++s) {
    if (!is_biased(classify_state(machine, s))) {
      unbiased += frequencies.weights.at(s);
    }
  }
  return 0.5 * unbiased;
}

}  // namespace mealypred
