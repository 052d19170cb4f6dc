#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mealypred/machine.hpp"
#include "mealypred/numeric.hpp"
#include "mealypred/predictor.hpp"

namespace mealypred {

inline constexpr std::size_t kDefaultHorizonCap = 24;
/// Exhaustive sweeps never go past this, acknowledged or not; the error
/// totals are 64-bit.
inline constexpr std::size_t kHardHorizonLimit = 48;

struct EvaluationOptions {
  std::size_t workers = 1;
  std::size_t horizon_cap = kDefaultHorizonCap;
  /// Lifts horizon_cap (up to kHardHorizonLimit).
  bool allow_big = false;
  bool per_step = false;
};

enum class EvaluationMethod : std::uint8_t { exhaustive, monte_carlo };

const char* to_string(EvaluationMethod method) noexcept;

struct ErrorReport {
  std::string machine_id;
  std::string predictor_id;
  std::size_t horizon = 0;
  /// Mean of the per-sequence error rate E^t(g).
  Rational e_ave;
  /// Largest per-sequence error rate seen. A lower bound on the true maximum
  /// for Monte Carlo reports.
  Rational e_wc;
  EvaluationMethod method = EvaluationMethod::exhaustive;
  /// Number of generating sequences averaged over (2^t when exhaustive).
  std::uint64_t samples = 0;
  std::optional<std::uint64_t> seed;
  /// Average error at each step i = 1..t, when requested.
  std::optional<std::vector<Rational>> per_step_errors;

  bool e_wc_is_lower_bound() const noexcept {
    return method == EvaluationMethod::monte_carlo;
  }
};

/// Raw error counts over a set of generating sequences.
struct ErrorTally {
  std::size_t horizon = 0;
  std::uint64_t sequences = 0;
  std::uint64_t total_errors = 0;
  std::uint64_t max_errors = 0;
  /// errors_at_step[i]: summed errors at step i + 1 (empty unless requested).
  std::vector<std::uint64_t> errors_at_step;

  void merge(const ErrorTally& other);
};

/// Exact E_ave and E_wc over all 2^t generating sequences. The predictor is
/// copied and reset; the caller's instance is untouched. Throws
/// CapExceededError when t is above the cap.
ErrorReport evaluate_exhaustive(const MealyMachine& machine,
                                const Predictor& predictor, std::size_t t,
                                const EvaluationOptions& options = {});

/// Estimate from `samples` uniformly drawn generating sequences. Sample j is
/// drawn from an mt19937_64 stream determined by (seed, j / 4096) alone, so
/// the result does not depend on the worker count.
ErrorReport evaluate_monte_carlo(const MealyMachine& machine,
                                 const Predictor& predictor, std::size_t t,
                                 std::uint64_t samples, std::uint64_t seed,
                                 const EvaluationOptions& options = {});

/// E^t(P, G): exact average per-bit error of P on G over all 2^t inputs.
Rational predictor_machine_error(const Predictor& predictor,
                                 const MealyMachine& machine, std::size_t t,
                                 const EvaluationOptions& options = {});

/// Error counts of `predictor` in its current state (not reset) over all
/// 2^horizon continuations of `machine` started at `start`. This is the
/// building block for scoring after a training prefix.
ErrorTally continuation_tally(const MealyMachine& machine, StateId start,
                              const Predictor& predictor, std::size_t horizon,
                              const EvaluationOptions& options = {});

ErrorReport make_report(const MealyMachine& machine,
                        const Predictor& predictor, const ErrorTally& tally,
                        EvaluationMethod method,
                        std::optional<std::uint64_t> seed = std::nullopt);

/// Throws CapExceededError if t is not allowed by `options`.
void check_horizon(std::size_t t, const EvaluationOptions& options);

}  // namespace mealypred
