#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "mealypred/machine.hpp"
#include "mealypred/predictor.hpp"

namespace mealypred {

/// Serializable description of a predictor, as used by batch selection and
/// the CLI. Textual forms:
///
///   constant:0 | constant:1
///   consistency          (the evaluated / first candidate machine)
///   consistency:<i>      (candidate machine i)
///   known-state[:<i>]   (oracle that is told the active state)
///   ensemble             (all candidate machines)
///   automaton:<path>     (predicting automaton loaded from a machine file)
struct PredictorSpec {
  enum class Kind { constant, consistency, known_state, ensemble, automaton };

  Kind kind = Kind::consistency;
  Bit bit = 0;
  std::optional<std::size_t> candidate;
  /// Automaton kind: the predicting machine and the path it came from.
  std::optional<MealyMachine> machine;
  std::string source;

  std::string label() const;

  friend bool operator==(const PredictorSpec&, const PredictorSpec&) = default;
};

/// Parses the textual form. `automaton:<path>` keeps the path in `source`;
/// loading the file is left to resolve_automaton().
PredictorSpec parse_predictor_spec(std::string_view text);

/// Loads the machine file named by an automaton spec. No-op for other kinds.
void resolve_automaton(PredictorSpec& spec);

PredictorSpec automaton_spec(MealyMachine machine, std::string label);

/// Builds a predictor against `candidates`: consistency:<i> and known-state
/// refer to candidates[i] (default 0), ensemble to all of them.
std::unique_ptr<Predictor> make_predictor(
    const PredictorSpec& spec,
    std::span<const std::shared_ptr<const MealyMachine>> candidates,
    InconsistencyPolicy policy = InconsistencyPolicy::strict);

}  // namespace mealypred
