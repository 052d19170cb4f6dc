#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mealypred/report.hpp"

namespace mealypred::cli {

enum class OutputFormat { human, structured };

/// Everything one invocation needs. Defaults are the values below; a config
/// file may set any subset of them and flags override the file.
struct ExperimentConfig {
  std::string command;
  std::vector<std::string> machines;

  // run / predict: inline bits, or "-" for stdin.
  std::string input;
  std::string input_file;
  std::string predictor = "consistency";
  /// predict: treat the bits as the generating sequence of machines[0].
  bool from_input = false;

  std::size_t horizon = 10;
  std::string method = "exhaustive";
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
  bool per_step = false;

  // batch-select
  std::string training;
  std::string training_file;
  std::vector<std::string> predictors;
  bool machine_uniform = false;

  // enumerate / search
  std::size_t states = 2;
  std::string mode = "raw";
  bool count_only = false;
  std::size_t top = 10;
  std::string after_training;

  // caps
  std::size_t horizon_cap = 24;
  std::uint64_t pair_cap = std::uint64_t{1} << 26;
  std::size_t raw_cap = 3;
  std::size_t canonical_cap = 4;
  bool allow_big = false;

  double tolerance = 1e-10;
  std::size_t max_iterations = 1'000'000;

  // Execution settings. They never change a result, so they are left out of
  // the config embedded in reports.
  std::size_t workers = 1;
  std::string format = "human";
  std::string out;
  bool timestamps = false;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

Json to_json(const ExperimentConfig& config);
/// Only the fields that can influence results.
Json experiment_json(const ExperimentConfig& config);
/// Missing fields take their defaults; unknown fields are an error.
ExperimentConfig config_from_json(const Json& json);
ExperimentConfig load_config_file(const std::string& path);

OutputFormat parse_format(const std::string& text);

}  // namespace mealypred::cli
