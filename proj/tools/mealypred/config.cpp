#include "config.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

#include "mealypred/errors.hpp"

namespace mealypred::cli {

namespace {

// One list drives both directions so the field set cannot drift.
template <typename Config, typename Visit>
void for_each_field(Config& c, Visit&& visit) {
  visit("command", c.command);
  visit("machines", c.machines);
  visit("input", c.input);
  visit("input_file", c.input_file);
  visit("predictor", c.predictor);
  visit("from_input", c.from_input);
  visit("t", c.horizon);
  visit("method", c.method);
  visit("samples", c.samples);
  visit("seed", c.seed);
  visit("per_step", c.per_step);
  visit("training", c.training);
  visit("training_file", c.training_file);
  visit("predictors", c.predictors);
  visit("machine_uniform", c.machine_uniform);
  visit("k", c.states);
  visit("mode", c.mode);
  visit("count_only", c.count_only);
  visit("top", c.top);
  visit("after_training", c.after_training);
  visit("horizon_cap", c.horizon_cap);
  visit("pair_cap", c.pair_cap);
  visit("raw_cap", c.raw_cap);
  visit("canonical_cap", c.canonical_cap);
  visit("allow_big", c.allow_big);
  visit("tolerance", c.tolerance);
  visit("max_iterations", c.max_iterations);
  visit("workers", c.workers);
  visit("format", c.format);
  visit("out", c.out);
  visit("timestamps", c.timestamps);
}

const std::set<std::string>& execution_fields() {
  static const std::set<std::string> fields{"workers", "format", "out", "timestamps"};
  return fields;
}

}  // namespace

Json to_json(const ExperimentConfig& config) {
  Json j = Json::object();
  for_each_field(config, [&](const char* key, const auto& value) { j[key] = value; });
  return j;
}

Json experiment_json(const ExperimentConfig& config) {
  Json j = to_json(config);
  for (const auto& key : execution_fields()) j.erase(key);
  return j;
}

ExperimentConfig config_from_json(const Json& json) {
  if (!json.is_object()) throw ParseError(0, "config must be a JSON object");
  ExperimentConfig c;
  std::set<std::string> known;
  for_each_field(c, [&](const char* key, auto& value) {
    known.insert(key);
    if (!json.contains(key)) return;
    try {
      json.at(key).get_to(value);
    } catch (const nlohmann::json::exception&) {
      throw ParseError(0, std::string("config field '") + key + "' has the wrong type");
    }
  });
  for (const auto& [key, value] : json.items()) {
    if (!known.contains(key)) throw ParseError(0, "unknown config field '" + key + "'");
  }
  return c;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open config '" + path + "'");
  Json json;
  try {
    json = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, path + ": " + e.what());
  }
  return config_from_json(json);
}

OutputFormat parse_format(const std::string& text) {
  if (text == "human") return OutputFormat::human;
  if (text == "structured") return OutputFormat::structured;
  throw std::invalid_argument("unknown format '" + text + "' (human|structured)");
}

}  // namespace mealypred::cli
