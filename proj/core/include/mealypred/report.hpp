#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "mealypred/evaluation.hpp"

namespace mealypred {

using Json = nlohmann::ordered_json;

/// Flat "key: value" lines, one field per line.
std::string to_key_value(const ErrorReport& report);

/// Structured form with the field names of ErrorReport. Exact rationals are
/// "num/den" strings.
Json to_json(const ErrorReport& report);

ErrorReport error_report_from_json(const Json& json);

}  // namespace mealypred
