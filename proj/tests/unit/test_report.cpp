#include "doctest.h"

#include <memory>

#include "mealypred/evaluation.hpp"
#include "mealypred/report.hpp"
#include "mealypred/zoo.hpp"

using namespace mealypred;

namespace {

ErrorReport sample_report(bool monte_carlo) {
  auto m = std::make_shared<const MealyMachine>(zoo::shift());
  EvaluationOptions options;
  options.per_step = true;
  if (monte_carlo) {
    return evaluate_monte_carlo(*m, ConsistencyPredictor(m), 12, 500, 9, options);
  }
  return evaluate_exhaustive(*m, ConsistencyPredictor(m), 10, options);
}

}  // namespace

TEST_CASE("json fields and round trip") {
  for (bool mc : {false, true}) {
    const auto report = sample_report(mc);
    const auto json = to_json(report);
    CHECK(json.at("machine_id") == report.machine_id);
    CHECK(json.at("predictor_id") == report.predictor_id);
    CHECK(json.at("t") == report.horizon);
    CHECK(json.at("e_wc_is_lower_bound") == mc);
    CHECK(json.at("method") == (mc ? "monte_carlo" : "exhaustive"));
    CHECK(json.contains("seed") == mc);
    CHECK(json.at("per_step_errors").size() == report.horizon);

    const auto back = error_report_from_json(json);
    CHECK(back.machine_id == report.machine_id);
    CHECK(back.e_ave == report.e_ave);
    CHECK(back.e_wc == report.e_wc);
    CHECK(back.method == report.method);
    CHECK(back.samples == report.samples);
    CHECK(back.seed == report.seed);
    CHECK(back.per_step_errors == report.per_step_errors);
    CHECK(to_json(back).dump() == json.dump());
  }
}

TEST_CASE("exact values are fractions") {
  const auto json = to_json(sample_report(false));
  CHECK(json.at("e_ave") == "9/20");
  CHECK(json.at("e_wc") == "9/10");
}

TEST_CASE("key-value form") {
  const auto text = to_key_value(sample_report(false));
  CHECK(text.find("e_ave: 9/20") != std::string::npos);
  CHECK(text.find("method: exhaustive") != std::string::npos);
  CHECK(text.find("t: 10") != std::string::npos);
  CHECK(text.back() == '\n');
}

TEST_CASE("malformed json is rejected") {
  auto json = to_json(sample_report(false));
  json["e_ave"] = "abc";
  CHECK_THROWS(error_report_from_json(json));
  json = to_json(sample_report(false));
  json.erase("machine_id");
  CHECK_THROWS(error_report_from_json(json));
}
