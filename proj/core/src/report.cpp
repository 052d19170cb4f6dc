#include "mealypred/report.hpp"

#include <sstream>
#include <stdexcept>

namespace mealypred {

std::string to_key_value(const ErrorReport& r) {
  std::ostringstream out;
  out << "machine_id: " << r.machine_id << '\n'
      << "predictor_id: " << r.predictor_id << '\n'
      << "t: " << r.horizon << '\n'
      << "e_ave: " << to_fraction_string(r.e_ave) << '\n'
      << "e_wc: " << to_fraction_string(r.e_wc) << '\n'
      << "method: " << to_string(r.method) << '\n'
      << "samples: " << r.samples << '\n';
  if (r.seed) out << "seed: " << *r.seed << '\n';
  if (r.e_wc_is_lower_bound()) out << "e_wc_is_lower_bound: true\n";
  if (r.per_step_errors) {
    out << "per_step_errors:";
    for (const auto& e : *r.per_step_errors) out << ' ' << to_fraction_string(e);
    out << '\n';
  }
  return out.str();
}

Json to_json(const ErrorReport& r) {
  Json j;
  j["machine_id"] = r.machine_id;
  j["predictor_id"] = r.predictor_id;
  j["t"] = r.horizon;
  j["e_ave"] = to_fraction_string(r.e_ave);
  j["e_wc"] = to_fraction_string(r.e_wc);
  j["method"] = to_string(r.method);
  j["samples"] = r.samples;
  if (r.seed) j["seed"] = *r.seed;
  j["e_wc_is_lower_bound"] = r.e_wc_is_lower_bound();
  if (r.per_step_errors) {
    Json steps = Json::array();
    for (const auto& e : *r.per_step_errors) steps.push_back(to_fraction_string(e));
    j["per_step_errors"] = std::move(steps);
  }
  return j;
}

ErrorReport error_report_from_json(const Json& j) {
  ErrorReport r;
  r.machine_id = j.at("machine_id").get<std::string>();
  r.predictor_id = j.at("predictor_id").get<std::string>();
  r.horizon = j.at("t").get<std::size_t>();
  r.e_ave = parse_fraction(j.at("e_ave").get<std::string>());
  r.e_wc = parse_fraction(j.at("e_wc").get<std::string>());
  const auto method = j.at("method").get<std::string>();
  if (method == "exhaustive") {
    r.method = EvaluationMethod::exhaustive;
  } else if (method == "monte_carlo") {
    r.method = EvaluationMethod::monte_carlo;
  } else {
    throw std::invalid_argument("unknown method '" + method + "'");
  }
  r.samples = j.at("samples").get<std::uint64_t>();
  if (j.contains("seed")) r.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("per_step_errors")) {
    std::vector<Rational> steps;
    for (const auto& e : j.at("per_step_errors")) {
      steps.push_back(parse_fraction(e.get<std::string>()));
    }
    r.per_step_errors = std::move(steps);
  }
  return r;
}

}  // namespace mealypred
