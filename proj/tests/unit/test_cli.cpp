#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "config.hpp"

using namespace mealypred;
using mealypred::cli::run;

namespace {

const std::string kData = MEALYPRED_DATA_DIR;

std::string machine_path(const std::string& name) {
  return kData + "/machines/" + name + ".mealy";
}

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  Result r;
  r.code = run(args, in, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

nlohmann::ordered_json structured(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("structured");
  const auto r = call(args);
  REQUIRE_MESSAGE(r.code == 0, r.err);
  return nlohmann::ordered_json::parse(r.out);
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "mealypred_test_cli";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("run") {
  SUBCASE("figure1 machine") {
    const auto r = call({"run", machine_path("figure1"), "001111"});
    CHECK(r.code == 0);
    CHECK(r.out == "output: 000100\npath: 0 1 4 5 6 0 2\n");
  }
  SUBCASE("constant 0 on ones") {
    CHECK(call({"run", machine_path("constant0"), "11111111"}).out ==
          "output: 00000000\npath: 0 0 0 0 0 0 0 0 0\n");
  }
  SUBCASE("empty input") {
    const auto j = structured({"run", machine_path("figure1")});
    CHECK(j["result"]["output"] == "");
    CHECK(j["result"]["path"] == nlohmann::ordered_json::array({0}));
  }
  SUBCASE("machine and bits from stdin") {
    std::ifstream f(machine_path("shift"));
    const std::string text((std::istreambuf_iterator<char>(f)), {});
    CHECK(call({"run", "-", "010111"}, text).out == "output: 001011\npath: 0 0 1 0 1 1 1\n");
    CHECK(call({"run", machine_path("shift"), "-"}, "0101 11\n").out ==
          "output: 001011\npath: 0 0 1 0 1 1 1\n");
    CHECK(call({"run", "-", "-"}, text).code == 2);
  }
  SUBCASE("bad alphabet and bad machine") {
    CHECK(call({"run", machine_path("shift"), "0120"}).code == 2);
    const auto bad = scratch("bad.mealy");
    std::ofstream(bad) << "mealy 2\ninitial 0\n0 0 -> 9 0\n";
    const auto r = call({"run", bad.string(), "0"});
    CHECK(r.code == 2);
    CHECK(r.err.find("line 3") != std::string::npos);
  }
}

TEST_CASE("analyze") {
  SUBCASE("alternating ring") {
    const auto j = structured({"analyze", machine_path("alternating")});
    CHECK(j["result"]["unbiased"].empty());
    CHECK(j["result"]["perfect_knowledge_bound"] == 0.0);
    CHECK(j["result"]["stationary"]["method"] == "cesaro");
  }
  SUBCASE("difference machine") {
    const auto j = structured({"analyze", machine_path("difference")});
    CHECK(j["result"]["biased"].empty());
    CHECK(j["result"]["perfect_knowledge_bound"].get<double>() == doctest::Approx(0.5));
    for (double w : j["result"]["stationary"]["weights"]) CHECK(w == doctest::Approx(0.5));
  }
  SUBCASE("unreachable state") {
    const auto j = structured({"analyze", machine_path("unreachable")});
    CHECK(j["result"]["unreachable"] == nlohmann::ordered_json::array({2}));
    CHECK(j["result"]["states"][2]["frequency"] == 0.0);
    CHECK(j["result"]["states"][2]["reachable"] == false);
  }
  SUBCASE("non-convergence is still success") {
    const auto j = structured({"analyze", machine_path("figure1"), "--max-iterations", "3"});
    CHECK(j["result"]["stationary"]["method"] == "empirical");
    CHECK(j["result"]["stationary"]["residual"].get<double>() > 0);
  }
}

TEST_CASE("predict") {
  const auto j = structured({"predict", machine_path("alternating"), "0101010"});
  CHECK(j["result"]["predictions"] == "0101010");
  CHECK(j["result"]["errors"] == 0);

  CHECK(call({"predict", machine_path("constant0"), "0010"}).code == 4);
  CHECK(call({"predict", machine_path("shift"), "0010", "--predictor", "known-state"}).code ==
        2);
  const auto known = structured(
      {"predict", machine_path("figure1"), "001111", "--predictor", "known-state", "--from-input"});
  CHECK(known["result"]["observed"] == "000100");

  const auto ens = structured({"predict", machine_path("constant0"), "--candidate",
                               machine_path("constant1"), "00", "--predictor", "ensemble"});
  CHECK(ens["result"]["predictions"] == "00");
  CHECK(call({"predict", machine_path("constant0"), "--candidate", machine_path("constant1"),
              "01", "--predictor", "ensemble"})
            .code == 4);
}

TEST_CASE("evaluate") {
  const auto j = structured({"evaluate", machine_path("shift"), "-t", "10"});
  CHECK(j["result"]["e_ave"] == "9/20");
  CHECK(j["result"]["method"] == "exhaustive");
  CHECK(j["result"]["samples"] == 1024);
  CHECK(j["machines"][0]["machine_id"].get<std::string>().size() == 16);
  CHECK(j["config"]["t"] == 10);
  CHECK_FALSE(j["config"].contains("workers"));

  const auto mc = structured({"evaluate", machine_path("shift"), "-t", "30", "--method",
                              "monte_carlo", "--samples", "2000", "--seed", "5"});
  CHECK(mc["result"]["seed"] == 5);
  CHECK(mc["result"]["e_wc_is_lower_bound"] == true);

  CHECK(call({"evaluate", machine_path("shift"), "-t", "30"}).code == 3);
  CHECK(call({"evaluate", machine_path("constant0"), "-t", "25", "--i-know-this-is-big"}).code ==
        0);
  CHECK(call({"evaluate", machine_path("shift"), "--method", "guess"}).code == 2);
  CHECK(call({"evaluate", machine_path("shift"), "--predictor", "oracle"}).code == 2);

  const auto automaton = structured({"evaluate", machine_path("alternating"), "-t", "10",
                                     "--predictor", "automaton:" + machine_path("echo")});
  CHECK(automaton["result"]["e_ave"] == "9/10");
}

TEST_CASE("batch-select") {
  const auto j = structured({"batch-select", machine_path("constant0"), machine_path("constant1"),
                             "--training", "0000", "-t", "8"});
  CHECK(j["result"]["best"] == "constant:0");
  CHECK(j["result"]["best_score"] == "0/1");

  const auto chosen = structured({"batch-select", machine_path("constant0"),
                                  machine_path("constant1"), "--training", "0000", "-t", "8",
                                  "--predictor", "constant:1", "--predictor", "ensemble",
                                  "--machine-uniform"});
  CHECK(chosen["result"]["best"] == "ensemble");
  CHECK(chosen["result"]["scores"].size() == 2);
  CHECK(chosen["result"]["weighting"] == "machine_uniform");

  const auto file = scratch("train.bits");
  std::ofstream(file) << "00 00\n";
  CHECK(call({"batch-select", machine_path("constant0"), "--training-file", file.string()})
            .code == 0);
  CHECK(call({"batch-select", machine_path("constant0"), "--training", "0100"}).code == 4);
  CHECK(call({"batch-select", machine_path("constant0"), "--training", "0000", "-t", "3"})
            .code == 2);
}

TEST_CASE("enumerate") {
  CHECK(call({"enumerate", "-k", "2", "--count-only"}).out == "256\n");
  CHECK(call({"enumerate", "-k", "1", "--count-only"}).out == "4\n");
  const auto listed = call({"enumerate", "-k", "1", "--mode", "canonical"});
  CHECK(listed.code == 0);
  std::size_t records = 0;
  for (std::size_t pos = 0; (pos = listed.out.find("mealy 1", pos)) != std::string::npos; ++pos) {
    ++records;
  }
  CHECK(records == 4);
  const auto j = structured({"enumerate", "-k", "2", "--mode", "canonical"});
  CHECK(j["result"]["count"] == j["result"]["machines"].size());
  CHECK(call({"enumerate", "-k", "4", "--count-only"}).code == 3);
  CHECK(call({"enumerate", "-k", "4", "--count-only", "--raw-cap", "4"}).code == 0);
  CHECK(call({"enumerate", "--mode", "weird"}).code == 2);
}

TEST_CASE("search") {
  const auto j = structured({"search", machine_path("alternating"), "-k", "2", "-t", "10"});
  CHECK(j["result"]["best"]["score"] == "0/1");
  CHECK(j["result"]["search_space_size"] == 256);
  CHECK(call({"search", machine_path("alternating"), "-k", "2"}).out.find("best machine:\nmealy 2") !=
        std::string::npos);

  const auto train = scratch("zeros.bits");
  std::ofstream(train) << "000\n";
  const auto after = structured({"search", machine_path("constant0"), machine_path("constant1"),
                                 "-k", "1", "-t", "6", "--after-training", train.string()});
  CHECK(after["result"]["best"]["score"] == "0/1");
  CHECK(after["result"]["training"] == "000");
}

TEST_CASE("config files") {
  cli::ExperimentConfig c;
  c.command = "evaluate";
  c.machines = {machine_path("shift")};
  c.horizon = 8;
  c.predictor = "constant:1";
  c.workers = 3;
  CHECK(cli::config_from_json(cli::to_json(c)) == c);
  CHECK(cli::config_from_json(cli::to_json(cli::ExperimentConfig{})) == cli::ExperimentConfig{});

  const auto path = scratch("experiment.json");
  std::ofstream(path) << cli::to_json(c).dump(2);
  const auto from_file = call({"--config", path.string(), "--format", "structured"});
  REQUIRE(from_file.code == 0);
  const auto j = nlohmann::ordered_json::parse(from_file.out);
  CHECK(j["result"]["predictor_id"] == "constant:1");
  CHECK(j["result"]["t"] == 8);
  CHECK(j["config"] == cli::experiment_json(c));

  // Flags override the file.
  const auto overridden = call({"--config", path.string(), "evaluate", machine_path("shift"),
                                "-t", "6", "--format", "structured"});
  CHECK(nlohmann::ordered_json::parse(overridden.out)["result"]["t"] == 6);

  std::ofstream(path) << R"({"command": "run", "bogus": 1})";
  CHECK(call({"--config", path.string()}).code == 2);
  std::ofstream(path) << "{not json";
  CHECK(call({"--config", path.string()}).code == 2);
}

TEST_CASE("usage, output file and timestamps") {
  CHECK(call({}).code == 2);
  CHECK(call({"run", "--bogus-flag"}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
  CHECK(call({"--help"}).code == 0);
  CHECK(call({"--version"}).code == 0);
  CHECK(call({"run", "/nonexistent.mealy"}).code == 2);

  const auto out = scratch("report.json");
  const auto r = call({"evaluate", machine_path("shift"), "--format", "structured", "--out",
                       out.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(out);
  CHECK(nlohmann::ordered_json::parse(f)["result"]["e_ave"] == "9/20");

  const auto plain = call({"run", machine_path("shift"), "01"});
  const auto stamped = call({"run", machine_path("shift"), "01", "--timestamps"});
  CHECK(stamped.out.starts_with("# "));
  CHECK(stamped.out.ends_with(plain.out));
}

TEST_CASE("structured output does not depend on workers") {
  const std::vector<std::vector<std::string>> commands{
      {"evaluate", machine_path("figure1"), "-t", "14", "--per-step"},
      {"evaluate", machine_path("figure1"), "-t", "40", "--method", "monte_carlo"},
      {"search", machine_path("shift"), machine_path("figure1"), "-k", "2", "-t", "8"},
  };
  for (auto args : commands) {
    args.push_back("--format");
    args.push_back("structured");
    auto one = args;
    one.insert(one.end(), {"--workers", "1"});
    auto eight = args;
    eight.insert(eight.end(), {"--workers", "8"});
    const auto a = call(one);
    REQUIRE(a.code == 0);
    CHECK(a.out == call(one).out);
    CHECK(a.out == call(eight).out);
  }
}
