#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "saa/cli.hpp"
#include "saa/io.hpp"
#include "saa/solver.hpp"

using nlohmann::json;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("saa_cli_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("unknown problem id is a usage error") {
  CHECK(saa::cli::run({"solve", "--problem", "unknown"}) == 1);
  CHECK(saa::cli::run({"counterexample", "--problem", "twomode"}) == 1);
  CHECK(saa::cli::run({"definitely-not-a-subcommand"}) == 1);
}

TEST_CASE("counterexample writes one CSV row") {
  TempDir tmp;
  const std::string out = tmp.file("ce.csv");
  const int rc = saa::cli::run({"counterexample", "--problem", "p2", "--N", "100",
                                "--trials", "2000", "--delta", "0", "--seed", "0",
                                "--out", out});
  CHECK(rc == 0);
  const std::string text = slurp(out);
  CHECK(text.rfind("problem,N,trials,delta,feasible_count,feasible_fraction\n", 0) == 0);
  // p2 at delta=0 is feasible about half the time
  const auto comma = text.rfind(',');
  const double frac = std::stod(text.substr(comma + 1));
  CHECK(frac > 0.45);
  CHECK(frac < 0.55);
}

TEST_CASE("concentration table contains the calculator rows") {
  TempDir tmp;
  const std::string out = tmp.file("conc.csv");
  const int rc = saa::cli::run({"concentration", "--alpha", "0.5", "--m2", "1.0",
                                "--hbar", "1.0", "--trace-sigma0", "0.0", "--D",
                                "2.0", "--d", "60", "--n", "6", "--eps", "0.2",
                                "--N", "20", "--out", out});
  CHECK(rc == 0);
  const std::string text = slurp(out);
  CHECK(text.rfind("quantity,value\n", 0) == 0);
  CHECK(text.find("c_tilde,69315.4362117684") != std::string::npos);
  CHECK(text.find("required_sample_size,") != std::string::npos);
}

TEST_CASE("infeasible solves exit with code 2") {
  // shrink the relaxation until the closed form says p2 is infeasible
  TempDir tmp;
  bool exercised = false;
  for (std::uint64_t seed = 0; seed < 20 && !exercised; ++seed) {
    const double delta = saa::RelaxationSchedule(1e-6, 0.1).delta_at(100);
    const auto oracle =
        saa::solve_counterexample("p2", 100, delta, saa::SeedSpec{seed, 0});
    if (oracle.feasible) continue;
    exercised = true;
    const int rc = saa::cli::run({"solve", "--problem", "p2", "--N", "100", "--C",
                                  "1e-6", "--eps", "0.1", "--starts", "2", "--seed",
                                  std::to_string(seed), "--out", tmp.file("inf.json")});
    CHECK(rc == 2);
    const json doc = json::parse(slurp(tmp.file("inf.json")));
    CHECK(doc.at("status") == "Infeasible");
  }
  CHECK(exercised);
}

TEST_CASE("solve emits a canonical JSON report") {
  TempDir tmp;
  const std::string out = tmp.file("report.json");
  const int rc = saa::cli::run({"solve", "--problem", "p2", "--N", "200", "--C", "1",
                                "--eps", "0.1", "--starts", "3", "--seed", "0",
                                "--out", out});
  CHECK(rc == 0);
  const json doc = json::parse(slurp(out));
  CHECK(doc.at("status") == "Optimal");
  CHECK(doc.at("starts").size() == 3);
  CHECK(doc.at("u_star").size() == 1);
  CHECK(doc.at("eq_residual").get<double>() <= doc.at("delta").get<double>() + 1e-7);
}

TEST_CASE("config file keys are validated and round-trip canonically") {
  TempDir tmp;
  const std::string cfg = tmp.file("cfg.json");
  {
    std::ofstream out(cfg);
    out << R"({"N": 100, "problem": "p2", "trials": 500})";
  }
  CHECK(saa::cli::run({"counterexample", "--config", cfg, "--out",
                       tmp.file("a.csv")}) == 0);

  // unknown key is rejected
  const std::string bad = tmp.file("bad.json");
  {
    std::ofstream out(bad);
    out << R"({"trails": 500})";
  }
  CHECK(saa::cli::run({"counterexample", "--config", bad}) == 1);

  // explicit flags override config values
  const std::string out_a = tmp.file("flag.csv");
  const std::string out_b = tmp.file("plain.csv");
  CHECK(saa::cli::run({"counterexample", "--config", cfg, "--trials", "200",
                       "--out", out_a}) == 0);
  CHECK(saa::cli::run({"counterexample", "--problem", "p2", "--N", "100",
                       "--trials", "200", "--out", out_b}) == 0);
  CHECK(slurp(out_a) == slurp(out_b));
}

TEST_CASE("effective config round-trips to canonical JSON byte-identically") {
  TempDir tmp;
  auto dump = [&](const std::vector<std::string>& args) {
    std::stringstream captured;
    auto* old = std::cout.rdbuf(captured.rdbuf());
    const int rc = saa::cli::run(args);
    std::cout.rdbuf(old);
    REQUIRE(rc == 0);
    return captured.str();
  };
  const std::string first =
      dump({"concentration", "--alpha", "0.25", "--N", "50", "--dump-config"});
  const std::string cfg = tmp.file("round.json");
  {
    std::ofstream out(cfg);
    out << first;
  }
  const std::string second = dump({"concentration", "--config", cfg, "--dump-config"});
  CHECK(first == second);
  CHECK(json::parse(first).at("alpha") == "0.25");
  CHECK(json::parse(first).at("N") == "50");
}

TEST_CASE("identical invocations give byte-identical files") {
  TempDir tmp;
  const std::string a = tmp.file("a.csv");
  const std::string b = tmp.file("b.csv");
  const std::vector<std::string> base = {"counterexample", "--problem", "p1",
                                         "--N", "10", "--trials", "300",
                                         "--delta", "0", "--seed", "3"};
  auto with_out = [&](const std::string& out, const std::string& threads) {
    auto args = base;
    args.push_back("--threads");
    args.push_back(threads);
    args.push_back("--out");
    args.push_back(out);
    return args;
  };
  CHECK(saa::cli::run(with_out(a, "1")) == 0);
  CHECK(saa::cli::run(with_out(b, "8")) == 0);
  CHECK(slurp(a) == slurp(b));
}
