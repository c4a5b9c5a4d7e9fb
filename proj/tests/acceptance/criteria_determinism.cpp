#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "criteria.hpp"

namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Runner {
  std::string bin;
  fs::path dir;
  bool ok = true;

  Runner() {
    const char* env = std::getenv("SAA_BIN");
    bin = env ? env : "";
    if (bin.empty()) {
      for (const char* probe : {"./saa", "../saa", "./build/saa"}) {
        if (fs::exists(probe)) {
          bin = probe;
          break;
        }
      }
    }
    dir = fs::temp_directory_path() / "saa_determinism";
    fs::remove_all(dir);
    fs::create_directories(dir);
  }

  ~Runner() { fs::remove_all(dir); }

  int run(const std::string& args) {
    const std::string cmd = bin + " " + args + " >/dev/null 2>&1";
    return std::system(cmd.c_str());
  }

  // Runs the invocation with --threads 1 and --threads 8 and compares the
  // produced files byte for byte.
  bool identical(const std::string& args, const std::string& out_flag,
                 const std::vector<std::string>& products) {
    const fs::path d1 = dir / "t1", d8 = dir / "t8";
    fs::create_directories(d1);
    fs::create_directories(d8);
    bool same = true;
    for (auto [d, threads] : {std::pair{d1, "1"}, std::pair{d8, "8"}}) {
      const std::string out = (d / products.front()).string();
      const std::string target = products.size() == 1 ? out : (d.string() + "/");
      run(args + " " + out_flag + " " + target + " --threads " + threads);
    }
    for (const auto& p : products)
      same = same && !slurp(d1 / p).empty() && slurp(d1 / p) == slurp(d8 / p);
    fs::remove_all(d1);
    fs::remove_all(d8);
    return same;
  }
};

}  // namespace

TEST_CASE("criterion 11: CLI outputs are invariant to the thread count") {
  Runner r;
  if (r.bin.empty()) {
    criterion("criterion 11: determinism suite (SAA_BIN not set)", false);
    return;
  }
  bool pass = true;

  pass &= r.identical(
      "counterexample --problem p2 --N 100 --trials 10000 --delta 0 --seed 0",
      "--out", {"ce.csv"});
  pass &= r.identical(
      "converge --problem p2 --grid 501 --Ns 100,1000 --C 1.0 --eps 0.1 --seed 0",
      "--out", {"sweep.csv"});
  pass &= r.identical(
      "concentration --alpha 0.5 --m2 1.0 --hbar 1.0 --trace-sigma0 0.0 --D 2.0 "
      "--d 60 --n 6 --eps 0.2 --N 20",
      "--out", {"conc.csv"});
  pass &= r.identical(
      "solve --problem p2 --N 1000 --C 1.0 --eps 0.1 --starts 4 --seed 0",
      "--out", {"report.json"});

  // rocket + validate: a capped-iteration run keeps this quick; byte identity
  // does not require convergence
  {
    const fs::path d1 = r.dir / "r1", d8 = r.dir / "r8";
    fs::create_directories(d1);
    fs::create_directories(d8);
    r.run("rocket --mode stoch --N 10 --S 10 --seed 0 --max-iters 30 --threads 1 --out " +
          d1.string());
    r.run("rocket --mode stoch --N 10 --S 10 --seed 0 --max-iters 30 --threads 8 --out " +
          d8.string());
    const bool rocket_same =
        !slurp(d1 / "solution.json").empty() &&
        slurp(d1 / "solution.json") == slurp(d8 / "solution.json") &&
        slurp(d1 / "trajectory.csv") == slurp(d8 / "trajectory.csv");
    pass &= rocket_same;
    r.run("validate --solution " + (d1 / "solution.json").string() +
          " --mc 200 --seed 1 --threads 1 --out " + (d1 / "stats.csv").string());
    r.run("rocket validate --solution " + (d8 / "solution.json").string() +
          " --mc 200 --seed 1 --threads 8 --out " + (d8 / "stats.csv").string());
    pass &= !slurp(d1 / "stats.csv").empty() &&
            slurp(d1 / "stats.csv") == slurp(d8 / "stats.csv");
  }

  criterion("criterion 11: --threads 1 and --threads 8 outputs are byte-identical",
            pass);
}
