#include "saa/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "saa/concentration.hpp"
#include "saa/io.hpp"
#include "saa/numeric.hpp"
#include "saa/problems.hpp"
#include "saa/program.hpp"
#include "saa/rocket.hpp"
#include "saa/solver.hpp"
#include "saa/sweep.hpp"
#include "saa/threading.hpp"

namespace saa::cli {

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitNumerical = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty())
    std::cout << content;
  else
    atomic_write_file(out_path, content);
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    values.push_back(std::stoll(item));
  }
  if (values.empty()) throw UsageError("empty integer list: " + text);
  return values;
}

std::string json_dump(const json& j) { return j.dump(2) + "\n"; }

json vector_to_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

json report_to_json(const SolveReport& report) {
  json starts = json::array();
  for (const auto& s : report.starts) {
    starts.push_back(json{{"status", to_string(s.status)},
                          {"value", s.value},
                          {"u", vector_to_json(s.u)},
                          {"x0", vector_to_json(s.x0)},
                          {"eq_residual", s.eq_residual},
                          {"ineq_residual", s.ineq_residual},
                          {"iters", s.iters}});
  }
  return json{{"status", to_string(report.status)},
              {"u_star", vector_to_json(report.u_star)},
              {"value", report.value},
              {"eq_residual", report.eq_residual},
              {"ineq_residual", report.ineq_residual},
              {"iters", report.iters},
              {"starts", starts}};
}

int status_exit_code(SolveStatus status) {
  switch (status) {
    case SolveStatus::Infeasible: return kExitInfeasible;
    case SolveStatus::NumericalFailure: return kExitNumerical;
    default: return kExitOk;
  }
}

// --config: JSON object of long-option values applied before explicit flags.
// Unknown keys are rejected.
std::vector<std::string> config_tokens(const std::string& path, const CLI::App* cmd) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file: " + path);
  json cfg;
  try {
    in >> cfg;
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("config parse error: ") + e.what());
  }
  if (!cfg.is_object()) throw UsageError("config must be a JSON object");
  std::vector<std::string> tokens;
  for (const auto& [key, value] : cfg.items()) {
    const CLI::Option* opt = nullptr;
    for (const auto* o : cmd->get_options()) {
      if (o->get_name(false, true) == "--" + key || o->check_name("--" + key)) {
        opt = o;
        break;
      }
    }
    if (opt == nullptr || key == "config")
      throw UsageError("unknown config key for subcommand '" + cmd->get_name() +
                       "': " + key);
    std::string text;
    if (value.is_string())
      text = value.get<std::string>();
    else
      text = value.dump();
    tokens.push_back("--" + key + "=" + text);
  }
  return tokens;
}

struct CommonOpts {
  int threads = 0;
  bool dump_config = false;
  std::string config_path;
};

void add_common(CLI::App* cmd, CommonOpts& common) {
  cmd->add_option("--threads", common.threads,
                  "worker cap; 0 = machine parallelism (outputs are invariant)")
      ->capture_default_str();
  cmd->add_option("--config", common.config_path, "JSON config file");
  cmd->add_flag("--dump-config", common.dump_config,
                "print the effective config as canonical JSON and exit");
}

int finish_config(const CommonOpts& common, const json& effective) {
  if (!common.dump_config) return -1;
  std::cout << json_dump(effective);
  return kExitOk;
}

// ---- counterexample ----------------------------------------------------

struct CounterexampleOpts {
  std::string problem = "p2";
  std::int64_t N = 100;
  int trials = 1000;
  double delta = 0.0;
  std::uint64_t seed = 0, stream = 0;
  std::string out;
};

int run_counterexample(const CounterexampleOpts& o) {
  if (o.problem != "p1" && o.problem != "p2")
    throw UsageError("counterexample: --problem must be p1 or p2");
  std::vector<char> feasible(static_cast<std::size_t>(o.trials));
  parallel_for(feasible.size(), [&](std::size_t t) {
    const SeedSpec seed{o.seed, o.stream + t};
    feasible[t] = solve_counterexample(o.problem, o.N, o.delta, seed).feasible;
  });
  std::int64_t count = 0;
  for (char f : feasible) count += f;
  CsvBuilder csv({"problem", "N", "trials", "delta", "feasible_count",
                  "feasible_fraction"});
  csv.cell(o.problem)
      .cell(o.N)
      .cell(static_cast<std::int64_t>(o.trials))
      .cell(o.delta)
      .cell(count)
      .cell(static_cast<double>(count) / o.trials)
      .end_row();
  emit(csv.str(), o.out);
  return kExitOk;
}

// ---- converge ----------------------------------------------------------

struct ConvergeOpts {
  std::string problem = "p2";
  int grid = 2001;
  std::string Ns = "100,1000,10000";
  double C = 1.0, eps = 0.1;
  std::uint64_t seed = 0, stream = 0;
  int starts = 4;
  std::string out;
};

int run_converge(const ConvergeOpts& o) {
  if (!is_known_problem(o.problem)) throw UsageError("unknown problem: " + o.problem);
  auto program = make_problem(o.problem);
  if (!program->has_h())
    throw UsageError("converge: problem '" + o.problem + "' has no equality rows");
  const RelaxationSchedule schedule(o.C, o.eps);
  auto domain = std::make_shared<DomainSpec>(program->domain);
  const GridSet grid =
      GridSet::full(domain, std::vector<int>(domain->dim(), o.grid));
  SweepOptions options;
  options.starts = o.starts;
  const auto records =
      convergence_sweep(program, schedule, grid, parse_int_list(o.Ns),
                        SeedSpec{o.seed, o.stream}, reference_solutions(o.problem),
                        options);
  CsvBuilder csv({"N", "delta", "feasible", "opt_value", "d_lower", "d_upper",
                  "d_hausdorff", "sol_dist"});
  for (const auto& r : records) {
    csv.cell(r.N)
        .cell(r.delta)
        .cell(static_cast<std::int64_t>(r.feasible ? 1 : 0))
        .cell(r.opt_value)
        .cell(r.d_lower)
        .cell(r.d_upper)
        .cell(r.d_hausdorff)
        .cell(r.sol_dist)
        .end_row();
  }
  emit(csv.str(), o.out);
  return kExitOk;
}

// ---- concentration -----------------------------------------------------

struct ConcentrationOpts {
  double alpha = 0.5, m2 = 1.0, hbar = 1.0, trace_sigma0 = 0.0, D = 2.0;
  int d = 60, n = 6;
  double eps = 0.2;
  std::int64_t N = 20;
  double target_eps = 0.1, target_beta = 0.01;
  std::string out;
};

int run_concentration(const ConcentrationOpts& o) {
  HolderData h;
  h.alpha = o.alpha;
  h.m2 = o.m2;
  h.h_bar = o.hbar;
  h.trace_sigma0 = o.trace_sigma0;
  h.diameter = o.D;
  h.domain_dim = o.d;
  h.output_dim = o.n;
  const auto profile = ConcentrationProfile::make(h, o.eps);
  const auto [eps_N, beta_N] = eps_beta_sequences(profile, o.N);
  CsvBuilder csv({"quantity", "value"});
  csv.cell("c_tilde").cell(profile.c_tilde).end_row();
  csv.cell("eps_N").cell(eps_N).end_row();
  csv.cell("beta_N").cell(beta_N).end_row();
  csv.cell("required_sample_size")
      .cell(required_sample_size(profile, o.target_eps, o.target_beta))
      .end_row();
  csv.cell("covering_number_bound")
      .cell(covering_number_bound(o.D, o.d, o.target_eps))
      .end_row();
  emit(csv.str(), o.out);
  return kExitOk;
}

// ---- solve ---------------------------------------------------------------

struct SolveOpts {
  std::string problem = "p2";
  std::int64_t N = 100;
  double C = 1.0, eps = 0.1;
  int starts = 4;
  std::uint64_t seed = 0, stream = 0;
  bool relax_ineq = true;
  std::string out;
};

int run_solve(const SolveOpts& o) {
  if (!is_known_problem(o.problem)) throw UsageError("unknown problem: " + o.problem);
  auto program = make_problem(o.problem);
  const RelaxationSchedule schedule(o.C, o.eps);
  const double delta = schedule.delta_at(o.N);
  const SampledProgram sp = SampledProgram::draw(
      program, SeedSpec{o.seed, o.stream}, o.N, delta, o.relax_ineq);
  ScpConfig cfg;
  cfg.max_starts = std::max(cfg.max_starts, o.starts);
  const SolveReport report =
      solve_multistart(sp, cfg, o.starts, SeedSpec{o.seed, o.stream + 1});
  json doc = report_to_json(report);
  doc["problem"] = o.problem;
  doc["N"] = o.N;
  doc["delta"] = delta;
  emit(json_dump(doc), o.out);
  return status_exit_code(report.status);
}

// ---- rocket --------------------------------------------------------------

struct RocketOpts {
  std::string mode = "stoch";
  std::int64_t N = 20;
  int S = 20;
  std::uint64_t seed = 0, stream = 0;
  int max_iters = 150;
  int starts = 4;
  std::string out;
};

int run_rocket(const RocketOpts& o) {
  if (o.mode != "det" && o.mode != "stoch")
    throw UsageError("rocket: --mode must be det or stoch");
  if (o.out.empty()) throw UsageError("rocket: --out directory is required");
  RocketParams params;
  params.intervals = o.S;
  params.sample_size = static_cast<int>(o.N);
  const bool stochastic = o.mode == "stoch";
  const SampledProgram sp =
      sample_rocket_program(params, o.N, SeedSpec{o.seed, o.stream}, stochastic);
  ScpConfig cfg;
  cfg.max_iters = o.max_iters;
  auto candidates = rocket_start_controls(params);
  if (o.starts < 1 || o.starts > static_cast<int>(candidates.size()))
    throw UsageError("rocket: --starts must lie in [1, " +
                     std::to_string(candidates.size()) + "]");
  candidates.resize(static_cast<std::size_t>(o.starts));
  std::vector<Eigen::VectorXd> start_points;
  for (const auto& c : candidates) start_points.push_back(c.flatten());
  const SolveReport report = solve_multistart(sp, cfg, start_points);
  const ControlTrajectory u_star = ControlTrajectory::from_flat(
      report.u_star, params.intervals, 3, params.horizon);

  std::filesystem::create_directories(o.out);
  json control = json::array();
  for (int s = 0; s < u_star.intervals(); ++s)
    control.push_back(json::array(
        {u_star.values(s, 0), u_star.values(s, 1), u_star.values(s, 2)}));
  json doc{{"mode", o.mode},       {"N", o.N},
           {"S", o.S},             {"delta", params.delta},
           {"seed", o.seed},       {"stream", o.stream},
           {"substeps", params.substeps}, {"control", control},
           {"report", report_to_json(report)}};
  atomic_write_file((std::filesystem::path(o.out) / "solution.json").string(),
                    json_dump(doc));

  const Eigen::MatrixXd traj = rocket_nominal_trajectory(params, u_star);
  const int steps = params.intervals * params.substeps;
  const double dt = params.horizon / steps;
  CsvBuilder csv({"t", "rx", "ry", "rz", "vx", "vy", "vz", "m", "ux", "uy", "uz"});
  for (int k = 0; k <= steps; ++k) {
    const Eigen::VectorXd uk = u_star.at_step(std::min(k, steps - 1), params.substeps);
    csv.cell(k * dt);
    for (int j = 0; j < 7; ++j) csv.cell(traj(k, j));
    for (int j = 0; j < 3; ++j) csv.cell(uk[j]);
    csv.end_row();
  }
  atomic_write_file((std::filesystem::path(o.out) / "trajectory.csv").string(),
                    csv.str());
  return status_exit_code(report.status);
}

// ---- validate ------------------------------------------------------------

struct ValidateOpts {
  std::string solution;
  int mc = 1000;
  std::uint64_t seed = 1, stream = 0;
  std::string out;
};

int run_validate(const ValidateOpts& o) {
  if (o.solution.empty()) throw UsageError("validate: --solution is required");
  std::ifstream in(o.solution);
  if (!in) throw UsageError("cannot open solution file: " + o.solution);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("solution parse error: ") + e.what());
  }
  RocketParams params;
  params.intervals = doc.at("S").get<int>();
  params.substeps = doc.value("substeps", 1);
  ControlTrajectory u;
  u.horizon = params.horizon;
  const auto& control = doc.at("control");
  u.values.resize(static_cast<Eigen::Index>(control.size()), 3);
  for (std::size_t s = 0; s < control.size(); ++s)
    for (int j = 0; j < 3; ++j) u.values(static_cast<Eigen::Index>(s), j) =
        control[s][static_cast<std::size_t>(j)].get<double>();

  // Validation always runs under the stochastic dynamics.
  const SdeModel model = make_rocket_model(params, /*stochastic=*/true);
  const OcpFunctionals fns = rocket_functionals(params);
  const McReport mc = mc_validate(model, u, fns, o.mc, SeedSpec{o.seed, o.stream},
                                  params.substeps);

  const char* names[6] = {"rx", "ry", "rz", "vx", "vy", "vz"};
  CsvBuilder csv({"quantity", "value"});
  for (int j = 0; j < 6; ++j)
    csv.cell(std::string("mean_h_") + names[j]).cell(mc.mean_h[j]).end_row();
  csv.cell("mean_h_norm").cell(mc.mean_h.norm()).end_row();
  for (int j = 0; j < 6; ++j)
    csv.cell(std::string("std_") + names[j] + "_final").cell(mc.std_h[j]).end_row();
  csv.cell("trace_cov").cell(mc.trace_cov).end_row();
  csv.cell("mean_sq_terminal").cell(mc.mean_sq_terminal).end_row();
  csv.cell("mass_final_mean").cell(mc.final_state_mean[6]).end_row();
  csv.cell("blowups").cell(static_cast<std::int64_t>(mc.blowups)).end_row();
  csv.cell("mc_samples").cell(static_cast<std::int64_t>(mc.samples)).end_row();
  emit(csv.str(), o.out);
  return kExitOk;
}

json effective_config(const CLI::App* cmd) {
  json cfg = json::object();
  for (const auto* opt : cmd->get_options()) {
    const std::string name = opt->get_name(false, true);
    if (name.rfind("--", 0) != 0) continue;
    const std::string key = name.substr(2);
    if (key == "help" || key == "config" || key == "dump-config") continue;
    const std::string value =
        opt->count() > 0 ? opt->results().back() : opt->get_default_str();
    if (value.empty()) continue;  // unset paths have no canonical spelling
    cfg[key] = value;
  }
  return cfg;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"relaxed sample-average-approximation toolkit"};
  app.require_subcommand(0, 1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  CounterexampleOpts ce;
  CommonOpts ce_common;
  auto* ce_cmd = app.add_subcommand(
      "counterexample", "closed-form feasibility trials for the ill-posed equality examples");
  ce_cmd->add_option("--problem", ce.problem, "p1 or p2")->capture_default_str();
  ce_cmd->add_option("--N", ce.N, "sample size")->capture_default_str();
  ce_cmd->add_option("--trials", ce.trials, "number of independent samples")
      ->capture_default_str();
  ce_cmd->add_option("--delta", ce.delta, "relaxation")->capture_default_str();
  ce_cmd->add_option("--seed", ce.seed, "master seed")->capture_default_str();
  ce_cmd->add_option("--stream", ce.stream, "base stream id")->capture_default_str();
  ce_cmd->add_option("--out", ce.out, "output CSV (stdout when omitted)")
      ->capture_default_str();
  add_common(ce_cmd, ce_common);

  ConvergeOpts cv;
  CommonOpts cv_common;
  auto* cv_cmd =
      app.add_subcommand("converge", "level-set and solution-set convergence sweep");
  cv_cmd->add_option("--problem", cv.problem, "problem id")->capture_default_str();
  cv_cmd->add_option("--grid", cv.grid, "points per axis")->capture_default_str();
  cv_cmd->add_option("--Ns", cv.Ns, "comma-separated sample sizes")
      ->capture_default_str();
  cv_cmd->add_option("--C", cv.C, "relaxation constant")->capture_default_str();
  cv_cmd->add_option("--eps", cv.eps, "relaxation exponent offset")
      ->capture_default_str();
  cv_cmd->add_option("--seed", cv.seed, "master seed")->capture_default_str();
  cv_cmd->add_option("--stream", cv.stream, "base stream id")->capture_default_str();
  cv_cmd->add_option("--starts", cv.starts, "multi-start count")->capture_default_str();
  cv_cmd->add_option("--out", cv.out, "output CSV")->capture_default_str();
  add_common(cv_cmd, cv_common);

  ConcentrationOpts cc;
  CommonOpts cc_common;
  auto* cc_cmd =
      app.add_subcommand("concentration", "closed-form concentration calculators");
  cc_cmd->add_option("--alpha", cc.alpha, "Hoelder exponent")->capture_default_str();
  cc_cmd->add_option("--m2", cc.m2, "E[M^2]")->capture_default_str();
  cc_cmd->add_option("--hbar", cc.hbar, "uniform bound")->capture_default_str();
  cc_cmd->add_option("--trace-sigma0", cc.trace_sigma0, "Trace(Sigma_0)")
      ->capture_default_str();
  cc_cmd->add_option("--D", cc.D, "domain diameter")->capture_default_str();
  cc_cmd->add_option("--d", cc.d, "domain dimension")->capture_default_str();
  cc_cmd->add_option("--n", cc.n, "output dimension")->capture_default_str();
  cc_cmd->add_option("--eps", cc.eps, "sequence exponent")->capture_default_str();
  cc_cmd->add_option("--N", cc.N, "sample size for eps_N/beta_N")
      ->capture_default_str();
  cc_cmd->add_option("--target-eps", cc.target_eps, "accuracy target")
      ->capture_default_str();
  cc_cmd->add_option("--target-beta", cc.target_beta, "failure probability target")
      ->capture_default_str();
  cc_cmd->add_option("--out", cc.out, "output CSV")->capture_default_str();
  add_common(cc_cmd, cc_common);

  SolveOpts sv;
  CommonOpts sv_common;
  auto* sv_cmd = app.add_subcommand("solve", "solve a sampled problem by SCP");
  sv_cmd->add_option("--problem", sv.problem, "problem id")->capture_default_str();
  sv_cmd->add_option("--N", sv.N, "sample size")->capture_default_str();
  sv_cmd->add_option("--C", sv.C, "relaxation constant")->capture_default_str();
  sv_cmd->add_option("--eps", sv.eps, "relaxation exponent offset")
      ->capture_default_str();
  sv_cmd->add_option("--starts", sv.starts, "multi-start count")->capture_default_str();
  sv_cmd->add_option("--seed", sv.seed, "master seed")->capture_default_str();
  sv_cmd->add_option("--stream", sv.stream, "base stream id")->capture_default_str();
  sv_cmd->add_option("--relax-ineq", sv.relax_ineq,
                     "relax inequality rows by delta_N")
      ->capture_default_str();
  sv_cmd->add_option("--out", sv.out, "output JSON")->capture_default_str();
  add_common(sv_cmd, sv_common);

  RocketOpts rk;
  CommonOpts rk_common;
  auto* rk_cmd = app.add_subcommand("rocket", "Mars powered-descent benchmark");
  rk_cmd->add_option("--mode", rk.mode, "det or stoch")->capture_default_str();
  rk_cmd->add_option("--N", rk.N, "scenario count")->capture_default_str();
  rk_cmd->add_option("--S", rk.S, "control intervals")->capture_default_str();
  rk_cmd->add_option("--seed", rk.seed, "master seed")->capture_default_str();
  rk_cmd->add_option("--stream", rk.stream, "base stream id")->capture_default_str();
  rk_cmd->add_option("--max-iters", rk.max_iters, "SCP iteration cap per round")
      ->capture_default_str();
  rk_cmd->add_option("--starts", rk.starts, "number of structured start profiles")
      ->capture_default_str();
  rk_cmd->add_option("--out", rk.out, "output directory")->capture_default_str();
  add_common(rk_cmd, rk_common);

  ValidateOpts va;
  CommonOpts va_common;
  auto* va_cmd = app.add_subcommand(
      "validate", "out-of-sample Monte-Carlo validation of a rocket solution");
  auto add_validate_opts = [&](CLI::App* cmd) {
    cmd->add_option("--solution", va.solution, "solution.json path")
        ->capture_default_str();
    cmd->add_option("--mc", va.mc, "Monte-Carlo sample count")->capture_default_str();
    cmd->add_option("--seed", va.seed, "master seed")->capture_default_str();
    cmd->add_option("--stream", va.stream, "base stream id")->capture_default_str();
    cmd->add_option("--out", va.out, "output CSV")->capture_default_str();
  };
  add_validate_opts(va_cmd);
  add_common(va_cmd, va_common);
  // `saa rocket validate ...` dispatches to the same handler.
  auto* rkva_cmd = rk_cmd->add_subcommand("validate", "alias of `saa validate`");
  CommonOpts rkva_common;
  add_validate_opts(rkva_cmd);
  add_common(rkva_cmd, rkva_common);

  // Assemble argv; --config tokens are injected right after the subcommand so
  // explicit flags override them (TakeLast policy).
  std::vector<std::string> argv = args;
  {
    std::size_t cmd_at = argv.size();
    const CLI::App* cmd = nullptr;
    for (std::size_t i = 0; i < argv.size(); ++i) {
      for (const auto* sub : app.get_subcommands({})) {
        if (argv[i] == sub->get_name()) {
          cmd = sub;
          cmd_at = i;
          break;
        }
      }
      if (cmd) break;
    }
    if (cmd && cmd->get_name() == "rocket" && cmd_at + 1 < argv.size() &&
        argv[cmd_at + 1] == "validate") {
      cmd = rkva_cmd;
      ++cmd_at;
    }
    if (cmd) {
      std::string config_path;
      for (std::size_t i = cmd_at + 1; i < argv.size(); ++i) {
        if (argv[i] == "--config" && i + 1 < argv.size()) config_path = argv[i + 1];
        else if (argv[i].rfind("--config=", 0) == 0)
          config_path = argv[i].substr(9);
      }
      if (!config_path.empty()) {
        try {
          const auto tokens = config_tokens(config_path, cmd);
          argv.insert(argv.begin() + static_cast<std::ptrdiff_t>(cmd_at) + 1,
                      tokens.begin(), tokens.end());
        } catch (const UsageError& e) {
          std::cerr << "error: " << e.what() << "\n";
          return kExitUsage;
        }
      }
    }
  }

  try {
    std::vector<const char*> cargs;
    cargs.push_back("saa");
    for (const auto& a : argv) cargs.push_back(a.c_str());
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (ce_cmd->parsed()) {
      set_max_threads(ce_common.threads);
      if (int rc = finish_config(ce_common, effective_config(ce_cmd)); rc >= 0)
        return rc;
      return run_counterexample(ce);
    }
    if (cv_cmd->parsed()) {
      set_max_threads(cv_common.threads);
      if (int rc = finish_config(cv_common, effective_config(cv_cmd)); rc >= 0)
        return rc;
      return run_converge(cv);
    }
    if (cc_cmd->parsed()) {
      set_max_threads(cc_common.threads);
      if (int rc = finish_config(cc_common, effective_config(cc_cmd)); rc >= 0)
        return rc;
      return run_concentration(cc);
    }
    if (sv_cmd->parsed()) {
      set_max_threads(sv_common.threads);
      if (int rc = finish_config(sv_common, effective_config(sv_cmd)); rc >= 0)
        return rc;
      return run_solve(sv);
    }
    if (rk_cmd->parsed()) {
      if (rkva_cmd->parsed()) {
        set_max_threads(rkva_common.threads);
        if (int rc = finish_config(rkva_common, effective_config(rkva_cmd)); rc >= 0)
          return rc;
        return run_validate(va);
      }
      set_max_threads(rk_common.threads);
      if (int rc = finish_config(rk_common, effective_config(rk_cmd)); rc >= 0)
        return rc;
      return run_rocket(rk);
    }
    if (va_cmd->parsed()) {
      set_max_threads(va_common.threads);
      if (int rc = finish_config(va_common, effective_config(va_cmd)); rc >= 0)
        return rc;
      return run_validate(va);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  std::cout << app.help();
  return kExitUsage;
}

}  // namespace saa::cli
