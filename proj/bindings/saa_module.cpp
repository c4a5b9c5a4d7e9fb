#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "saa/concentration.hpp"
#include "saa/problems.hpp"
#include "saa/program.hpp"
#include "saa/rocket.hpp"
#include "saa/sampling.hpp"
#include "saa/sde.hpp"
#include "saa/set_distance.hpp"
#include "saa/solver.hpp"
#include "saa/threading.hpp"

namespace py = pybind11;
using namespace saa;

namespace {

SampledProgram make_sampled(const std::string& id, std::int64_t N,
                            std::uint64_t seed, std::uint64_t stream,
                            double delta, bool relax_ineq) {
  return SampledProgram::draw(make_problem(id), SeedSpec{seed, stream}, N, delta,
                              relax_ineq);
}

py::dict report_to_dict(const SolveReport& r) {
  py::dict d;
  d["status"] = to_string(r.status);
  d["u_star"] = r.u_star;
  d["value"] = r.value;
  d["eq_residual"] = r.eq_residual;
  d["ineq_residual"] = r.ineq_residual;
  d["iters"] = r.iters;
  return d;
}

PointCloud cloud_from_rows(const Eigen::MatrixXd& rows) {
  PointCloud cloud;
  cloud.reserve(rows.rows());
  for (Eigen::Index i = 0; i < rows.rows(); ++i)
    cloud.push_back(rows.row(i).transpose());
  return cloud;
}

}  // namespace

PYBIND11_MODULE(_saa, m) {
  m.doc() = "relaxed sample-average-approximation toolkit";

  m.def("set_max_threads", &set_max_threads, py::arg("n"));

  m.def(
      "delta_at",
      [](double C, double eps, std::int64_t N) {
        return RelaxationSchedule(C, eps).delta_at(N);
      },
      py::arg("C"), py::arg("eps"), py::arg("N"));

  m.def(
      "draw_uniform",
      [](std::uint64_t seed, std::uint64_t stream, std::uint64_t index, double lo,
         double hi) { return draw_uniform(SeedSpec{seed, stream}, index, lo, hi); },
      py::arg("seed"), py::arg("stream"), py::arg("index"), py::arg("lo"),
      py::arg("hi"));

  m.def(
      "draw_brownian",
      [](std::uint64_t seed, std::uint64_t stream, std::uint64_t index, int dim,
         int steps, double dt) {
        const BrownianPath path =
            draw_brownian(SeedSpec{seed, stream}, index, dim, steps, dt);
        Eigen::MatrixXd inc(steps, dim);
        for (int k = 0; k < steps; ++k)
          inc.row(k) = path.increment_vec(k).transpose();
        return inc;
      },
      py::arg("seed"), py::arg("stream"), py::arg("index"), py::arg("dim"),
      py::arg("steps"), py::arg("dt"));

  m.def(
      "empirical_cost",
      [](const std::string& id, const Eigen::VectorXd& u, std::int64_t N,
         std::uint64_t seed, std::uint64_t stream) {
        return make_sampled(id, N, seed, stream, 0.0, false).empirical_cost(u);
      },
      py::arg("problem"), py::arg("u"), py::arg("N"), py::arg("seed") = 0,
      py::arg("stream") = 0);

  m.def(
      "empirical_equality",
      [](const std::string& id, const Eigen::VectorXd& u, std::int64_t N,
         std::uint64_t seed, std::uint64_t stream) {
        return make_sampled(id, N, seed, stream, 0.0, false).empirical_equality(u);
      },
      py::arg("problem"), py::arg("u"), py::arg("N"), py::arg("seed") = 0,
      py::arg("stream") = 0);

  m.def(
      "dist_lower",
      [](const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) -> py::object {
        const auto d = dist_lower(cloud_from_rows(A), cloud_from_rows(B));
        if (!d) return py::float_(std::numeric_limits<double>::infinity());
        return py::float_(*d);
      },
      py::arg("A"), py::arg("B"), "rows are points; empty input maps to +inf");

  m.def(
      "dist_hausdorff",
      [](const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) -> py::object {
        const auto d = dist_hausdorff(cloud_from_rows(A), cloud_from_rows(B));
        if (!d) return py::float_(std::numeric_limits<double>::infinity());
        return py::float_(*d);
      },
      py::arg("A"), py::arg("B"));

  m.def(
      "dudley_constant",
      [](double alpha, double m2, double h_bar, double trace_sigma0, int d, int n,
         double diameter) {
        return dudley_constant({alpha, m2, h_bar, trace_sigma0, d, n, diameter});
      },
      py::arg("alpha"), py::arg("m2"), py::arg("h_bar"), py::arg("trace_sigma0"),
      py::arg("d"), py::arg("n"), py::arg("diameter"));

  m.def(
      "eps_beta",
      [](double alpha, double m2, double h_bar, double trace_sigma0, int d, int n,
         double diameter, double eps, std::int64_t N) {
        const auto profile = ConcentrationProfile::make(
            {alpha, m2, h_bar, trace_sigma0, d, n, diameter}, eps);
        return eps_beta_sequences(profile, N);
      },
      py::arg("alpha"), py::arg("m2"), py::arg("h_bar"), py::arg("trace_sigma0"),
      py::arg("d"), py::arg("n"), py::arg("diameter"), py::arg("eps"), py::arg("N"));

  m.def(
      "required_sample_size",
      [](double c_tilde, double h_bar, double eps, double beta) {
        ConcentrationProfile profile;
        profile.c_tilde = c_tilde;
        profile.holder.h_bar = h_bar;
        return required_sample_size(profile, eps, beta);
      },
      py::arg("c_tilde"), py::arg("h_bar"), py::arg("eps"), py::arg("beta"));

  m.def("covering_number_bound", &covering_number_bound, py::arg("diameter"),
        py::arg("dim"), py::arg("eps"));

  m.def(
      "solve_counterexample",
      [](const std::string& which, std::int64_t N, double delta, std::uint64_t seed,
         std::uint64_t stream) {
        const auto r = solve_counterexample(which, N, delta, SeedSpec{seed, stream});
        py::dict d;
        d["feasible"] = r.feasible;
        d["sample_mean"] = r.sample_mean;
        d["u_star"] = r.u_star ? py::object(py::float_(*r.u_star)) : py::none();
        return d;
      },
      py::arg("which"), py::arg("N"), py::arg("delta"), py::arg("seed") = 0,
      py::arg("stream") = 0);

  m.def(
      "solve",
      [](const std::string& id, std::int64_t N, double C, double eps, int starts,
         std::uint64_t seed, std::uint64_t stream) {
        const double delta = RelaxationSchedule(C, eps).delta_at(N);
        const SampledProgram sp = make_sampled(id, N, seed, stream, delta, true);
        ScpConfig cfg;
        const SolveReport report =
            solve_multistart(sp, cfg, starts, SeedSpec{seed, stream + 1});
        auto d = report_to_dict(report);
        d["delta"] = delta;
        return d;
      },
      py::arg("problem"), py::arg("N"), py::arg("C") = 1.0, py::arg("eps") = 0.1,
      py::arg("starts") = 4, py::arg("seed") = 0, py::arg("stream") = 0);

  m.def(
      "rocket_nominal_trajectory",
      [](const Eigen::MatrixXd& control, int substeps) {
        RocketParams params;
        params.intervals = static_cast<int>(control.rows());
        params.substeps = substeps;
        ControlTrajectory u;
        u.horizon = params.horizon;
        u.values = control;
        return rocket_nominal_trajectory(params, u);
      },
      py::arg("control"), py::arg("substeps") = 1,
      "zero-noise rollout of an S x 3 thrust matrix; rows are (r, v, m) states");

  m.def(
      "rocket_validate",
      [](const Eigen::MatrixXd& control, int M, std::uint64_t seed,
         std::uint64_t stream) {
        RocketParams params;
        params.intervals = static_cast<int>(control.rows());
        ControlTrajectory u;
        u.horizon = params.horizon;
        u.values = control;
        const SdeModel model = make_rocket_model(params, true);
        const McReport mc = mc_validate(model, u, rocket_functionals(params), M,
                                        SeedSpec{seed, stream}, params.substeps);
        py::dict d;
        d["mean_h"] = mc.mean_h;
        d["std_h"] = mc.std_h;
        d["trace_cov"] = mc.trace_cov;
        d["mass_final_mean"] = mc.final_state_mean[6];
        d["blowups"] = mc.blowups;
        return d;
      },
      py::arg("control"), py::arg("M") = 1000, py::arg("seed") = 1,
      py::arg("stream") = 0);

  m.def(
      "rocket_initial_control",
      []() {
        RocketParams params;
        return rocket_initial_control(params).values;
      },
      "feasible constant start used by the rocket solver");
}
