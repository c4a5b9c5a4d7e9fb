#include "saa/program.hpp"

#include <cmath>
#include <stdexcept>

#include "saa/numeric.hpp"
#include "saa/threading.hpp"

namespace saa {

RelaxationSchedule::RelaxationSchedule(double C_, double eps_) : C(C_), eps(eps_) {
  if (!(C > 0.0)) throw std::invalid_argument("RelaxationSchedule: C must be positive");
  if (!(eps > 0.0 && eps < 0.5))
    throw std::invalid_argument("RelaxationSchedule: eps must lie in (0, 1/2)");
}

double RelaxationSchedule::delta_at(std::int64_t N) const {
  if (N < 1) throw std::invalid_argument("delta_at: N >= 1 required");
  return C * std::pow(static_cast<double>(N), -(0.5 - eps));
}

SampledProgram::SampledProgram(std::shared_ptr<const StochasticProgram> base,
                               std::vector<Scenario> scenarios, double delta,
                               bool relax_inequalities)
    : base_(std::move(base)),
      scenarios_(std::move(scenarios)),
      delta_(delta),
      relax_inequalities_(relax_inequalities) {
  if (!base_) throw std::invalid_argument("SampledProgram: null base program");
  if (scenarios_.empty()) throw std::invalid_argument("SampledProgram: N >= 1 required");
  if (delta_ < 0.0) throw std::invalid_argument("SampledProgram: delta must be nonnegative");
}

SampledProgram SampledProgram::draw(std::shared_ptr<const StochasticProgram> base,
                                    const SeedSpec& seed, std::int64_t N,
                                    double delta, bool relax_inequalities) {
  if (!base) throw std::invalid_argument("SampledProgram::draw: null base program");
  if (N < 1) throw std::invalid_argument("SampledProgram::draw: N >= 1 required");
  std::vector<Scenario> scenarios(static_cast<std::size_t>(N));
  parallel_for(static_cast<std::size_t>(N), [&](std::size_t i) {
    scenarios[i] = base->scenario_sampler(seed, i);
  });
  return SampledProgram(std::move(base), std::move(scenarios), delta,
                        relax_inequalities);
}

double SampledProgram::empirical_cost(const Eigen::VectorXd& u) const {
  const std::size_t N = scenarios_.size();
  std::vector<double> values(N);
  parallel_for(N, [&](std::size_t i) { values[i] = base_->f(u, scenarios_[i]); });
  for (std::size_t i = 0; i < N; ++i) {
    if (!std::isfinite(values[i]))
      throw std::runtime_error("empirical_cost: non-finite evaluation at scenario " +
                               std::to_string(i));
  }
  return pairwise_sum(values) / static_cast<double>(N);
}

namespace {

Eigen::VectorXd empirical_vector(const VectorFn& fn, int rows,
                                 const Eigen::VectorXd& u,
                                 const std::vector<Scenario>& scenarios,
                                 const char* what) {
  const std::size_t N = scenarios.size();
  Eigen::MatrixXd values(rows, static_cast<Eigen::Index>(N));
  parallel_for(N, [&](std::size_t i) {
    values.col(static_cast<Eigen::Index>(i)) = fn(u, scenarios[i]);
  });
  for (std::size_t i = 0; i < N; ++i) {
    if (!values.col(static_cast<Eigen::Index>(i)).allFinite())
      throw std::runtime_error(std::string(what) +
                               ": non-finite evaluation at scenario " +
                               std::to_string(i));
  }
  return pairwise_sum_columns(values) / static_cast<double>(N);
}

}  // namespace

Eigen::VectorXd SampledProgram::empirical_equality(const Eigen::VectorXd& u) const {
  if (!base_->has_h())
    throw std::logic_error("empirical_equality: program has no equality rows");
  return empirical_vector(base_->h, base_->eq_dim, u, scenarios_,
                          "empirical_equality");
}

Eigen::VectorXd SampledProgram::empirical_inequality(const Eigen::VectorXd& u) const {
  if (!base_->has_g())
    throw std::logic_error("empirical_inequality: program has no inequality rows");
  return empirical_vector(base_->g, base_->ineq_dim, u, scenarios_,
                          "empirical_inequality");
}

FghValues SampledProgram::empirical_all(const Eigen::VectorXd& u) const {
  const int nh = base_->eq_dim;
  const int ng = base_->ineq_dim;
  if (!base_->fgh) {
    FghValues out;
    out.f = empirical_cost(u);
    if (ng > 0) out.g = empirical_inequality(u);
    if (nh > 0) out.h = empirical_equality(u);
    return out;
  }
  // stack (f, g, h) per scenario and reduce over the same pairwise tree
  const std::size_t N = scenarios_.size();
  Eigen::MatrixXd values(1 + ng + nh, static_cast<Eigen::Index>(N));
  parallel_for(N, [&](std::size_t i) {
    const FghValues v = base_->fgh(u, scenarios_[i]);
    auto col = values.col(static_cast<Eigen::Index>(i));
    col[0] = v.f;
    if (ng > 0) col.segment(1, ng) = v.g;
    if (nh > 0) col.segment(1 + ng, nh) = v.h;
  });
  for (std::size_t i = 0; i < N; ++i) {
    if (!values.col(static_cast<Eigen::Index>(i)).allFinite())
      throw std::runtime_error("empirical_all: non-finite evaluation at scenario " +
                               std::to_string(i));
  }
  const Eigen::VectorXd mean = pairwise_sum_columns(values) / static_cast<double>(N);
  FghValues out;
  out.f = mean[0];
  if (ng > 0) out.g = mean.segment(1, ng);
  if (nh > 0) out.h = mean.segment(1 + ng, nh);
  return out;
}

Residuals SampledProgram::residuals(const Eigen::VectorXd& u) const {
  Residuals r;
  r.in_domain = domain().contains(u);
  if (base_->has_h())
    r.eq_violation = std::max(0.0, empirical_equality(u).norm() - delta_);
  if (base_->has_g()) {
    const Eigen::VectorXd g = empirical_inequality(u);
    const double relax = inequality_relax();
    r.ineq_violation = std::max(0.0, g.maxCoeff() - relax);
  }
  return r;
}

}  // namespace saa
