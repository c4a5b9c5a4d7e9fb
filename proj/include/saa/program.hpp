#pragma once

#include <Eigen/Core>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "saa/domain.hpp"
#include "saa/sampling.hpp"

namespace saa {

// One scenario draw, flattened. Scalar problems use a single entry; SDE
// problems store a row-major steps x dim block of Brownian increments.
using Scenario = std::vector<double>;

using CostFn = std::function<double(const Eigen::VectorXd&, const Scenario&)>;
using VectorFn =
    std::function<Eigen::VectorXd(const Eigen::VectorXd&, const Scenario&)>;
using MeanFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
using SamplerFn = std::function<Scenario(const SeedSpec&, std::uint64_t)>;

// Joint per-scenario evaluation for programs whose f/g/h share work (one SDE
// rollout feeds all three). Optional; must agree with the split evaluators.
struct FghValues {
  double f = 0.0;
  Eigen::VectorXd g;
  Eigen::VectorXd h;
};
using JointFn = std::function<FghValues(const Eigen::VectorXd&, const Scenario&)>;

// Stochastic program P (or P^g): domain, per-scenario evaluators, and a seeded
// scenario source. Evaluators must be pure.
struct StochasticProgram {
  DomainSpec domain;
  CostFn f;
  VectorFn g;  // inequality rows, empty when ineq_dim == 0
  int ineq_dim = 0;
  VectorFn h;  // equality rows, empty when eq_dim == 0
  int eq_dim = 0;
  SamplerFn scenario_sampler;

  // Closed-form expectations when the family admits them (built-in problems);
  // used by level-set diagnostics and the concentration validator.
  MeanFn h0;
  MeanFn g0;

  JointFn fgh;  // optional fused evaluator

  bool has_h() const { return eq_dim > 0; }
  bool has_g() const { return ineq_dim > 0; }
};

// delta_N = C * N^(-(1/2 - eps)); strictly decreasing to 0.
struct RelaxationSchedule {
  double C = 1.0;
  double eps = 0.1;

  RelaxationSchedule(double C_, double eps_);
  double delta_at(std::int64_t N) const;
};

struct Residuals {
  double eq_violation = 0.0;
  double ineq_violation = 0.0;
  bool in_domain = false;
};

// SP_N / SP_N^g / hat(SP)_N^g: the base program with a frozen ordered scenario
// sample and the constraint relaxation delta. Immutable after construction;
// empirical means reduce over the fixed pairwise tree, so the same inputs give
// bit-identical values for every worker count.
class SampledProgram {
 public:
  SampledProgram(std::shared_ptr<const StochasticProgram> base,
                 std::vector<Scenario> scenarios, double delta,
                 bool relax_inequalities);

  // Draws scenarios 0..N-1 from the program's sampler.
  static SampledProgram draw(std::shared_ptr<const StochasticProgram> base,
                             const SeedSpec& seed, std::int64_t N, double delta,
                             bool relax_inequalities = false);

  const StochasticProgram& base() const { return *base_; }
  const DomainSpec& domain() const { return base_->domain; }
  std::int64_t size() const { return static_cast<std::int64_t>(scenarios_.size()); }
  double delta() const { return delta_; }
  bool relax_inequalities() const { return relax_inequalities_; }
  double inequality_relax() const { return relax_inequalities_ ? delta_ : 0.0; }
  const std::vector<Scenario>& scenarios() const { return scenarios_; }

  double empirical_cost(const Eigen::VectorXd& u) const;
  Eigen::VectorXd empirical_equality(const Eigen::VectorXd& u) const;
  Eigen::VectorXd empirical_inequality(const Eigen::VectorXd& u) const;

  // All empirical means in one scenario pass, through the fused evaluator
  // when the program provides one. Identical values and reduction order as
  // the split calls.
  FghValues empirical_all(const Eigen::VectorXd& u) const;

  // eq_violation = max(0, ||h_N(u)||_2 - delta);
  // ineq_violation = max_j max(0, g_Nj(u) - inequality_relax()).
  Residuals residuals(const Eigen::VectorXd& u) const;

 private:
  std::shared_ptr<const StochasticProgram> base_;
  std::vector<Scenario> scenarios_;
  double delta_;
  bool relax_inequalities_;
};

}  // namespace saa
