#include "saa/problems.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace saa {

namespace {

SamplerFn uniform_scalar_sampler(double lo, double hi) {
  return [lo, hi](const SeedSpec& seed, std::uint64_t index) {
    return Scenario{draw_uniform(seed, index, lo, hi)};
  };
}

DomainSpec interval_domain(double lo, double hi) {
  Eigen::VectorXd l(1), u(1);
  l << lo;
  u << hi;
  return DomainSpec(l, u);
}

std::shared_ptr<const StochasticProgram> make_p1() {
  auto p = std::make_shared<StochasticProgram>(StochasticProgram{
      interval_domain(-1.0, 1.0),
      [](const Eigen::VectorXd& u, const Scenario&) { return std::abs(u[0]); },
      {}, 0,
      [](const Eigen::VectorXd& u, const Scenario& w) {
        Eigen::VectorXd h(2);
        h << u[0] + w[0], u[0] - w[0];
        return h;
      },
      2, uniform_scalar_sampler(-1.0, 1.0),
      [](const Eigen::VectorXd& u) {
        Eigen::VectorXd h(2);
        h << u[0], u[0];
        return h;
      },
      {}});
  return p;
}

std::shared_ptr<const StochasticProgram> make_p2() {
  auto p = std::make_shared<StochasticProgram>(StochasticProgram{
      interval_domain(-1.0, 1.0),
      [](const Eigen::VectorXd& u, const Scenario&) { return std::abs(u[0]); },
      {}, 0,
      [](const Eigen::VectorXd& u, const Scenario& w) {
        Eigen::VectorXd h(1);
        h << u[0] * u[0] + w[0];
        return h;
      },
      1, uniform_scalar_sampler(-1.0, 1.0),
      [](const Eigen::VectorXd& u) {
        Eigen::VectorXd h(1);
        h << u[0] * u[0];
        return h;
      },
      {}});
  return p;
}

std::shared_ptr<const StochasticProgram> make_twomode() {
  auto p = std::make_shared<StochasticProgram>(StochasticProgram{
      interval_domain(-1.0, 1.0),
      [](const Eigen::VectorXd& u, const Scenario& w) { return w[0] * u[0]; },
      {}, 0,
      [](const Eigen::VectorXd& u, const Scenario& w) {
        Eigen::VectorXd h(1);
        h << u[0] * u[0] - 0.25 + w[0];
        return h;
      },
      1, uniform_scalar_sampler(-1.0, 1.0),
      [](const Eigen::VectorXd& u) {
        Eigen::VectorXd h(1);
        h << u[0] * u[0] - 0.25;
        return h;
      },
      {}});
  return p;
}

std::shared_ptr<const StochasticProgram> make_r51() {
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(2, -1.0);
  Eigen::VectorXd hi = Eigen::VectorXd::Constant(2, 1.0);
  auto g = [](const Eigen::VectorXd& u, const Scenario&) {
    const double ramp = u[0] * std::max(u[0], 0.0);
    Eigen::VectorXd v(2);
    v << u[1] - ramp, -u[1] - ramp;
    return v;
  };
  auto p = std::make_shared<StochasticProgram>(StochasticProgram{
      DomainSpec(lo, hi),
      [](const Eigen::VectorXd& u, const Scenario&) { return u[0]; },
      g, 2,
      {}, 0, uniform_scalar_sampler(-1.0, 1.0), {},
      [g](const Eigen::VectorXd& u) { return g(u, Scenario{0.0}); }});
  return p;
}

std::shared_ptr<const StochasticProgram> make_sin3() {
  auto p = std::make_shared<StochasticProgram>(StochasticProgram{
      interval_domain(-1.0, 1.0),
      [](const Eigen::VectorXd&, const Scenario&) { return 0.0; },
      {}, 0,
      [](const Eigen::VectorXd& u, const Scenario& w) {
        Eigen::VectorXd h(1);
        h << std::sin(3.0 * u[0]) * w[0];
        return h;
      },
      1, uniform_scalar_sampler(-1.0, 1.0),
      [](const Eigen::VectorXd&) { return Eigen::VectorXd::Zero(1); },
      {}});
  return p;
}

}  // namespace

std::shared_ptr<const StochasticProgram> make_problem(const std::string& id) {
  if (id == "p1") return make_p1();
  if (id == "p2") return make_p2();
  if (id == "twomode") return make_twomode();
  if (id == "r51") return make_r51();
  if (id == "sin3") return make_sin3();
  throw std::invalid_argument("unknown problem id: " + id);
}

bool is_known_problem(const std::string& id) {
  const auto ids = known_problems();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

std::vector<std::string> known_problems() {
  return {"p1", "p2", "twomode", "r51", "sin3"};
}

std::vector<Eigen::VectorXd> reference_solutions(const std::string& id) {
  auto pt = [](std::initializer_list<double> xs) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v[i++] = x;
    return v;
  };
  if (id == "p1" || id == "p2") return {pt({0.0})};
  if (id == "twomode") return {pt({-0.5}), pt({0.5})};
  if (id == "r51") return {pt({-1.0, 0.0})};
  throw std::invalid_argument("no reference solution set for problem id: " + id);
}

}  // namespace saa
