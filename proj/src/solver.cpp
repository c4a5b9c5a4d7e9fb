#include "saa/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "saa/numeric.hpp"

namespace saa {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::Infeasible: return "Infeasible";
    case SolveStatus::MaxIters: return "MaxIters";
    case SolveStatus::NumericalFailure: return "NumericalFailure";
  }
  return "Unknown";
}

namespace {

struct Model {
  double f = 0.0;
  Eigen::VectorXd grad_f;
  Eigen::VectorXd h;   // empty when absent
  Eigen::MatrixXd Jh;
  Eigen::VectorXd g;
  Eigen::MatrixXd Jg;
};

Eigen::VectorXd fd_steps(const DomainSpec& domain, double fd_step_rel) {
  return fd_step_rel * (domain.upper() - domain.lower());
}

Model evaluate_model(const SampledProgram& sp, const Eigen::VectorXd& u,
                     double fd_step_rel) {
  const int d = sp.domain().dim();
  const Eigen::VectorXd steps = fd_steps(sp.domain(), fd_step_rel);
  Model m;
  const FghValues center = sp.empirical_all(u);
  m.f = center.f;
  m.grad_f.resize(d);
  const bool has_h = sp.base().has_h();
  const bool has_g = sp.base().has_g();
  if (has_h) {
    m.h = center.h;
    m.Jh.resize(m.h.size(), d);
  }
  if (has_g) {
    m.g = center.g;
    m.Jg.resize(m.g.size(), d);
  }
  Eigen::VectorXd probe = u;
  for (int i = 0; i < d; ++i) {
    const double fd = steps[i];
    probe[i] = u[i] + fd;
    const FghValues plus = sp.empirical_all(probe);
    probe[i] = u[i] - fd;
    const FghValues minus = sp.empirical_all(probe);
    probe[i] = u[i];
    m.grad_f[i] = (plus.f - minus.f) / (2.0 * fd);
    if (has_h) m.Jh.col(i) = (plus.h - minus.h) / (2.0 * fd);
    if (has_g) m.Jg.col(i) = (plus.g - minus.g) / (2.0 * fd);
  }
  return m;
}

double merit_value(double f, const Eigen::VectorXd& h, const Eigen::VectorXd& g,
                   double delta, double relax, double penalty) {
  double viol = 0.0;
  if (h.size() > 0) viol += std::max(0.0, h.norm() - delta);
  if (g.size() > 0) viol += (g.array() - relax).max(0.0).sum();
  return f + penalty * viol;
}

double model_merit_at(const Model& m, const Eigen::VectorXd& s, double delta,
                      double relax, double penalty) {
  double viol = 0.0;
  if (m.h.size() > 0) viol += std::max(0.0, (m.h + m.Jh * s).norm() - delta);
  if (m.g.size() > 0)
    viol += ((m.g + m.Jg * s).array() - relax).max(0.0).sum();
  return m.f + m.grad_f.dot(s) + penalty * viol;
}

// Cone subproblem over x = [step; zeta_h; zeta_g].
struct Subproblem {
  ConeProblem cone;
  int dim = 0;
};

Subproblem build_subproblem(const SampledProgram& sp, const Model& m,
                            const Eigen::VectorXd& u, double trust_radius,
                            double penalty) {
  const DomainSpec& domain = sp.domain();
  const int d = domain.dim();
  const int nh = static_cast<int>(m.h.size());
  const int ng = static_cast<int>(m.g.size());
  const int nv = d + (nh > 0 ? 1 : 0) + ng;
  const int zh = d;               // index of zeta_h when present
  const int zg0 = d + (nh > 0 ? 1 : 0);

  int n_pos = 2 * d + static_cast<int>(domain.affine_rows().size()) +
              static_cast<int>(domain.norm_lower_rows().size()) + 2 * ng +
              (nh > 0 ? 1 : 0);
  std::vector<int> soc_dims;
  int soc_rows = 0;
  if (nh > 0) {
    soc_dims.push_back(nh + 1);
    soc_rows += nh + 1;
  }
  for (const auto& row : domain.soc_rows()) {
    soc_dims.push_back(static_cast<int>(row.block.size()) + 1);
    soc_rows += static_cast<int>(row.block.size()) + 1;
  }

  Subproblem sub;
  sub.dim = d;
  ConeProblem& cp = sub.cone;
  cp.n_pos = n_pos;
  cp.soc_dims = soc_dims;
  cp.c = Eigen::VectorXd::Zero(nv);
  cp.c.head(d) = m.grad_f;
  if (nh > 0) cp.c[zh] = penalty;
  for (int j = 0; j < ng; ++j) cp.c[zg0 + j] = penalty;
  cp.A = Eigen::MatrixXd::Zero(n_pos + soc_rows, nv);
  cp.b = Eigen::VectorXd::Zero(n_pos + soc_rows);

  int row = 0;
  // step bounds: box intersected with the trust region
  for (int i = 0; i < d; ++i) {
    cp.A(row, i) = 1.0;
    cp.b[row] = std::min(trust_radius, domain.upper()[i] - u[i]);
    ++row;
    cp.A(row, i) = -1.0;
    cp.b[row] = std::min(trust_radius, u[i] - domain.lower()[i]);
    ++row;
  }
  for (const auto& ar : domain.affine_rows()) {
    double shift = ar.rhs;
    for (const auto& [idx, coef] : ar.terms) {
      cp.A(row, idx) = coef;
      shift -= coef * u[idx];
    }
    cp.b[row] = shift;
    ++row;
  }
  // nonconvex norm-lower rows, linearized at u (supporting hyperplane)
  for (const auto& nl : domain.norm_lower_rows()) {
    Eigen::VectorXd dir(nl.block.size());
    for (std::size_t k = 0; k < nl.block.size(); ++k) dir[k] = u[nl.block[k]];
    double nrm = dir.norm();
    if (nrm < 1e-12) {
      dir.setZero();
      dir[0] = 1.0;
      nrm = 1.0;
    }
    dir /= nrm;
    double shift = -nl.bound;
    for (std::size_t k = 0; k < nl.block.size(); ++k) {
      cp.A(row, nl.block[k]) = -dir[k];
      shift += dir[k] * u[nl.block[k]];
    }
    cp.b[row] = shift;
    ++row;
  }
  const double relax = sp.inequality_relax();
  for (int j = 0; j < ng; ++j) {
    cp.A.row(row).head(d) = m.Jg.row(j);
    cp.A(row, zg0 + j) = -1.0;
    cp.b[row] = relax - m.g[j];
    ++row;
  }
  if (nh > 0) {
    cp.A(row, zh) = -1.0;
    cp.b[row] = 0.0;  // zeta_h >= 0
    ++row;
  }
  for (int j = 0; j < ng; ++j) {
    cp.A(row, zg0 + j) = -1.0;
    cp.b[row] = 0.0;
    ++row;
  }
  if (nh > 0) {
    cp.A(row, zh) = -1.0;
    cp.b[row] = sp.delta();  // t = delta + zeta_h
    ++row;
    for (int j = 0; j < nh; ++j) {
      cp.A.row(row).head(d) = m.Jh.row(j);
      cp.b[row] = -m.h[j];
      ++row;
    }
  }
  for (const auto& sr : domain.soc_rows()) {
    double rhs = sr.rhs_const;
    for (const auto& [idx, coef] : sr.rhs_terms) {
      cp.A(row, idx) = -coef;
      rhs += coef * u[idx];
    }
    cp.b[row] = rhs;
    ++row;
    for (std::size_t k = 0; k < sr.block.size(); ++k) {
      cp.A(row, sr.block[k]) = -sr.scale;
      cp.b[row] = sr.scale * u[sr.block[k]];
      ++row;
    }
  }
  return sub;
}

using CenterEval = FghValues;

CenterEval evaluate_center(const SampledProgram& sp, const Eigen::VectorXd& u) {
  return sp.empirical_all(u);
}

bool center_feasible(const SampledProgram& sp, const CenterEval& c,
                     const Eigen::VectorXd& u, double tol_feas) {
  if (!sp.domain().contains(u)) return false;
  if (c.h.size() > 0 && c.h.norm() - sp.delta() > tol_feas) return false;
  if (c.g.size() > 0 && (c.g.array() - sp.inequality_relax()).maxCoeff() > tol_feas)
    return false;
  return true;
}

StartSummary run_scp(const SampledProgram& sp, const ScpConfig& cfg,
                     const Eigen::VectorXd& x0) {
  StartSummary out;
  out.x0 = x0;
  const DomainSpec& domain = sp.domain();
  if (!domain.contains(x0))
    throw std::invalid_argument("solve: start point is outside the domain");

  Eigen::VectorXd u = x0;
  double radius = cfg.trust_radius_init > 0.0 ? cfg.trust_radius_init
                                              : 0.5 * domain.max_box_width();
  const double radius_cap = domain.max_box_width();
  double penalty = cfg.constraint_penalty;
  const double delta = sp.delta();
  const double relax = sp.inequality_relax();

  bool converged = false;
  bool failed = false;
  int iters = 0;
  ConeResult warm;
  bool have_warm = false;

  try {
    CenterEval center = evaluate_center(sp, u);
    for (int round = 0; round < cfg.penalty_rounds && !converged; ++round) {
      for (int it = 0; it < cfg.max_iters; ++it) {
        ++iters;
        const Model m = evaluate_model(sp, u, cfg.fd_step_rel);
        const double merit_u = merit_value(m.f, m.h, m.g, delta, relax, penalty);

        const Subproblem sub = build_subproblem(sp, m, u, radius, penalty);
        ConeResult sol;
        try {
          // the cone geometry is fixed across iterations, so duals carry over
          sol = solve_cone(sub.cone, cfg.cone, have_warm ? &warm : nullptr);
        } catch (const std::runtime_error&) {
          failed = true;
          break;
        }
        warm = sol;
        have_warm = true;
        Eigen::VectorXd step = sol.x.head(domain.dim());
        // clamp away solver noise so the trial never leaves the box
        for (int i = 0; i < domain.dim(); ++i) {
          step[i] = std::clamp(step[i], -radius, radius);
          step[i] = std::clamp(step[i], domain.lower()[i] - u[i],
                               domain.upper()[i] - u[i]);
        }
        if (!step.allFinite()) {
          failed = true;
          break;
        }

        const double predicted =
            std::max(0.0, merit_u - model_merit_at(m, step, delta, relax, penalty));
        const Eigen::VectorXd trial = u + step;
        const CenterEval trial_eval = evaluate_center(sp, trial);
        const double merit_t =
            merit_value(trial_eval.f, trial_eval.h, trial_eval.g, delta, relax, penalty);

        const double step_norm = step.lpNorm<Eigen::Infinity>();
        const bool accept =
            merit_t <= merit_u - 1e-4 * predicted + 1e-12 * std::max(1.0, std::abs(merit_u));
        out.trace.push_back({accept, accept ? merit_t : merit_u, radius, step_norm});
        if (accept) {
          u = trial;
          center = trial_eval;
          warm.x.head(domain.dim()) -= step;  // recentered step space
          const double ratio = predicted > 1e-15 ? (merit_u - merit_t) / predicted : 1.0;
          if (ratio > 0.7 && step_norm > 0.9 * radius)
            radius = std::min(radius * cfg.trust_expand, radius_cap);
          if (step_norm < cfg.tol_opt && center_feasible(sp, center, u, cfg.tol_feas)) {
            converged = true;
            break;
          }
        } else {
          radius *= cfg.trust_shrink;
          if (radius < 1e-13) break;
        }
      }
      if (failed || converged) break;
      if (center_feasible(sp, evaluate_center(sp, u), u, cfg.tol_feas)) break;
      penalty *= 10.0;
      radius = std::max(radius, 0.1 * radius_cap);  // give the new penalty room
    }
  } catch (const std::runtime_error&) {
    failed = true;  // non-finite evaluator output
  }

  out.u = u;
  out.iters = iters;
  if (failed) {
    out.status = SolveStatus::NumericalFailure;
    return out;
  }
  const CenterEval final_eval = evaluate_center(sp, u);
  out.value = final_eval.f;
  out.eq_residual = final_eval.h.size() > 0 ? final_eval.h.norm() : 0.0;
  out.ineq_residual =
      final_eval.g.size() > 0
          ? std::max(0.0, (final_eval.g.array() - relax).maxCoeff())
          : 0.0;
  const bool feasible = center_feasible(sp, final_eval, u, cfg.tol_feas);
  if (!feasible)
    out.status = SolveStatus::Infeasible;
  else
    out.status = converged ? SolveStatus::Optimal : SolveStatus::MaxIters;
  return out;
}

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

SolveReport report_from_starts(std::vector<StartSummary> starts) {
  SolveReport report;
  report.starts = std::move(starts);
  int best = -1;
  auto better = [&](const StartSummary& a, const StartSummary& b) {
    const bool a_ok = a.status == SolveStatus::Optimal;
    const bool b_ok = b.status == SolveStatus::Optimal;
    if (a_ok != b_ok) return a_ok;
    const bool a_feas = a_ok || a.status == SolveStatus::MaxIters;
    const bool b_feas = b_ok || b.status == SolveStatus::MaxIters;
    if (a_feas != b_feas) return a_feas;
    if (a.value != b.value) return a.value < b.value;
    return lex_less(a.u, b.u);
  };
  for (int i = 0; i < static_cast<int>(report.starts.size()); ++i) {
    if (best < 0 || better(report.starts[i], report.starts[best])) best = i;
  }
  if (best >= 0) {
    const StartSummary& s = report.starts[best];
    report.status = s.status;
    report.u_star = s.u;
    report.value = s.value;
    report.eq_residual = s.eq_residual;
    report.ineq_residual = s.ineq_residual;
    report.iters = s.iters;
  }
  return report;
}

std::vector<int> first_primes(int count) {
  std::vector<int> primes;
  for (int n = 2; static_cast<int>(primes.size()) < count; ++n) {
    bool prime = true;
    for (int p : primes) {
      if (p * p > n) break;
      if (n % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(n);
  }
  return primes;
}

}  // namespace

Eigen::VectorXd fd_gradient(const SampledProgram& sp, const Eigen::VectorXd& u,
                            double fd_step_rel) {
  const int d = sp.domain().dim();
  const Eigen::VectorXd steps = fd_steps(sp.domain(), fd_step_rel);
  Eigen::VectorXd grad(d);
  Eigen::VectorXd probe = u;
  for (int i = 0; i < d; ++i) {
    probe[i] = u[i] + steps[i];
    const double fp = sp.empirical_cost(probe);
    probe[i] = u[i] - steps[i];
    const double fm = sp.empirical_cost(probe);
    probe[i] = u[i];
    grad[i] = (fp - fm) / (2.0 * steps[i]);
  }
  return grad;
}

SolveReport solve(const SampledProgram& sp, const ScpConfig& cfg,
                  const Eigen::VectorXd& x0) {
  std::vector<StartSummary> starts;
  starts.push_back(run_scp(sp, cfg, x0));
  return report_from_starts(std::move(starts));
}

std::vector<Eigen::VectorXd> lattice_starts(const DomainSpec& domain, int count,
                                            const SeedSpec& seed) {
  if (count < 1) throw std::invalid_argument("lattice_starts: count >= 1 required");
  const int d = domain.dim();
  // Kronecker sequence frac(i * sqrt(p_j)) with a seeded Cranley-Patterson shift.
  const auto primes = first_primes(d);
  Eigen::VectorXd alpha(d), shift(d);
  for (int j = 0; j < d; ++j) {
    double ip;
    alpha[j] = std::modf(std::sqrt(static_cast<double>(primes[j])), &ip);
    shift[j] = draw_uniform(seed, static_cast<std::uint64_t>(j), 0.0, 1.0,
                            0xC0FFEEULL);
  }
  std::vector<Eigen::VectorXd> points;
  const int budget = std::max(1000, 1000 * count);
  for (int i = 1; i <= budget && static_cast<int>(points.size()) < count; ++i) {
    Eigen::VectorXd u(d);
    for (int j = 0; j < d; ++j) {
      double ip;
      const double frac = std::modf(shift[j] + i * alpha[j], &ip);
      u[j] = domain.lower()[j] + frac * (domain.upper()[j] - domain.lower()[j]);
    }
    if (domain.contains(u)) points.push_back(u);
  }
  if (points.empty())
    throw std::runtime_error("lattice_starts: no lattice point passed the membership test");
  return points;
}

SolveReport solve_multistart(const SampledProgram& sp, const ScpConfig& cfg,
                             int starts, const SeedSpec& seed) {
  if (starts < 1 || starts > cfg.max_starts)
    throw std::invalid_argument("solve_multistart: starts must lie in [1, max_starts]");
  return solve_multistart(sp, cfg, lattice_starts(sp.domain(), starts, seed));
}

SolveReport solve_multistart(const SampledProgram& sp, const ScpConfig& cfg,
                             const std::vector<Eigen::VectorXd>& start_points) {
  if (start_points.empty())
    throw std::invalid_argument("solve_multistart: no start points");
  std::vector<StartSummary> summaries;
  summaries.reserve(start_points.size());
  for (const auto& p : start_points) summaries.push_back(run_scp(sp, cfg, p));
  return report_from_starts(std::move(summaries));
}

PointCloud estimate_solution_set(const SampledProgram& sp, const ScpConfig& cfg,
                                 int starts, const SeedSpec& seed) {
  const SolveReport report = solve_multistart(sp, cfg, starts, seed);
  std::vector<const StartSummary*> ok;
  for (const auto& s : report.starts)
    if (s.status == SolveStatus::Optimal) ok.push_back(&s);
  if (ok.empty()) throw std::runtime_error("estimate_solution_set: all starts failed");

  std::sort(ok.begin(), ok.end(), [](const StartSummary* a, const StartSummary* b) {
    if (a->value != b->value) return a->value < b->value;
    return lex_less(a->u, b->u);
  });
  const double best_value = ok.front()->value;

  // Positional scatter of a first-order trust-region method scales like the
  // square root of the value tolerance near a quadratic minimum, so clusters
  // merge at sqrt(tol_opt) while the value window stays at tol_opt.
  const double cluster_radius = std::sqrt(cfg.tol_opt);
  PointCloud reps;
  std::vector<double> rep_values;
  for (const auto* s : ok) {
    bool merged = false;
    for (std::size_t k = 0; k < reps.size(); ++k) {
      if ((s->u - reps[k]).norm() <= cluster_radius) {
        if (lex_less(s->u, reps[k])) reps[k] = s->u;
        merged = true;
        break;
      }
    }
    if (!merged) {
      reps.push_back(s->u);
      rep_values.push_back(s->value);
    }
  }
  PointCloud filtered;
  for (std::size_t k = 0; k < reps.size(); ++k)
    if (rep_values[k] <= best_value + cfg.tol_opt) filtered.push_back(reps[k]);
  std::sort(filtered.begin(), filtered.end(), lex_less);
  return filtered;
}

CounterexampleResult solve_counterexample(const std::string& which, std::int64_t N,
                                          double delta, const SeedSpec& seed) {
  if (N < 1) throw std::invalid_argument("solve_counterexample: N >= 1 required");
  if (which != "p1" && which != "p2")
    throw std::invalid_argument("solve_counterexample: which must be p1 or p2");
  std::vector<double> draws(static_cast<std::size_t>(N));
  for (std::size_t i = 0; i < draws.size(); ++i)
    draws[i] = draw_uniform(seed, i, -1.0, 1.0);
  const double mean = pairwise_sum(draws) / static_cast<double>(N);

  CounterexampleResult res;
  res.sample_mean = mean;
  res.delta = delta;
  if (which == "p1") {
    // min_u ||(u+m, u-m)||_2 = sqrt(2)|m| at u = 0
    res.feasible = std::sqrt(2.0) * std::abs(mean) <= delta;
    if (res.feasible) res.u_star = 0.0;
  } else {
    // min_u |u^2 + m| over [-1,1] is max(m, 0); minimal |u| when feasible
    res.feasible = mean <= delta;
    if (res.feasible)
      res.u_star = std::abs(mean) <= delta ? 0.0 : std::sqrt(-mean - delta);
  }
  return res;
}

}  // namespace saa
