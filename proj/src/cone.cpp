#include "saa/cone.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace saa {

namespace {

void project_cone(Eigen::VectorXd& s, int n_pos, const std::vector<int>& soc_dims) {
  for (int i = 0; i < n_pos; ++i) s[i] = std::max(0.0, s[i]);
  int offset = n_pos;
  for (int dim : soc_dims) {
    const double t = s[offset];
    const double vnorm = s.segment(offset + 1, dim - 1).norm();
    if (vnorm <= t) {
      // inside, keep
    } else if (vnorm <= -t) {
      s.segment(offset, dim).setZero();
    } else {
      const double scale = 0.5 * (1.0 + t / vnorm);
      s[offset] = scale * vnorm;
      s.segment(offset + 1, dim - 1) *= scale;
    }
    offset += dim;
  }
}

// Ruiz equilibration. Rows belonging to one SOC block share a common factor so
// the scaled slack stays in the same cone.
void equilibrate(const ConeProblem& p, Eigen::MatrixXd& A, Eigen::VectorXd& row_scale,
                 Eigen::VectorXd& col_scale, int iters) {
  const int m = p.rows();
  const int n = p.vars();
  row_scale = Eigen::VectorXd::Ones(m);
  col_scale = Eigen::VectorXd::Ones(n);
  A = p.A;
  for (int pass = 0; pass < iters; ++pass) {
    Eigen::VectorXd r(m), c(n);
    for (int i = 0; i < m; ++i) {
      const double nrm = A.row(i).lpNorm<Eigen::Infinity>();
      r[i] = nrm > 0 ? 1.0 / std::sqrt(nrm) : 1.0;
    }
    int offset = p.n_pos;
    for (int dim : p.soc_dims) {
      double mean = 0.0;
      for (int k = 0; k < dim; ++k) mean += std::log(r[offset + k]);
      const double shared = std::exp(mean / dim);
      for (int k = 0; k < dim; ++k) r[offset + k] = shared;
      offset += dim;
    }
    for (int j = 0; j < n; ++j) {
      const double nrm = A.col(j).lpNorm<Eigen::Infinity>();
      c[j] = nrm > 0 ? 1.0 / std::sqrt(nrm) : 1.0;
    }
    A = r.asDiagonal() * A * c.asDiagonal();
    row_scale = row_scale.cwiseProduct(r);
    col_scale = col_scale.cwiseProduct(c);
  }
}

}  // namespace

ConeResult solve_cone(const ConeProblem& p, const ConeSettings& settings,
                      const ConeResult* warm_start) {
  const int m = p.rows();
  const int n = p.vars();
  if (p.A.rows() != m || p.A.cols() != n)
    throw std::invalid_argument("solve_cone: inconsistent problem dimensions");
  {
    int cone_rows = p.n_pos;
    for (int dim : p.soc_dims) {
      if (dim < 2) throw std::invalid_argument("solve_cone: SOC dims must be >= 2");
      cone_rows += dim;
    }
    if (cone_rows != m)
      throw std::invalid_argument("solve_cone: cone sizes do not cover all rows");
  }
  if (!p.A.allFinite() || !p.b.allFinite() || !p.c.allFinite())
    throw std::runtime_error("solve_cone: non-finite problem data");

  Eigen::MatrixXd A;
  Eigen::VectorXd row_scale, col_scale;
  equilibrate(p, A, row_scale, col_scale, settings.ruiz_iters);
  const Eigen::VectorXd b = row_scale.cwiseProduct(p.b);
  Eigen::VectorXd c = col_scale.cwiseProduct(p.c);
  const double cost_scale = 1.0 / std::max(1.0, c.lpNorm<Eigen::Infinity>());
  c *= cost_scale;

  const Eigen::MatrixXd gram = A.transpose() * A;
  double rho = settings.rho;
  const double sigma = settings.sigma;
  Eigen::LLT<Eigen::MatrixXd> llt;
  auto factor = [&]() {
    Eigen::MatrixXd K = rho * gram;
    K.diagonal().array() += sigma;
    llt.compute(K);
    if (llt.info() != Eigen::Success)
      throw std::runtime_error("solve_cone: factorization failed");
  };
  factor();

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd s = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(m);
  if (warm_start && warm_start->x.size() == n && warm_start->s.size() == m &&
      warm_start->y.size() == m) {
    x = col_scale.cwiseInverse().cwiseProduct(warm_start->x);
    s = row_scale.cwiseProduct(warm_start->s);
    y = cost_scale * row_scale.cwiseInverse().cwiseProduct(warm_start->y);
  }

  ConeResult result;
  const double b_inf = p.b.lpNorm<Eigen::Infinity>();
  const double c_inf = p.c.lpNorm<Eigen::Infinity>();

  for (int iter = 1; iter <= settings.max_iters; ++iter) {
    const Eigen::VectorXd rhs =
        -c + rho * (A.transpose() * (b - s - y / rho)) + sigma * x;
    const Eigen::VectorXd x_next = llt.solve(rhs);
    const Eigen::VectorXd Ax = A * x_next;
    const Eigen::VectorXd v = settings.alpha * Ax + (1.0 - settings.alpha) * (b - s);
    Eigen::VectorXd s_next = b - v - y / rho;
    project_cone(s_next, p.n_pos, p.soc_dims);
    y += rho * (v + s_next - b);
    x = x_next;
    s = s_next;

    if (iter % settings.check_every == 0 || iter == settings.max_iters) {
      // Unscaled residuals.
      const Eigen::VectorXd prim =
          row_scale.cwiseInverse().cwiseProduct(Ax + s - b);
      const Eigen::VectorXd dual = col_scale.cwiseInverse().cwiseProduct(
          A.transpose() * y + c) / cost_scale;
      const double prim_res = prim.lpNorm<Eigen::Infinity>();
      const double dual_res = dual.lpNorm<Eigen::Infinity>();
      const double prim_tol = settings.eps_prim + settings.eps_rel * std::max(1.0, b_inf);
      const double dual_tol = settings.eps_dual + settings.eps_rel * std::max(1.0, c_inf);
      if (prim_res <= prim_tol && dual_res <= dual_tol) {
        result.converged = true;
        result.iters = iter;
        result.prim_res = prim_res;
        result.dual_res = dual_res;
        break;
      }
      if (iter == settings.max_iters) {
        result.iters = iter;
        result.prim_res = prim_res;
        result.dual_res = dual_res;
      }
      if (settings.adaptive_rho) {
        const double p_ratio = prim_res / std::max(prim_tol, 1e-300);
        const double d_ratio = dual_res / std::max(dual_tol, 1e-300);
        const double scale_factor = std::sqrt(p_ratio / std::max(d_ratio, 1e-300));
        if (scale_factor > 5.0 || scale_factor < 0.2) {
          rho = std::clamp(rho * std::clamp(scale_factor, 1e-3, 1e3), 1e-6, 1e6);
          factor();
        }
      }
    }
  }

  result.x = col_scale.cwiseProduct(x);
  result.s = row_scale.cwiseInverse().cwiseProduct(s);
  result.y = row_scale.cwiseProduct(y) / cost_scale;
  result.objective = p.c.dot(result.x);
  return result;
}

}  // namespace saa
