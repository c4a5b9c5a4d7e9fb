#include "saa/domain.hpp"

#include <cmath>
#include <stdexcept>

namespace saa {

DomainSpec::DomainSpec(Eigen::VectorXd lower, Eigen::VectorXd upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() == 0 || lower_.size() != upper_.size())
    throw std::invalid_argument("DomainSpec: bound vectors must match and be nonempty");
  for (Eigen::Index i = 0; i < lower_.size(); ++i) {
    if (!(lower_[i] < upper_[i]))
      throw std::invalid_argument("DomainSpec: requires lower[i] < upper[i]");
  }
}

bool DomainSpec::contains(const Eigen::VectorXd& u, double tol) const {
  if (u.size() != lower_.size()) return false;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (u[i] < lower_[i] - tol || u[i] > upper_[i] + tol) return false;
  }
  for (const auto& row : affine_) {
    double lhs = 0.0;
    for (const auto& [idx, coef] : row.terms) lhs += coef * u[idx];
    if (lhs > row.rhs + tol) return false;
  }
  for (const auto& row : soc_) {
    double norm_sq = 0.0;
    for (int idx : row.block) norm_sq += u[idx] * u[idx];
    double rhs = row.rhs_const;
    for (const auto& [idx, coef] : row.rhs_terms) rhs += coef * u[idx];
    if (row.scale * std::sqrt(norm_sq) > rhs + tol) return false;
  }
  for (const auto& row : norm_lower_) {
    double norm_sq = 0.0;
    for (int idx : row.block) norm_sq += u[idx] * u[idx];
    if (std::sqrt(norm_sq) < row.bound - tol) return false;
  }
  return true;
}

Eigen::VectorXd DomainSpec::clip_to_box(const Eigen::VectorXd& u) const {
  return u.cwiseMax(lower_).cwiseMin(upper_);
}

}  // namespace saa
