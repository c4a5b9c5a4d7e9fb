#include "saa/grid.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "saa/threading.hpp"

namespace saa {

namespace {

std::int64_t lattice_size(const std::vector<int>& resolution) {
  std::int64_t n = 1;
  for (int r : resolution) n *= r;
  return n;
}

}  // namespace

GridSet::GridSet(std::shared_ptr<const DomainSpec> domain,
                 std::vector<int> resolution, std::vector<std::int64_t> members)
    : domain_(std::move(domain)),
      resolution_(std::move(resolution)),
      members_(std::move(members)) {
  if (!domain_) throw std::invalid_argument("GridSet: null domain");
  const int d = domain_->dim();
  if (d > 3) throw std::invalid_argument("GridSet: grid studies are restricted to d <= 3");
  if (static_cast<int>(resolution_.size()) != d)
    throw std::invalid_argument("GridSet: resolution size must match domain dim");
  spacing_.resize(d);
  for (int i = 0; i < d; ++i) {
    if (resolution_[i] < 2)
      throw std::invalid_argument("GridSet: resolution must be >= 2 per axis");
    spacing_[i] = (domain_->upper()[i] - domain_->lower()[i]) / (resolution_[i] - 1);
  }
  const std::int64_t total = lattice_size(resolution_);
  for (std::int64_t m : members_) {
    if (m < 0 || m >= total) throw std::invalid_argument("GridSet: member index out of range");
  }
}

GridSet GridSet::full(std::shared_ptr<const DomainSpec> domain,
                      std::vector<int> resolution) {
  GridSet lattice(domain, resolution, {});
  const std::int64_t total = lattice_size(lattice.resolution_);
  std::vector<std::int64_t> members;
  members.reserve(total);
  for (std::int64_t i = 0; i < total; ++i) {
    if (domain->contains(lattice.point(i))) members.push_back(i);
  }
  return lattice.with_members(std::move(members));
}

Eigen::VectorXd GridSet::point(std::int64_t flat_index) const {
  const int d = domain_->dim();
  Eigen::VectorXd u(d);
  std::int64_t rest = flat_index;
  for (int i = d - 1; i >= 0; --i) {
    const std::int64_t k = rest % resolution_[i];
    rest /= resolution_[i];
    u[i] = domain_->lower()[i] + spacing_[i] * static_cast<double>(k);
  }
  return u;
}

std::vector<Eigen::VectorXd> GridSet::points() const {
  std::vector<Eigen::VectorXd> pts;
  pts.reserve(members_.size());
  for (std::int64_t m : members_) pts.push_back(point(m));
  return pts;
}

GridSet level_set(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& evaluator,
                  double threshold, const GridSet& grid) {
  if (threshold < 0.0)
    throw std::invalid_argument("level_set: threshold must be nonnegative");
  const std::size_t n = grid.members().size();
  std::vector<double> norms(n);
  parallel_for(n, [&](std::size_t i) {
    norms[i] = evaluator(grid.point(grid.members()[i])).norm();
  });
  std::vector<std::int64_t> members;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(norms[i])) {
      std::ostringstream oss;
      oss << "level_set: non-finite evaluation at point ["
          << grid.point(grid.members()[i]).transpose() << "]";
      throw std::runtime_error(oss.str());
    }
    if (norms[i] <= threshold) members.push_back(grid.members()[i]);
  }
  return grid.with_members(std::move(members));
}

}  // namespace saa
