#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "saa/domain.hpp"

namespace saa {

// Finite discretization of a compact domain, d <= 3. Grid points sit on a
// regular lattice with spacing[i] = (upper[i]-lower[i])/(resolution[i]-1);
// `members` is the sorted set of flat lattice indices that belong to the set.
class GridSet {
 public:
  GridSet(std::shared_ptr<const DomainSpec> domain, std::vector<int> resolution,
          std::vector<std::int64_t> members);

  // Every lattice point that passes the domain membership test.
  static GridSet full(std::shared_ptr<const DomainSpec> domain,
                      std::vector<int> resolution);

  const DomainSpec& domain() const { return *domain_; }
  std::shared_ptr<const DomainSpec> domain_ptr() const { return domain_; }
  const std::vector<int>& resolution() const { return resolution_; }
  const Eigen::VectorXd& spacing() const { return spacing_; }
  double spacing_norm() const { return spacing_.norm(); }

  std::int64_t size() const { return static_cast<std::int64_t>(members_.size()); }
  bool empty() const { return members_.empty(); }
  const std::vector<std::int64_t>& members() const { return members_; }

  Eigen::VectorXd point(std::int64_t flat_index) const;
  std::vector<Eigen::VectorXd> points() const;

  GridSet with_members(std::vector<std::int64_t> members) const {
    return GridSet(domain_, resolution_, std::move(members));
  }

 private:
  std::shared_ptr<const DomainSpec> domain_;
  std::vector<int> resolution_;
  Eigen::VectorXd spacing_;
  std::vector<std::int64_t> members_;
};

// Grid points u with ||evaluator(u)||_2 <= threshold. Throws if the evaluator
// returns a non-finite value, naming the offending point.
GridSet level_set(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& evaluator,
                  double threshold, const GridSet& grid);

}  // namespace saa
