#pragma once

#include <Eigen/Core>
#include <utility>
#include <vector>

namespace saa {

// a.u <= rhs, sparse coefficients.
struct AffineRow {
  std::vector<std::pair<int, double>> terms;
  double rhs = 0.0;
};

// scale * ||u[block]||_2 <= sum(rhs_terms) + rhs_const.
struct SocRow {
  std::vector<int> block;
  double scale = 1.0;
  std::vector<std::pair<int, double>> rhs_terms;
  double rhs_const = 0.0;
};

// ||u[block]||_2 >= bound. Nonconvex; the SCP solver enforces it through a
// per-iterate supporting-hyperplane linearization (an inner approximation).
struct NormLowerRow {
  std::vector<int> block;
  double bound = 0.0;
};

// Compact decision domain: a box with optional affine / second-order-cone /
// norm-lower-bound rows carving out a subset.
class DomainSpec {
 public:
  static constexpr double kMembershipTol = 1e-9;

  DomainSpec(Eigen::VectorXd lower, Eigen::VectorXd upper);

  int dim() const { return static_cast<int>(lower_.size()); }
  const Eigen::VectorXd& lower() const { return lower_; }
  const Eigen::VectorXd& upper() const { return upper_; }

  void add_affine(AffineRow row) { affine_.push_back(std::move(row)); }
  void add_soc(SocRow row) { soc_.push_back(std::move(row)); }
  void add_norm_lower(NormLowerRow row) { norm_lower_.push_back(std::move(row)); }

  const std::vector<AffineRow>& affine_rows() const { return affine_; }
  const std::vector<SocRow>& soc_rows() const { return soc_; }
  const std::vector<NormLowerRow>& norm_lower_rows() const { return norm_lower_; }

  bool contains(const Eigen::VectorXd& u, double tol = kMembershipTol) const;

  Eigen::VectorXd clip_to_box(const Eigen::VectorXd& u) const;
  Eigen::VectorXd box_center() const { return 0.5 * (lower_ + upper_); }
  double max_box_width() const { return (upper_ - lower_).maxCoeff(); }

 private:
  Eigen::VectorXd lower_, upper_;
  std::vector<AffineRow> affine_;
  std::vector<SocRow> soc_;
  std::vector<NormLowerRow> norm_lower_;
};

}  // namespace saa
