#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "saa/grid.hpp"

namespace saa {

using PointCloud = std::vector<Eigen::VectorXd>;

// One-sided set deviation D(A,B) = sup_{a in A} inf_{b in B} ||a-b||_2.
// Empty A or B maps to the +infinity tag (std::nullopt), never a float
// sentinel. Not a metric, but satisfies the triangle inequality, and
// D(A,B) = 0 implies A is contained in B.
std::optional<double> dist_lower(const PointCloud& A, const PointCloud& B);
std::optional<double> dist_lower(const GridSet& A, const GridSet& B);

// Hausdorff distance: max of the two one-sided deviations.
std::optional<double> dist_hausdorff(const PointCloud& A, const PointCloud& B);
std::optional<double> dist_hausdorff(const GridSet& A, const GridSet& B);

}  // namespace saa
