#include "saa/set_distance.hpp"

#include <algorithm>
#include <cmath>

namespace saa {

std::optional<double> dist_lower(const PointCloud& A, const PointCloud& B) {
  if (A.empty() || B.empty()) return std::nullopt;
  double sup_sq = 0.0;
  for (const auto& a : A) {
    double min_sq = std::numeric_limits<double>::infinity();
    for (const auto& b : B) {
      const double d = (a - b).squaredNorm();
      if (d < min_sq) {
        min_sq = d;
        if (min_sq <= sup_sq) break;  // cannot raise the sup
      }
    }
    sup_sq = std::max(sup_sq, min_sq);
  }
  return std::sqrt(sup_sq);
}

std::optional<double> dist_lower(const GridSet& A, const GridSet& B) {
  return dist_lower(A.points(), B.points());
}

std::optional<double> dist_hausdorff(const PointCloud& A, const PointCloud& B) {
  const auto ab = dist_lower(A, B);
  const auto ba = dist_lower(B, A);
  if (!ab || !ba) return std::nullopt;
  return std::max(*ab, *ba);
}

std::optional<double> dist_hausdorff(const GridSet& A, const GridSet& B) {
  return dist_hausdorff(A.points(), B.points());
}

}  // namespace saa
