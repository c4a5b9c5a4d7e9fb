#include "saa/numeric.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace saa {

double pairwise_sum(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n == 0) return 0.0;
  if (n == 1) return values[0];
  if (n == 2) return values[0] + values[1];
  const std::size_t mid = n / 2;
  return pairwise_sum(values.first(mid)) + pairwise_sum(values.subspan(mid));
}

namespace {

void pairwise_columns(const Eigen::MatrixXd& values, Eigen::Index lo,
                      Eigen::Index hi, Eigen::VectorXd& out) {
  if (hi - lo == 1) {
    out = values.col(lo);
    return;
  }
  if (hi - lo == 2) {
    out = values.col(lo) + values.col(lo + 1);
    return;
  }
  const Eigen::Index mid = lo + (hi - lo) / 2;
  Eigen::VectorXd left(values.rows()), right(values.rows());
  pairwise_columns(values, lo, mid, left);
  pairwise_columns(values, mid, hi, right);
  out = left + right;
}

}  // namespace

Eigen::VectorXd pairwise_sum_columns(const Eigen::MatrixXd& values) {
  if (values.cols() == 0) return Eigen::VectorXd::Zero(values.rows());
  Eigen::VectorXd out(values.rows());
  pairwise_columns(values, 0, values.cols(), out);
  return out;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace saa
