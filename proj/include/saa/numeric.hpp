#pragma once

#include <Eigen/Core>
#include <span>
#include <string>

namespace saa {

// Sum over a fixed binary tree: split the range into contiguous halves and
// add the two partial sums. The result depends only on the element order,
// never on how the leaf evaluations were scheduled.
double pairwise_sum(std::span<const double> values);

// Column-wise pairwise sum over the same tree, one tree per row.
// `values` is n x N; column i holds the i-th scenario evaluation.
Eigen::VectorXd pairwise_sum_columns(const Eigen::MatrixXd& values);

// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

}  // namespace saa
