#pragma once

#include <Eigen/Dense>
#include <vector>

namespace skewtk::linalg {

using Eigen::MatrixXd;
using Eigen::VectorXd;

inline constexpr double kDefaultRankTol = 1e-10;

// Orthonormal basis of span(vectors). Column count equals the numerical rank
// at tolerance tol (relative to the largest singular value). An all-zero or
// empty span yields a 0-column matrix.
// Throws std::invalid_argument on empty input or mixed dimensions.
MatrixXd orthonormal_basis(const std::vector<VectorXd>& vectors, double tol = kDefaultRankTol);

// sigma_min of a tall (rows >= cols) matrix. Throws std::invalid_argument for
// wide matrices. A 0-column matrix has sigma_min defined as 0.
double smallest_singular_value(const MatrixXd& m);

// Number of singular values above tol * sigma_max.
int rank(const MatrixXd& m, double tol = kDefaultRankTol);

}  // namespace skewtk::linalg
