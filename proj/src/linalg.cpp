#include "skewtk/linalg.hpp"

#include <stdexcept>

namespace skewtk::linalg {

MatrixXd orthonormal_basis(const std::vector<VectorXd>& vectors, double tol) {
  if (vectors.empty()) throw std::invalid_argument("orthonormal_basis: empty input");
  if (tol <= 0) throw std::invalid_argument("orthonormal_basis: tol must be positive");
  const Eigen::Index dim = vectors.front().size();
  MatrixXd a(dim, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    if (vectors[j].size() != dim)
      throw std::invalid_argument("orthonormal_basis: dimension mismatch");
    a.col(static_cast<Eigen::Index>(j)) = vectors[j];
  }
  Eigen::JacobiSVD<MatrixXd> svd(a, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * smax && smax > 0) ++r;
  return svd.matrixU().leftCols(r);
}

double smallest_singular_value(const MatrixXd& m) {
  if (m.cols() == 0) return 0.0;
  if (m.rows() < m.cols())
    throw std::invalid_argument("smallest_singular_value: matrix is wide (rows < cols)");
  Eigen::JacobiSVD<MatrixXd> svd(m);
  return svd.singularValues()(m.cols() - 1);
}

int rank(const MatrixXd& m, double tol) {
  if (tol <= 0) throw std::invalid_argument("rank: tol must be positive");
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (smax > 0 && sv(i) > tol * smax) ++r;
  return r;
}

}  // namespace skewtk::linalg
