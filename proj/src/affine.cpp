#include "skewtk/affine.hpp"

#include <stdexcept>

#include "skewtk/embeddings.hpp"
#include "skewtk/linalg.hpp"

namespace skewtk::affine {

AffineSubspace make_affine(const VectorXd& base_point, const MatrixXd& spanning_directions) {
  AffineSubspace v;
  v.base_point = base_point;
  if (spanning_directions.cols() == 0) {
    v.directions = MatrixXd(base_point.size(), 0);
    return v;
  }
  if (spanning_directions.rows() != base_point.size())
    throw std::invalid_argument("make_affine: direction/base dimension mismatch");
  std::vector<VectorXd> cols;
  cols.reserve(static_cast<std::size_t>(spanning_directions.cols()));
  for (Eigen::Index j = 0; j < spanning_directions.cols(); ++j)
    cols.push_back(spanning_directions.col(j));
  v.directions = linalg::orthonormal_basis(cols);
  return v;
}

LiftedSubspace lift(const AffineSubspace& v) {
  const Eigen::Index n1 = v.base_point.size() + 1;
  MatrixXd gen(n1, v.directions.cols() + 1);
  for (Eigen::Index j = 0; j < v.directions.cols(); ++j) {
    gen.col(j).head(n1 - 1) = v.directions.col(j);
    gen(n1 - 1, j) = 0.0;
  }
  gen.col(v.directions.cols()).head(n1 - 1) = v.base_point;
  gen(n1 - 1, v.directions.cols()) = 1.0;

  // The (p,1) generator is independent of the padded directions, so the lift
  // always has dimension n+1; orthonormalize without rank truncation.
  Eigen::HouseholderQR<MatrixXd> qr(gen);
  LiftedSubspace out;
  out.basis = qr.householderQ() * MatrixXd::Identity(n1, gen.cols());
  return out;
}

double lifted_margin(const LiftedSubspace& a, const LiftedSubspace& b) {
  const Eigen::Index rows = a.basis.rows();
  if (b.basis.rows() != rows)
    throw std::invalid_argument("lifted_margin: ambient dimension mismatch");
  if (a.basis.cols() + b.basis.cols() > rows) return 0.0;
  MatrixXd m(rows, a.basis.cols() + b.basis.cols());
  m.leftCols(a.basis.cols()) = a.basis;
  m.rightCols(b.basis.cols()) = b.basis;
  return linalg::smallest_singular_value(m);
}

double lifted_margin_fast(const LiftedSubspace& a, const LiftedSubspace& b) {
  if (a.basis.cols() + b.basis.cols() > a.basis.rows()) return 0.0;
  const MatrixXd m = a.basis.transpose() * b.basis;
  double smax;
  if (m.cols() <= 3 && m.rows() <= 3) {
    const MatrixXd g = (m.rows() >= m.cols()) ? MatrixXd(m.transpose() * m)
                                              : MatrixXd(m * m.transpose());
    if (g.rows() == 1) {
      smax = std::sqrt(g(0, 0));
    } else if (g.rows() == 2) {
      const Eigen::Matrix2d g2 = g;
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es2;
      es2.computeDirect(g2, Eigen::EigenvaluesOnly);
      smax = std::sqrt(std::max(0.0, es2.eigenvalues()(1)));
    } else {
      const Eigen::Matrix3d g3 = g;
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es3;
      es3.computeDirect(g3, Eigen::EigenvaluesOnly);
      smax = std::sqrt(std::max(0.0, es3.eigenvalues()(2)));
    }
  } else {
    Eigen::JacobiSVD<MatrixXd> svd(m);
    smax = svd.singularValues()(0);
  }
  return std::sqrt(std::max(0.0, 1.0 - smax));
}

SkewVerdict are_skew(const AffineSubspace& v, const AffineSubspace& w, double tol) {
  if (v.ambient_dim() != w.ambient_dim())
    throw std::invalid_argument("are_skew: ambient dimension mismatch");
  const int need = v.dim() + w.dim() + 2;
  if (need > v.ambient_dim() + 1) return {false, 0.0};
  const double margin = lifted_margin(lift(v), lift(w));
  return {margin > tol, margin};
}

double skew_margin_pair(const Embedding& e1, const VectorXd& s,
                        const Embedding& e2, const VectorXd& t) {
  return are_skew(tangent_space(e1, s), tangent_space(e2, t)).margin;
}

}  // namespace skewtk::affine
