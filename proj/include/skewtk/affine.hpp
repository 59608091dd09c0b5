#pragma once

#include <Eigen/Dense>

namespace skewtk {
class Embedding;  // embeddings.hpp
}

namespace skewtk::affine {

using Eigen::MatrixXd;
using Eigen::VectorXd;

inline constexpr double kDefaultSkewTol = 1e-8;

// An n-dimensional affine subspace of R^N: base point plus an orthonormal
// direction basis (N x n). n = 0 (a single point) is allowed.
struct AffineSubspace {
  VectorXd base_point;
  MatrixXd directions;  // orthonormal columns

  int ambient_dim() const { return static_cast<int>(base_point.size()); }
  int dim() const { return static_cast<int>(directions.cols()); }
};

// Image of an affine subspace under the lift into linear subspaces of
// R^{N+1}: the (n+1)-plane through the origin spanned by the directions
// (padded with 0) and the unit vector toward (base_point, 1).
struct LiftedSubspace {
  MatrixXd basis;  // (N+1) x (n+1), orthonormal columns

  int ambient_dim() const { return static_cast<int>(basis.rows()); }
  int dim() const { return static_cast<int>(basis.cols()); }
};

AffineSubspace make_affine(const VectorXd& base_point, const MatrixXd& spanning_directions);

LiftedSubspace lift(const AffineSubspace& v);

struct SkewVerdict {
  bool skew;
  double margin;  // in [0, 1]
};

// Skewness test with a quantitative margin: margin is sigma_min of the
// concatenated lifted bases, 0 iff the lifts intersect nontrivially. If the
// ambient dimension cannot host a skew pair (n_v + n_w + 1 > N) the verdict
// is false with margin 0.
SkewVerdict are_skew(const AffineSubspace& v, const AffineSubspace& w,
                     double tol = kDefaultSkewTol);

// Margin between two already-lifted subspaces. Fast path used by the pair
// sweeps: sqrt(1 - sigma_max(Q1^T Q2)), valid because both blocks are
// orthonormal. Accuracy near 0 is ~1e-8 (cancellation); callers re-check
// small values through are_skew.
double lifted_margin_fast(const LiftedSubspace& a, const LiftedSubspace& b);

// Precise margin of two lifts: sigma_min of the concatenated bases.
double lifted_margin(const LiftedSubspace& a, const LiftedSubspace& b);

// Margin between the tangent spaces of two embeddings at given domain points.
double skew_margin_pair(const Embedding& e1, const VectorXd& s,
                        const Embedding& e2, const VectorXd& t);

}  // namespace skewtk::affine
