#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "skewtk/affine.hpp"
#include "skewtk/bilinear.hpp"
#include "skewtk/rng.hpp"

namespace skewtk {

using Eigen::MatrixXd;
using Eigen::VectorXd;

enum class DomainKind { Interval, Circle, Sphere, Disk };

// Domain point conventions:
//   Interval  - size-1 vector, the parameter x in [a,b]
//   Circle    - size-1 vector, the angle theta
//   Sphere(n) - unit vector in R^{n+1}
//   Disk(n)   - vector in R^n with |p| <= radius
struct Domain {
  DomainKind kind = DomainKind::Interval;
  double a = -1.0, b = 1.0;  // interval endpoints
  int dim = 1;               // intrinsic dimension (sphere/disk)
  double radius = 1.0;       // disk radius

  int intrinsic_dim() const {
    return (kind == DomainKind::Interval || kind == DomainKind::Circle) ? 1 : dim;
  }
  bool is_curve() const { return intrinsic_dim() == 1 && kind != DomainKind::Sphere; }
  double diameter() const;
};

// Intrinsic distance between two domain points: arc angle on circles and
// spheres, Euclidean parameter distance on intervals and disks.
double intrinsic_distance(const Domain& d, const VectorXd& p, const VectorXd& q);

struct Jet {
  VectorXd value;
  MatrixXd frame;                // N x n tangent frame
  std::vector<VectorXd> higher;  // curve derivatives of orders 2..3
};

class Embedding {
 public:
  std::string name;
  Domain domain;
  int ambient_dim = 0;
  std::function<Jet(const VectorXd&, int)> jet_fn;

  VectorXd value(const VectorXd& p) const { return jet_fn(p, 0).value; }

  // order 0: value only; order 1: value + tangent frame; orders 2,3 add
  // higher curve derivatives (curves only).
  Jet jet(const VectorXd& p, int order) const;

  int domain_dim() const { return domain.intrinsic_dim(); }
};

// Tangent space of e at p as an affine subspace of the ambient space.
affine::AffineSubspace tangent_space(const Embedding& e, const VectorXd& p);

// --- catalog -----------------------------------------------------------

Embedding cubic_curve();                       // x -> (x, x^2, x^3), R^3
Embedding circle_quadratic();                  // theta -> (cos, sin, cos2, sin2), R^4
Embedding bilinear_sphere(const bilinear::BilinearMap& b);  // x -> (x, B(x,x))
Embedding complex_cubic_disk();                // z -> (z, z^2, z^3), R^6
Embedding planar_circle_in_r3();               // negative control
std::pair<Embedding, Embedding> sphere_pair(int n1, int n2);

enum class CurveBasis { Polynomial, Fourier };

// Curve from basis coefficients; rows of coeffs index ambient coordinates.
// Polynomial: column k is the coefficient of x^k (interval domain).
// Fourier: columns [a0, a1, b1, a2, b2, ...] for a0 + sum a_h cos + b_h sin
// (circle domain).
Embedding parametric_curve(const MatrixXd& coeffs, CurveBasis basis, int ambient_dim);

// Resolve a catalog name ("cubic", "circle-quadratic", "bilinear-sphere:n=2",
// "complex-cubic-disk", "planar-circle", "quaternion-sphere"). Throws
// std::invalid_argument on unknown names.
Embedding catalog(const std::string& name);

// --- domain sampling ---------------------------------------------------

// Deterministic grid: `res` points per domain dimension. Sphere(2) uses a
// Fibonacci lattice of res^2 points, sphere(n>=3) res^2 seeded quasi-random
// unit vectors. Disks use uniform-area polar sampling.
std::vector<VectorXd> domain_grid(const Domain& d, int res);

VectorXd random_domain_point(const Domain& d, CounterRng& rng);

}  // namespace skewtk
