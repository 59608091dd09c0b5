#include "skewtk/embeddings.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace skewtk {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Orthonormal basis of x^perp for unit x, via the Householder reflection
// swapping x with -sign(x0) e1. Deterministic in x.
MatrixXd householder_complement(const VectorXd& x) {
  const Eigen::Index m = x.size();
  const double s = (x(0) >= 0.0) ? 1.0 : -1.0;
  VectorXd v = x;
  v(0) += s;
  const double beta = 2.0 / v.squaredNorm();
  MatrixXd h = MatrixXd::Identity(m, m) - beta * (v * v.transpose());
  return h.rightCols(m - 1);
}

VectorXd scalar_point(double x) {
  VectorXd p(1);
  p(0) = x;
  return p;
}

}  // namespace

double Domain::diameter() const {
  switch (kind) {
    case DomainKind::Interval: return b - a;
    case DomainKind::Circle: return std::numbers::pi;
    case DomainKind::Sphere: return std::numbers::pi;
    case DomainKind::Disk: return 2.0 * radius;
  }
  return 0.0;
}

double intrinsic_distance(const Domain& d, const VectorXd& p, const VectorXd& q) {
  switch (d.kind) {
    case DomainKind::Interval:
    case DomainKind::Disk:
      return (p - q).norm();
    case DomainKind::Circle: {
      double delta = std::fmod(std::abs(p(0) - q(0)), kTwoPi);
      return std::min(delta, kTwoPi - delta);
    }
    case DomainKind::Sphere: {
      const double c = std::clamp(p.dot(q) / (p.norm() * q.norm()), -1.0, 1.0);
      return std::acos(c);
    }
  }
  return 0.0;
}

Jet Embedding::jet(const VectorXd& p, int order) const {
  if (order < 0 || order > 3) throw std::invalid_argument("jet: order must be in 0..3");
  if (order >= 2 && !domain.is_curve())
    throw std::invalid_argument("jet: orders 2,3 are supported only for curve domains");
  return jet_fn(p, order);
}

affine::AffineSubspace tangent_space(const Embedding& e, const VectorXd& p) {
  Jet j = e.jet(p, 1);
  return affine::make_affine(j.value, j.frame);
}

// --- catalog -----------------------------------------------------------

Embedding cubic_curve() {
  Embedding e;
  e.name = "cubic";
  e.domain = {DomainKind::Interval, -1.0, 1.0};
  e.ambient_dim = 3;
  e.jet_fn = [](const VectorXd& p, int order) {
    const double x = p(0);
    Jet j;
    j.value = Eigen::Vector3d(x, x * x, x * x * x);
    if (order >= 1) j.frame = Eigen::Vector3d(1.0, 2.0 * x, 3.0 * x * x);
    if (order >= 2) j.higher.push_back(Eigen::Vector3d(0.0, 2.0, 6.0 * x));
    if (order >= 3) j.higher.push_back(Eigen::Vector3d(0.0, 0.0, 6.0));
    return j;
  };
  return e;
}

Embedding circle_quadratic() {
  Embedding e;
  e.name = "circle-quadratic";
  e.domain = {DomainKind::Circle};
  e.ambient_dim = 4;
  e.jet_fn = [](const VectorXd& p, int order) {
    const double t = p(0);
    const double c = std::cos(t), s = std::sin(t);
    const double c2 = std::cos(2 * t), s2 = std::sin(2 * t);
    Jet j;
    j.value = Eigen::Vector4d(c, s, c2, s2);
    if (order >= 1) j.frame = Eigen::Vector4d(-s, c, -2 * s2, 2 * c2);
    if (order >= 2) j.higher.push_back(Eigen::Vector4d(-c, -s, -4 * c2, -4 * s2));
    if (order >= 3) j.higher.push_back(Eigen::Vector4d(s, -c, 8 * s2, -8 * c2));
    return j;
  };
  return e;
}

Embedding planar_circle_in_r3() {
  Embedding e;
  e.name = "planar-circle";
  e.domain = {DomainKind::Circle};
  e.ambient_dim = 3;
  e.jet_fn = [](const VectorXd& p, int order) {
    const double t = p(0);
    const double c = std::cos(t), s = std::sin(t);
    Jet j;
    j.value = Eigen::Vector3d(c, s, 0.0);
    if (order >= 1) j.frame = Eigen::Vector3d(-s, c, 0.0);
    if (order >= 2) j.higher.push_back(Eigen::Vector3d(-c, -s, 0.0));
    if (order >= 3) j.higher.push_back(Eigen::Vector3d(s, -c, 0.0));
    return j;
  };
  return e;
}

Embedding bilinear_sphere(const bilinear::BilinearMap& b) {
  if (b.dim_left() != b.dim_right())
    throw std::invalid_argument("bilinear_sphere: map must be square (a == b)");
  const int n = b.dim_left() - 1;
  Embedding e;
  e.name = "bilinear-sphere:n=" + std::to_string(n);
  e.domain = {DomainKind::Sphere, 0.0, 0.0, n};
  e.ambient_dim = b.dim_left() + b.dim_out();
  e.jet_fn = [b, n](const VectorXd& p, int order) {
    VectorXd x = p / p.norm();
    Jet j;
    j.value = VectorXd(n + 1 + b.dim_out());
    j.value.head(n + 1) = x;
    j.value.tail(b.dim_out()) = bilinear::evaluate(b, x, x);
    if (order >= 1) {
      // d/dt (c, B(c,c)) along c'(0)=v gives (v, B(x,v)+B(v,x)); the second
      // component is 2B(x,v) when B is symmetric.
      const MatrixXd tangent = householder_complement(x);
      j.frame = MatrixXd(j.value.size(), n);
      for (int col = 0; col < n; ++col) {
        const VectorXd v = tangent.col(col);
        j.frame.col(col).head(n + 1) = v;
        j.frame.col(col).tail(b.dim_out()) =
            bilinear::evaluate(b, x, v) + bilinear::evaluate(b, v, x);
      }
    }
    return j;
  };
  return e;
}

Embedding complex_cubic_disk() {
  Embedding e;
  e.name = "complex-cubic-disk";
  e.domain = {DomainKind::Disk, 0.0, 0.0, 2, 1.0};
  e.ambient_dim = 6;
  e.jet_fn = [](const VectorXd& p, int order) {
    const std::complex<double> z(p(0), p(1));
    const std::complex<double> z2 = z * z, z3 = z2 * z;
    Jet j;
    j.value = VectorXd(6);
    j.value << z.real(), z.imag(), z2.real(), z2.imag(), z3.real(), z3.imag();
    if (order >= 1) {
      const std::complex<double> d1 = 1.0, d2 = 2.0 * z, d3 = 3.0 * z2;
      j.frame = MatrixXd(6, 2);
      // column 1: f'(z); column 2: i f'(z)
      j.frame.col(0) << d1.real(), d1.imag(), d2.real(), d2.imag(), d3.real(), d3.imag();
      const std::complex<double> i(0.0, 1.0);
      const std::complex<double> e1 = i * d1, e2 = i * d2, e3 = i * d3;
      j.frame.col(1) << e1.real(), e1.imag(), e2.real(), e2.imag(), e3.real(), e3.imag();
    }
    return j;
  };
  return e;
}

std::pair<Embedding, Embedding> sphere_pair(int n1, int n2) {
  if (n1 < 1 || n2 < 1) throw std::invalid_argument("sphere_pair: n1, n2 must be >= 1");
  const int ambient = n1 + n2 + 2;
  auto factor_embedding = [ambient](int n, int offset, const std::string& name) {
    Embedding e;
    e.name = name;
    e.domain = {DomainKind::Sphere, 0.0, 0.0, n};
    e.ambient_dim = ambient;
    e.jet_fn = [ambient, n, offset](const VectorXd& p, int order) {
      VectorXd x = p / p.norm();
      Jet j;
      j.value = VectorXd::Zero(ambient);
      j.value.segment(offset, n + 1) = x;
      if (order >= 1) {
        const MatrixXd tangent = householder_complement(x);
        j.frame = MatrixXd::Zero(ambient, n);
        j.frame.block(offset, 0, n + 1, n) = tangent;
      }
      return j;
    };
    return e;
  };
  return {factor_embedding(n1, 0, "sphere-pair-first:n=" + std::to_string(n1)),
          factor_embedding(n2, n1 + 1, "sphere-pair-second:n=" + std::to_string(n2))};
}

Embedding parametric_curve(const MatrixXd& coeffs, CurveBasis basis, int ambient_dim) {
  if (coeffs.rows() != ambient_dim)
    throw std::invalid_argument("parametric_curve: coefficient rows must equal ambient_dim");
  Embedding e;
  e.ambient_dim = ambient_dim;
  if (basis == CurveBasis::Polynomial) {
    e.name = "parametric-poly";
    e.domain = {DomainKind::Interval, -1.0, 1.0};
    e.jet_fn = [coeffs, ambient_dim](const VectorXd& p, int order) {
      const double x = p(0);
      const int deg = static_cast<int>(coeffs.cols()) - 1;
      Jet j;
      j.value = VectorXd::Zero(ambient_dim);
      VectorXd d1 = VectorXd::Zero(ambient_dim), d2 = VectorXd::Zero(ambient_dim),
               d3 = VectorXd::Zero(ambient_dim);
      double xk = 1.0;
      for (int k = 0; k <= deg; ++k) {
        j.value += coeffs.col(k) * xk;
        xk *= x;
      }
      xk = 1.0;
      for (int k = 1; k <= deg; ++k) {
        d1 += coeffs.col(k) * (k * xk);
        xk *= x;
      }
      xk = 1.0;
      for (int k = 2; k <= deg; ++k) {
        d2 += coeffs.col(k) * (k * (k - 1) * xk);
        xk *= x;
      }
      xk = 1.0;
      for (int k = 3; k <= deg; ++k) {
        d3 += coeffs.col(k) * (k * (k - 1) * (k - 2) * xk);
        xk *= x;
      }
      if (order >= 1) j.frame = d1;
      if (order >= 2) j.higher.push_back(d2);
      if (order >= 3) j.higher.push_back(d3);
      return j;
    };
  } else {
    if (coeffs.cols() % 2 != 1)
      throw std::invalid_argument("parametric_curve: fourier needs 2*harmonics+1 columns");
    e.name = "parametric-fourier";
    e.domain = {DomainKind::Circle};
    e.jet_fn = [coeffs, ambient_dim](const VectorXd& p, int order) {
      const double t = p(0);
      const int harmonics = (static_cast<int>(coeffs.cols()) - 1) / 2;
      Jet j;
      j.value = coeffs.col(0);
      VectorXd d1 = VectorXd::Zero(ambient_dim), d2 = VectorXd::Zero(ambient_dim),
               d3 = VectorXd::Zero(ambient_dim);
      for (int h = 1; h <= harmonics; ++h) {
        const double c = std::cos(h * t), s = std::sin(h * t);
        const VectorXd& a = coeffs.col(2 * h - 1);
        const VectorXd& b = coeffs.col(2 * h);
        j.value += a * c + b * s;
        d1 += h * (-a * s + b * c);
        d2 += static_cast<double>(h) * h * (-a * c - b * s);
        d3 += static_cast<double>(h) * h * h * (a * s - b * c);
      }
      if (order >= 1) j.frame = d1;
      if (order >= 2) j.higher.push_back(d2);
      if (order >= 3) j.higher.push_back(d3);
      return j;
    };
  }
  return e;
}

Embedding catalog(const std::string& name) {
  if (name == "cubic") return cubic_curve();
  if (name == "circle-quadratic") return circle_quadratic();
  if (name == "complex-cubic-disk") return complex_cubic_disk();
  if (name == "planar-circle") return planar_circle_in_r3();
  if (name == "quaternion-sphere") return bilinear_sphere(bilinear::quaternion_map());
  const std::string prefix = "bilinear-sphere:n=";
  if (name.rfind(prefix, 0) == 0) {
    const int n = std::stoi(name.substr(prefix.size()));
    return bilinear_sphere(bilinear::convolution_map(n));
  }
  throw std::invalid_argument("catalog: unknown embedding '" + name + "'");
}

// --- domain sampling ---------------------------------------------------

std::vector<VectorXd> domain_grid(const Domain& d, int res) {
  if (res < 2) throw std::invalid_argument("domain_grid: resolution must be >= 2");
  std::vector<VectorXd> pts;
  switch (d.kind) {
    case DomainKind::Interval: {
      pts.reserve(res);
      for (int i = 0; i < res; ++i)
        pts.push_back(scalar_point(d.a + (d.b - d.a) * i / (res - 1.0)));
      break;
    }
    case DomainKind::Circle: {
      pts.reserve(res);
      for (int i = 0; i < res; ++i) pts.push_back(scalar_point(kTwoPi * i / res));
      break;
    }
    case DomainKind::Sphere: {
      if (d.dim == 1) {
        pts.reserve(res);
        for (int i = 0; i < res; ++i) {
          const double t = kTwoPi * i / res;
          pts.push_back(Eigen::Vector2d(std::cos(t), std::sin(t)));
        }
      } else if (d.dim == 2) {
        const int total = res * res;
        pts.reserve(total);
        const double ga = std::numbers::pi * (3.0 - std::sqrt(5.0));
        for (int i = 0; i < total; ++i) {
          const double z = 1.0 - (2.0 * i + 1.0) / total;
          const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
          const double phi = ga * i;
          pts.push_back(Eigen::Vector3d(r * std::cos(phi), r * std::sin(phi), z));
        }
      } else {
        // quasi-random unit vectors, fixed internal seed
        const int total = res * res;
        pts.reserve(total);
        CounterRng rng(0x5ee0u, static_cast<std::uint64_t>(d.dim));
        for (int i = 0; i < total; ++i) {
          VectorXd x(d.dim + 1);
          for (int k = 0; k <= d.dim; ++k) x(k) = rng.next_normal();
          pts.push_back(x / x.norm());
        }
      }
      break;
    }
    case DomainKind::Disk: {
      if (d.dim != 2) throw std::invalid_argument("domain_grid: only 2-disks supported");
      pts.reserve(static_cast<std::size_t>(res) * res);
      for (int i = 0; i < res; ++i) {
        const double r = d.radius * std::sqrt((i + 0.5) / res);  // uniform area
        for (int jj = 0; jj < res; ++jj) {
          const double t = kTwoPi * jj / res + (i % 2) * std::numbers::pi / res;
          pts.push_back(Eigen::Vector2d(r * std::cos(t), r * std::sin(t)));
        }
      }
      break;
    }
  }
  return pts;
}

VectorXd random_domain_point(const Domain& d, CounterRng& rng) {
  switch (d.kind) {
    case DomainKind::Interval:
      return scalar_point(d.a + (d.b - d.a) * rng.next_double());
    case DomainKind::Circle:
      return scalar_point(kTwoPi * rng.next_double());
    case DomainKind::Sphere: {
      VectorXd x(d.dim + 1);
      do {
        for (int k = 0; k <= d.dim; ++k) x(k) = rng.next_normal();
      } while (x.norm() < 1e-12);
      return x / x.norm();
    }
    case DomainKind::Disk: {
      VectorXd x(d.dim);
      do {
        for (int k = 0; k < d.dim; ++k) x(k) = rng.next_normal();
      } while (x.norm() < 1e-12);
      const double r =
          d.radius * std::pow(rng.next_double(), 1.0 / d.dim);
      return x * (r / x.norm());
    }
  }
  throw std::logic_error("random_domain_point: unreachable");
}

}  // namespace skewtk
