#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "skewtk/embeddings.hpp"
#include "skewtk/linalg.hpp"

using namespace skewtk;

namespace {
VectorXd scalar(double x) {
  VectorXd v(1);
  v(0) = x;
  return v;
}
}  // namespace

TEST_CASE("cubic curve values and jets") {
  auto e = cubic_curve();
  CHECK(e.ambient_dim == 3);
  CHECK((e.value(scalar(2.0)) - Eigen::Vector3d(2, 4, 8)).norm() < 1e-14);
  auto j = e.jet(scalar(1.0), 3);
  CHECK((j.frame.col(0) - Eigen::Vector3d(1, 2, 3)).norm() < 1e-14);
  REQUIRE(j.higher.size() == 2);
  CHECK((j.higher[0] - Eigen::Vector3d(0, 2, 6)).norm() < 1e-14);
  CHECK((j.higher[1] - Eigen::Vector3d(0, 0, 6)).norm() < 1e-14);
}

TEST_CASE("circle quadratic values and tangent") {
  auto e = circle_quadratic();
  CHECK(e.ambient_dim == 4);
  CHECK((e.value(scalar(0.0)) - Eigen::Vector4d(1, 0, 1, 0)).norm() < 1e-14);
  auto j = e.jet(scalar(0.0), 1);
  CHECK((j.frame.col(0) - Eigen::Vector4d(0, 1, 0, 2)).norm() < 1e-14);
}

TEST_CASE("complex cubic disk values and frame") {
  auto e = complex_cubic_disk();
  CHECK(e.ambient_dim == 6);
  // z = 1: (1,0, 1,0, 1,0)
  VectorXd one(2);
  one << 1, 0;
  VectorXd v = e.value(one);
  CHECK((v - (VectorXd(6) << 1, 0, 1, 0, 1, 0).finished()).norm() < 1e-14);
  // frame at z=1: f'(1) = (1, 2, 3) and i f'(1)
  auto j = e.jet(one, 1);
  REQUIRE(j.frame.cols() == 2);
  CHECK((j.frame.col(0) - (VectorXd(6) << 1, 0, 2, 0, 3, 0).finished()).norm() < 1e-12);
  CHECK((j.frame.col(1) - (VectorXd(6) << 0, 1, 0, 2, 0, 3).finished()).norm() < 1e-12);
}

TEST_CASE("bilinear sphere: value and the frame on a worked example") {
  auto e = bilinear_sphere(bilinear::convolution_map(1));
  CHECK(e.ambient_dim == 5);
  VectorXd x(2);
  x << 1, 0;
  VectorXd v = e.value(x);
  CHECK((v - (VectorXd(5) << 1, 0, 1, 0, 0).finished()).norm() < 1e-14);
  auto j = e.jet(x, 1);
  REQUIRE(j.frame.cols() == 1);
  // tangent dir v=(0,1): (v, 2B(x,v)) = (0,1, 0,2,0) up to sign
  VectorXd expect(5);
  expect << 0, 1, 0, 2, 0;
  const double s = j.frame.col(0).dot(expect) > 0 ? 1.0 : -1.0;
  CHECK((s * j.frame.col(0) - expect).norm() < 1e-12);
}

TEST_CASE("sphere embeddings map to well-defined points") {
  auto e = bilinear_sphere(bilinear::convolution_map(2));
  CounterRng rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    VectorXd x = random_domain_point(e.domain, rng);
    CHECK(x.norm() == doctest::Approx(1.0).epsilon(1e-12));
    // first block of the value is the sphere point itself
    CHECK((e.value(x).head(x.size()) - x).norm() < 1e-14);
  }
}

TEST_CASE("frames agree with central finite differences") {
  std::vector<Embedding> es = {cubic_curve(), circle_quadratic(), complex_cubic_disk(),
                               bilinear_sphere(bilinear::convolution_map(2)),
                               planar_circle_in_r3(), catalog("quaternion-sphere")};
  CounterRng rng(31);
  for (const auto& e : es) {
    for (int trial = 0; trial < 20; ++trial) {
      VectorXd p = random_domain_point(e.domain, rng);
      auto j = e.jet(p, 1);
      // compare span projections: FD of columns of an intrinsic chart can
      // differ from the stored frame by a rotation, so project instead
      for (int c = 0; c < j.frame.cols(); ++c) {
        VectorXd dir;
        if (e.domain.kind == DomainKind::Sphere) {
          // pick the c-th frame's own preimage direction: first block
          dir = j.frame.col(c).head(p.size());
          dir -= dir.dot(p) * p;
          if (dir.norm() < 1e-8) continue;
          dir /= dir.norm();
        } else {
          dir = VectorXd::Zero(e.domain_dim() > 1 ? e.domain_dim() : 1);
          dir(c) = 1.0;
        }
        VectorXd fd = oracles::central_difference(e, p, dir, 1e-5);
        // fd must lie in the span of the frame
        VectorXd resid = fd;
        Eigen::MatrixXd q = linalg::orthonormal_basis(
            [&] {
              std::vector<VectorXd> cols;
              for (int k = 0; k < j.frame.cols(); ++k) cols.push_back(j.frame.col(k));
              return cols;
            }(),
            1e-10);
        resid -= q * (q.transpose() * fd);
        CHECK(resid.norm() < 1e-4 * (1.0 + fd.norm()));
      }
    }
  }
}

TEST_CASE("curve higher jets agree with finite differences") {
  std::vector<Embedding> es = {cubic_curve(), circle_quadratic(), planar_circle_in_r3()};
  CounterRng rng(37);
  for (const auto& e : es) {
    for (int trial = 0; trial < 10; ++trial) {
      VectorXd p = random_domain_point(e.domain, rng);
      auto j = e.jet(p, 3);
      const double h = 1e-4;
      VectorXd d1 =
          (e.value(scalar(p(0) + h)) - e.value(scalar(p(0) - h))) / (2 * h);
      VectorXd d2 = (e.value(scalar(p(0) + h)) - 2 * e.value(p) +
                     e.value(scalar(p(0) - h))) /
                    (h * h);
      // curve frames are the raw first derivative
      CHECK((j.frame.col(0) - d1).norm() < 1e-5 * (1.0 + d1.norm()));
      REQUIRE(j.higher.size() == 2);
      CHECK((j.higher[0] - d2).norm() < 1e-4 * (1.0 + d2.norm()));
    }
  }
}

TEST_CASE("frames are immersion-quality everywhere sampled") {
  std::vector<Embedding> es = {cubic_curve(), circle_quadratic(), complex_cubic_disk(),
                               bilinear_sphere(bilinear::convolution_map(3)),
                               catalog("quaternion-sphere")};
  CounterRng rng(41);
  for (const auto& e : es) {
    for (int trial = 0; trial < 25; ++trial) {
      VectorXd p = random_domain_point(e.domain, rng);
      auto j = e.jet(p, 1);
      CHECK(j.frame.cols() == e.domain_dim());
      CHECK(linalg::smallest_singular_value(j.frame) > 1e-6);
    }
  }
}

TEST_CASE("jet order validation") {
  auto sphere = bilinear_sphere(bilinear::convolution_map(2));
  VectorXd p(3);
  p << 1, 0, 0;
  CHECK_THROWS_AS(sphere.jet(p, 2), std::invalid_argument);
  CHECK_THROWS_AS(cubic_curve().jet(scalar(0.0), 4), std::invalid_argument);
}

TEST_CASE("parametric curves reproduce the catalog constructions") {
  // cubic as a polynomial curve
  MatrixXd c = MatrixXd::Zero(3, 4);
  c(0, 1) = 1;
  c(1, 2) = 1;
  c(2, 3) = 1;
  auto pc = parametric_curve(c, CurveBasis::Polynomial, 3);
  auto e = cubic_curve();
  for (double x : {-0.7, 0.0, 0.5, 1.0}) {
    CHECK((pc.value(scalar(x)) - e.value(scalar(x))).norm() < 1e-13);
    CHECK((pc.jet(scalar(x), 1).frame - e.jet(scalar(x), 1).frame).norm() < 1e-12);
  }

  // circle quadratic as a Fourier curve: [a0 a1 b1 a2 b2]
  MatrixXd f = MatrixXd::Zero(4, 5);
  f(0, 1) = 1;  // cos
  f(1, 2) = 1;  // sin
  f(2, 3) = 1;  // cos2
  f(3, 4) = 1;  // sin2
  auto fc = parametric_curve(f, CurveBasis::Fourier, 4);
  auto cq = circle_quadratic();
  for (double t : {0.0, 0.9, 2.5, 5.1}) {
    CHECK((fc.value(scalar(t)) - cq.value(scalar(t))).norm() < 1e-13);
    CHECK((fc.jet(scalar(t), 1).frame - cq.jet(scalar(t), 1).frame).norm() < 1e-12);
  }
}

TEST_CASE("catalog lookup") {
  CHECK(catalog("cubic").ambient_dim == 3);
  CHECK(catalog("circle-quadratic").ambient_dim == 4);
  CHECK(catalog("complex-cubic-disk").ambient_dim == 6);
  CHECK(catalog("planar-circle").ambient_dim == 3);
  CHECK(catalog("quaternion-sphere").ambient_dim == 8);
  CHECK(catalog("bilinear-sphere:n=2").ambient_dim == 8);
  CHECK_THROWS_AS(catalog("nope"), std::invalid_argument);
}

TEST_CASE("domain grids") {
  Domain interval{DomainKind::Interval, -1, 1, 1, 1};
  auto g = domain_grid(interval, 5);
  REQUIRE(g.size() == 5);
  CHECK(g.front()(0) == doctest::Approx(-1.0));
  CHECK(g.back()(0) == doctest::Approx(1.0));

  Domain circle{DomainKind::Circle, 0, 0, 1, 1};
  auto gc = domain_grid(circle, 8);
  REQUIRE(gc.size() == 8);

  Domain s2{DomainKind::Sphere, 0, 0, 2, 1};
  auto gs = domain_grid(s2, 16);
  CHECK(gs.size() == 256);
  for (const auto& p : gs) CHECK(p.norm() == doctest::Approx(1.0).epsilon(1e-12));

  Domain disk{DomainKind::Disk, 0, 0, 2, 1.0};
  auto gd = domain_grid(disk, 8);
  CHECK(gd.size() == 64);
  for (const auto& p : gd) CHECK(p.norm() <= 1.0 + 1e-12);
}

TEST_CASE("intrinsic distance") {
  Domain circle{DomainKind::Circle, 0, 0, 1, 1};
  CHECK(intrinsic_distance(circle, scalar(0.1), scalar(0.1 + 2 * M_PI)) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(intrinsic_distance(circle, scalar(0.0), scalar(M_PI)) == doctest::Approx(M_PI));
  Domain s2{DomainKind::Sphere, 0, 0, 2, 1};
  VectorXd e1(3), e2(3);
  e1 << 1, 0, 0;
  e2 << 0, 1, 0;
  CHECK(intrinsic_distance(s2, e1, e2) == doctest::Approx(M_PI / 2));
}
