#include <doctest.h>

#include "oracles.hpp"
#include "skewtk/affine.hpp"
#include "skewtk/embeddings.hpp"
#include "skewtk/rng.hpp"

using namespace skewtk;
using affine::AffineSubspace;
using affine::make_affine;

namespace {

AffineSubspace line(const VectorXd& p, const VectorXd& dir) {
  MatrixXd d(p.size(), 1);
  d.col(0) = dir;
  return make_affine(p, d);
}

}  // namespace

TEST_CASE("lift of a line through (1,2) with direction (1,0)") {
  auto l = lift(line(Eigen::Vector2d(1, 2), Eigen::Vector2d(1, 0)));
  CHECK(l.ambient_dim() == 3);
  CHECK(l.dim() == 2);
  // the span must contain (1,0,0) and (1,2,1)
  const VectorXd a = Eigen::Vector3d(1, 0, 0);
  const VectorXd b = Eigen::Vector3d(1, 2, 1);
  CHECK((l.basis * (l.basis.transpose() * a) - a).norm() < 1e-12);
  CHECK((l.basis * (l.basis.transpose() * b) - b).norm() < 1e-12);
}

TEST_CASE("lift of a point is the vertical line") {
  AffineSubspace pt;
  pt.base_point = Eigen::Vector3d(0, 0, 0);
  pt.directions = MatrixXd(3, 0);
  auto l = lift(pt);
  CHECK(l.dim() == 1);
  CHECK(std::abs(std::abs(l.basis(3, 0)) - 1.0) < 1e-12);
}

TEST_CASE("lift of the cubic tangent line at x=1") {
  auto l = lift(line(Eigen::Vector3d(1, 1, 1), Eigen::Vector3d(1, 2, 3)));
  const VectorXd d = Eigen::Vector4d(1, 2, 3, 0) / std::sqrt(14.0);
  const VectorXd p = Eigen::Vector4d(1, 1, 1, 1);
  CHECK((l.basis * (l.basis.transpose() * d) - d).norm() < 1e-12);
  CHECK((l.basis * (l.basis.transpose() * p) - p).norm() < 1e-12);
}

TEST_CASE("cubic tangent lines at x=0 and x=1 are skew") {
  auto v = line(Eigen::Vector3d(0, 0, 0), Eigen::Vector3d(1, 0, 0));
  auto w = line(Eigen::Vector3d(1, 1, 1), Eigen::Vector3d(1, 2, 3));
  auto res = affine::are_skew(v, w);
  CHECK(res.skew);
  CHECK(res.margin > 1e-3);
}

TEST_CASE("a line is not skew to itself") {
  auto v = line(Eigen::Vector3d(0, 0, 0), Eigen::Vector3d(1, 0, 0));
  auto res = affine::are_skew(v, v);
  CHECK_FALSE(res.skew);
  CHECK(res.margin < 1e-12);
}

TEST_CASE("parallel lines are not skew") {
  auto v = line(Eigen::Vector3d(0, 0, 0), Eigen::Vector3d(1, 0, 0));
  auto w = line(Eigen::Vector3d(0, 0, 1), Eigen::Vector3d(1, 0, 0));
  auto res = affine::are_skew(v, w);
  CHECK_FALSE(res.skew);
  CHECK(res.margin < 1e-12);
}

TEST_CASE("dimension obstruction: no skew lines in the plane") {
  auto v = line(Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0));
  auto w = line(Eigen::Vector2d(0, 1), Eigen::Vector2d(0, 1));
  auto res = affine::are_skew(v, w);
  CHECK_FALSE(res.skew);
  CHECK(res.margin == 0.0);
}

TEST_CASE("skew_margin_pair on catalog curves") {
  auto cubic = cubic_curve();
  VectorXd s(1), t(1);
  s(0) = 0.0;
  t(0) = 1.0;
  CHECK(affine::skew_margin_pair(cubic, s, cubic, t) > 1e-3);
  CHECK(affine::skew_margin_pair(cubic, s, cubic, s) < 1e-12);

  auto planar = planar_circle_in_r3();
  s(0) = 0.3;
  t(0) = 0.3 + 3.14159265358979323846;
  CHECK(affine::skew_margin_pair(planar, s, planar, t) < 1e-10);
}

namespace {

struct RandomAffinePair {
  AffineSubspace v, w;
  oracles::IntAffine iv, iw;
};

RandomAffinePair random_integer_pair(CounterRng& rng) {
  const int ambient = 3 + static_cast<int>(rng.next_u64() % 4);  // 3..6
  auto draw = [&](int dim) {
    AffineSubspace a;
    oracles::IntAffine ia;
    VectorXd base(ambient);
    for (int i = 0; i < ambient; ++i) {
      const int c = static_cast<int>(rng.next_u64() % 9) - 4;
      base(i) = c;
      ia.base.push_back(c);
    }
    MatrixXd dirs(ambient, dim);
    for (int j = 0; j < dim; ++j) {
      std::vector<oracles::Int> row;
      for (int i = 0; i < ambient; ++i) {
        const int c = static_cast<int>(rng.next_u64() % 9) - 4;
        dirs(i, j) = c;
        row.push_back(c);
      }
      ia.directions.push_back(row);
    }
    a = make_affine(base, dirs);
    return std::make_pair(a, ia);
  };
  const int d1 = 1 + static_cast<int>(rng.next_u64() % 2);
  const int d2 = 1 + static_cast<int>(rng.next_u64() % 2);
  auto [v, iv] = draw(d1);
  auto [w, iw] = draw(d2);
  return {v, w, iv, iw};
}

}  // namespace

TEST_CASE("are_skew agrees with the exact integer oracle") {
  CounterRng rng(42);
  int skew_count = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    auto pair = random_integer_pair(rng);
    // orthonormalization can drop dimensions for dependent integer columns;
    // only compare when the numeric subspace keeps the drawn dimension
    if (pair.v.dim() != static_cast<int>(pair.iv.directions.size()) ||
        pair.w.dim() != static_cast<int>(pair.iw.directions.size()))
      continue;
    const bool expect = oracles::exact_skew(pair.iv, pair.iw);
    auto res = affine::are_skew(pair.v, pair.w);
    CHECK(res.skew == expect);
    if (expect) ++skew_count;
  }
  CHECK(skew_count > 100);  // the comparison must be non-vacuous both ways
}

TEST_CASE("skew verdict and margin are symmetric, margin in [0,1]") {
  CounterRng rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    auto pair = random_integer_pair(rng);
    auto ab = affine::are_skew(pair.v, pair.w);
    auto ba = affine::are_skew(pair.w, pair.v);
    CHECK(ab.skew == ba.skew);
    CHECK(ab.margin == doctest::Approx(ba.margin).epsilon(1e-9));
    CHECK(ab.margin >= 0.0);
    CHECK(ab.margin <= 1.0 + 1e-12);
  }
}

TEST_CASE("skew verdict is invariant under well-conditioned affine maps") {
  CounterRng rng(44);
  int checked = 0;
  for (int trial = 0; trial < 1000 && checked < 400; ++trial) {
    auto pair = random_integer_pair(rng);
    const int ambient = pair.v.ambient_dim();
    MatrixXd a(ambient, ambient);
    VectorXd shift(ambient);
    for (int i = 0; i < ambient; ++i) {
      shift(i) = rng.next_normal();
      for (int j = 0; j < ambient; ++j) a(i, j) = rng.next_normal();
    }
    Eigen::JacobiSVD<MatrixXd> svd(a);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) < 1e-12 || sv(0) / sv(sv.size() - 1) > 100.0) continue;

    auto base = affine::are_skew(pair.v, pair.w);
    if (base.margin < 1e-6 && base.skew) continue;  // stay clear of the decision boundary
    auto tv = make_affine(a * pair.v.base_point + shift, a * pair.v.directions);
    auto tw = make_affine(a * pair.w.base_point + shift, a * pair.w.directions);
    auto mapped = affine::are_skew(tv, tw);
    CHECK(mapped.skew == base.skew);
    ++checked;
  }
  CHECK(checked >= 400);
}
