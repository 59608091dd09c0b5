#include "skewtk/bilinear.hpp"

#include <nlohmann/json.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "skewtk/rng.hpp"

namespace skewtk::bilinear {

VectorXd evaluate(const BilinearMap& b, const VectorXd& x, const VectorXd& y) {
  if (x.size() != b.dim_left() || y.size() != b.dim_right())
    throw std::invalid_argument("bilinear::evaluate: dimension mismatch");
  VectorXd out = VectorXd::Zero(b.dim_out());
  for (int k = 0; k < b.dim_out(); ++k) {
    double acc = 0.0;
    for (int i = 0; i < b.dim_left(); ++i) {
      const double xi = x(i);
      if (xi == 0.0) continue;
      for (int j = 0; j < b.dim_right(); ++j) acc += b.at(k, i, j) * xi * y(j);
    }
    out(k) = acc;
  }
  return out;
}

BilinearMap convolution_map(int n) {
  if (n < 0) throw std::invalid_argument("convolution_map: n must be >= 0");
  BilinearMap b(n + 1, n + 1, 2 * n + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) b.at(i + j, i, j) = 1.0;
  return b;
}

BilinearMap complex_convolution_map(int l) {
  if (l < 1) throw std::invalid_argument("complex_convolution_map: l must be >= 1");
  // z_i w_j contributes to complex output i+j:
  //   Re: x_{2i} y_{2j} - x_{2i+1} y_{2j+1}
  //   Im: x_{2i} y_{2j+1} + x_{2i+1} y_{2j}
  BilinearMap b(2 * l, 2 * l, 4 * l - 2);
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < l; ++j) {
      const int k = i + j;
      b.at(2 * k, 2 * i, 2 * j) += 1.0;
      b.at(2 * k, 2 * i + 1, 2 * j + 1) += -1.0;
      b.at(2 * k + 1, 2 * i, 2 * j + 1) += 1.0;
      b.at(2 * k + 1, 2 * i + 1, 2 * j) += 1.0;
    }
  }
  return b;
}

BilinearMap quaternion_map() {
  BilinearMap b(4, 4, 4);
  // basis order (1, i, j, k); table[i][j] = (sign, basis index) of e_i * e_j
  static const int idx[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sgn[4][4] = {{+1, +1, +1, +1},
                                {+1, -1, +1, -1},
                                {+1, -1, -1, +1},
                                {+1, +1, -1, -1}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) b.at(idx[i][j], i, j) = sgn[i][j];
  return b;
}

SymmetryResult is_symmetric(const BilinearMap& b, double tol) {
  if (b.dim_left() != b.dim_right())
    throw std::invalid_argument("is_symmetric: map is not square (a != b)");
  for (int k = 0; k < b.dim_out(); ++k) {
    for (int i = 0; i < b.dim_left(); ++i) {
      for (int j = 0; j < i; ++j) {
        if (std::abs(b.at(k, i, j) - b.at(k, j, i)) > tol) {
          VectorXd x = VectorXd::Zero(b.dim_left());
          VectorXd y = VectorXd::Zero(b.dim_right());
          x(i) = 1.0;
          y(j) = 1.0;
          return {false, std::make_pair(x, y)};
        }
      }
    }
  }
  return {true, std::nullopt};
}

double nonsingularity_margin(const BilinearMap& b, int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("nonsingularity_margin: samples must be >= 1");
  CounterRng rng(seed);
  double best = std::numeric_limits<double>::infinity();
  VectorXd x(b.dim_left()), y(b.dim_right());
  for (int s = 0; s < samples; ++s) {
    for (int i = 0; i < x.size(); ++i) x(i) = rng.next_normal();
    for (int i = 0; i < y.size(); ++i) y(i) = rng.next_normal();
    const double nx = x.norm(), ny = y.norm();
    if (nx < 1e-12 || ny < 1e-12) continue;
    const double v = evaluate(b, x / nx, y / ny).norm();
    if (v < best) best = v;
  }
  return best;
}

bool certify_convolution_nonsingular(const BilinearMap& b) {
  if (b.dim_left() != b.dim_right() || b.dim_out() != 2 * b.dim_left() - 1)
    throw std::invalid_argument("certify_convolution_nonsingular: wrong shape");
  const int n = b.dim_left() - 1;
  for (int k = 0; k < b.dim_out(); ++k)
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j) {
        const double want = (i + j == k) ? 1.0 : 0.0;
        if (b.at(k, i, j) != want)
          throw std::invalid_argument(
              "certify_convolution_nonsingular: tensor is not the convolution tensor");
      }
  return true;
}

nlohmann::json to_json(const BilinearMap& b) {
  return nlohmann::json{{"a", b.dim_left()},
                        {"b", b.dim_right()},
                        {"c", b.dim_out()},
                        {"coeffs", b.coeffs()}};
}

BilinearMap bilinear_from_json(const nlohmann::json& j) {
  BilinearMap b(j.at("a").get<int>(), j.at("b").get<int>(), j.at("c").get<int>());
  const auto coeffs = j.at("coeffs").get<std::vector<double>>();
  if (coeffs.size() != b.coeffs().size())
    throw std::invalid_argument("bilinear_from_json: coeffs length mismatch");
  for (int k = 0; k < b.dim_out(); ++k)
    for (int i = 0; i < b.dim_left(); ++i)
      for (int j2 = 0; j2 < b.dim_right(); ++j2)
        b.at(k, i, j2) =
            coeffs[(static_cast<std::size_t>(k) * b.dim_left() + i) * b.dim_right() + j2];
  return b;
}

}  // namespace skewtk::bilinear
