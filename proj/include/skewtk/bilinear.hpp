#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace skewtk::bilinear {

using Eigen::VectorXd;

// Bilinear map R^a x R^b -> R^c stored as a dense coefficient tensor,
// entry (k,i,j) = coefficient of x_i * y_j in output coordinate k.
class BilinearMap {
 public:
  BilinearMap(int a, int b, int c)
      : a_(a), b_(b), c_(c), coeffs_(static_cast<std::size_t>(a) * b * c, 0.0) {}

  int dim_left() const { return a_; }
  int dim_right() const { return b_; }
  int dim_out() const { return c_; }

  double& at(int k, int i, int j) {
    return coeffs_[(static_cast<std::size_t>(k) * a_ + i) * b_ + j];
  }
  double at(int k, int i, int j) const {
    return coeffs_[(static_cast<std::size_t>(k) * a_ + i) * b_ + j];
  }
  const std::vector<double>& coeffs() const { return coeffs_; }

 private:
  int a_, b_, c_;
  std::vector<double> coeffs_;  // row-major (k, i, j)
};

VectorXd evaluate(const BilinearMap& b, const VectorXd& x, const VectorXd& y);

// Polynomial-coefficient multiplication R^{n+1} x R^{n+1} -> R^{2n+1},
// B(x,y)_k = sum_{i+j=k} x_i y_j. Symmetric and nonsingular.
BilinearMap convolution_map(int n);

// Real form of complex convolution on C^l, C^l x C^l -> C^{2l-1}, with the
// identification x = (Re z1, Im z1, ..., Re zl, Im zl).
BilinearMap complex_convolution_map(int l);

// Quaternion multiplication R^4 x R^4 -> R^4. Nonsingular, not symmetric.
BilinearMap quaternion_map();

struct SymmetryResult {
  bool symmetric;
  // witness with B(x,y) != B(y,x) when not symmetric
  std::optional<std::pair<VectorXd, VectorXd>> witness;
};

SymmetryResult is_symmetric(const BilinearMap& b, double tol = 0.0);

// min ||B(x,y)|| over `samples` seeded unit-vector pairs. Evidence only:
// near 0 suggests singularity, a positive value proves nothing.
double nonsingularity_margin(const BilinearMap& b, int samples, std::uint64_t seed);

// Exact certificate for the convolution family: verifies the coefficient
// tensor equals the convolution tensor entry for entry, then returns true
// (a product of nonzero real polynomials is nonzero). Throws
// std::invalid_argument if the tensor is not the convolution tensor.
bool certify_convolution_nonsingular(const BilinearMap& b);
inline bool certify_convolution_nonsingular(int n) {
  return certify_convolution_nonsingular(convolution_map(n));
}

nlohmann::json to_json(const BilinearMap& b);
BilinearMap bilinear_from_json(const nlohmann::json& j);

}  // namespace skewtk::bilinear
