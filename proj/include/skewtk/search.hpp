#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

#include "skewtk/embeddings.hpp"
#include "skewtk/verify.hpp"

namespace skewtk::search {

struct Family {
  DomainKind domain = DomainKind::Circle;  // Circle or Interval
  CurveBasis basis = CurveBasis::Fourier;
  int degree = 3;  // polynomial degree, or harmonic count for fourier
  int ambient = 5;

  int coeff_cols() const {
    return basis == CurveBasis::Polynomial ? degree + 1 : 2 * degree + 1;
  }
  Embedding build(const MatrixXd& coeffs) const {
    return parametric_curve(coeffs, basis, ambient);
  }
};

struct SearchConfig {
  Family family;
  // objective plan
  int objective_grid = 64;
  double delta = 1e-3;
  double beta = 200.0;  // softmin temperature; doubles every quarter of the budget
  // optimizer budget
  int iterations = 10000;
  int population = 4;
  std::uint64_t seed = 0;
  double target_margin = 1e-3;
  MatrixXd init_coeffs;  // empty: seeded random init
  // plan used to recompute the true (unsmoothed) minimum margin
  verify::SamplingPlan verify_plan{256, 0, 1e-3, 0};
};

enum class Status { TargetReached, BudgetExhausted, Stalled };
std::string status_name(Status s);

struct TracePoint {
  int iteration;
  double objective;  // best-so-far, nondecreasing
};

struct SearchResult {
  MatrixXd best_coeffs;
  double best_objective = 0.0;
  double true_min_margin = 0.0;
  std::vector<TracePoint> trace;
  Status status = Status::BudgetExhausted;
};

inline constexpr double kImmersionPenalty = -1.0;
inline constexpr double kStallImprovement = 1e-10;
// window improvement below this fraction of the objective scale counts as a stall
inline constexpr double kStallRelative = 1e-3;

// Soft minimum -(1/beta) log sum exp(-beta * margin) of the skew margins over
// the admissible grid pairs. Non-immersed candidates get the flat penalty -1.
double objective(const MatrixXd& coeffs, const Family& family, int grid, double delta,
                 double beta);

// Stochastic maximin ascent: population perturbations with a geometrically
// decaying step scale, accept-if-better plus annealed acceptance.
// Deterministic for a fixed config.
SearchResult run_search(const SearchConfig& cfg);

// Fraction of `trials` random coefficient draws (standard normal) whose
// sampled verification is certified.
double genericity_experiment(int trials, const Family& family, std::uint64_t seed,
                             const verify::SamplingPlan& plan,
                             double tol = verify::kDefaultRefuteTol);

nlohmann::json result_to_json(const SearchResult& r, const SearchConfig& cfg);

}  // namespace skewtk::search
