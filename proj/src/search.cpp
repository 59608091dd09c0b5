#include "skewtk/search.hpp"

#include <nlohmann/json.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "skewtk/affine.hpp"

namespace skewtk::search {

namespace {

MatrixXd random_coeffs(const Family& fam, std::uint64_t seed, std::uint64_t stream) {
  CounterRng rng(seed, stream);
  MatrixXd c(fam.ambient, fam.coeff_cols());
  for (Eigen::Index i = 0; i < c.rows(); ++i)
    for (Eigen::Index j = 0; j < c.cols(); ++j) c(i, j) = rng.next_normal();
  return c;
}

}  // namespace

std::string status_name(Status s) {
  switch (s) {
    case Status::TargetReached: return "target-reached";
    case Status::BudgetExhausted: return "budget-exhausted";
    case Status::Stalled: return "stalled";
  }
  return "?";
}

double objective(const MatrixXd& coeffs, const Family& family, int grid, double delta,
                 double beta) {
  if (beta <= 0) throw std::invalid_argument("objective: beta must be positive");
  Embedding e = family.build(coeffs);
  const auto pts = domain_grid(e.domain, grid);

  std::vector<affine::LiftedSubspace> lifts;
  lifts.reserve(pts.size());
  for (const auto& p : pts) {
    Jet j = e.jet(p, 1);
    if (j.frame.col(0).norm() < 1e-6) return kImmersionPenalty;
    lifts.push_back(affine::lift(affine::make_affine(j.value, j.frame)));
  }

  double min_m = std::numeric_limits<double>::infinity();
  std::vector<double> margins;
  margins.reserve(pts.size() * pts.size() / 2);
  for (std::size_t a = 0; a < pts.size(); ++a) {
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      if (intrinsic_distance(e.domain, pts[a], pts[b]) < delta) continue;
      const double m = affine::lifted_margin_fast(lifts[a], lifts[b]);
      margins.push_back(m);
      min_m = std::min(min_m, m);
    }
  }
  if (margins.empty()) throw std::runtime_error("objective: empty pair set");

  double acc = 0.0;
  for (double m : margins) acc += std::exp(-beta * (m - min_m));
  return min_m - std::log(acc) / beta;
}

SearchResult run_search(const SearchConfig& cfg) {
  if (cfg.iterations < 1 || cfg.population < 1)
    throw std::invalid_argument("run_search: budget must be >= 1");
  const Family& fam = cfg.family;

  MatrixXd cur = cfg.init_coeffs.size() > 0 ? cfg.init_coeffs : random_coeffs(fam, cfg.seed, 1);
  if (cur.rows() != fam.ambient || cur.cols() != fam.coeff_cols())
    throw std::invalid_argument("run_search: init coefficient shape mismatch");

  double beta = cfg.beta;
  auto eval = [&](const MatrixXd& c) {
    return objective(c, fam, cfg.objective_grid, cfg.delta, beta);
  };

  double cur_obj = eval(cur);
  MatrixXd best = cur;
  double best_obj = cur_obj;

  SearchResult res;
  double reported_best = best_obj;
  res.trace.push_back({0, reported_best});

  const int quarter = std::max(1, cfg.iterations / 4);
  const int window = std::max(1, cfg.iterations / 5);
  const double step0 = 0.02 * std::max(1.0, cur.norm() / std::sqrt(double(cur.size())));
  const double step_end = 1e-12;
  const double temp0 = 1e-3, temp_end = 1e-12;

  std::vector<double> best_hist;
  best_hist.reserve(cfg.iterations + 1);
  best_hist.push_back(best_obj);

  auto true_margin = [&](const MatrixXd& c) -> double {
    try {
      return verify::verify_totally_skew(fam.build(c), cfg.verify_plan).min_margin;
    } catch (const std::runtime_error&) {
      return 0.0;  // non-immersed or degenerate: no usable margin
    }
  };

  Status status = Status::BudgetExhausted;
  int next_target_check = 0;
  bool done = false;

  for (int it = 1; it <= cfg.iterations && !done; ++it) {
    if (it % quarter == 0 && beta < cfg.beta * 8) {
      beta *= 2.0;  // sharpen the softmin toward the hard minimum
      cur_obj = eval(cur);
      best_obj = eval(best);
    }
    const double frac = static_cast<double>(it) / cfg.iterations;
    const double step = step0 * std::pow(step_end / step0, frac);
    const double temp = temp0 * std::pow(temp_end / temp0, frac);

    // population of perturbations, deterministic per (iteration, member)
    MatrixXd cand_best;
    double cand_best_obj = -std::numeric_limits<double>::infinity();
    for (int m = 0; m < cfg.population; ++m) {
      CounterRng rng(cfg.seed, 0x5ea40000ULL + static_cast<std::uint64_t>(it) * 131 + m);
      MatrixXd cand = cur;
      for (Eigen::Index i = 0; i < cand.rows(); ++i)
        for (Eigen::Index j = 0; j < cand.cols(); ++j) cand(i, j) += step * rng.next_normal();
      const double o = eval(cand);
      if (o > cand_best_obj) {
        cand_best_obj = o;
        cand_best = cand;
      }
    }

    if (cand_best_obj > cur_obj) {
      cur = cand_best;
      cur_obj = cand_best_obj;
    } else {
      CounterRng arng(cfg.seed, 0xacce0000ULL + static_cast<std::uint64_t>(it));
      if (std::exp((cand_best_obj - cur_obj) / temp) > arng.next_double()) {
        cur = cand_best;
        cur_obj = cand_best_obj;
      }
    }
    if (cur_obj > best_obj) {
      best = cur;
      best_obj = cur_obj;
    }
    best_hist.push_back(best_obj);
    reported_best = std::max(reported_best, best_obj);
    if (it % 10 == 0 || it == cfg.iterations) res.trace.push_back({it, reported_best});

    // target check against the true (unsmoothed) margin, rate-limited
    if (best_obj >= cfg.target_margin && it >= next_target_check) {
      const double t = true_margin(best);
      if (t >= cfg.target_margin) {
        res.true_min_margin = t;
        status = Status::TargetReached;
        done = true;
        break;
      }
      next_target_check = it + std::max(1, window / 4);
    }

    if (it >= window &&
        best_hist[static_cast<std::size_t>(it)] -
                best_hist[static_cast<std::size_t>(it - window)] <=
            std::max(kStallImprovement, kStallRelative * std::abs(best_obj))) {
      status = Status::Stalled;
      done = true;
    }
  }

  res.best_coeffs = best;
  res.best_objective = best_obj;
  res.status = status;
  if (status != Status::TargetReached) {
    res.true_min_margin = true_margin(best);
    if (res.true_min_margin >= cfg.target_margin) res.status = Status::TargetReached;
  }
  return res;
}

double genericity_experiment(int trials, const Family& family, std::uint64_t seed,
                             const verify::SamplingPlan& plan, double tol) {
  if (trials < 1) throw std::invalid_argument("genericity_experiment: trials must be >= 1");
  int certified = 0;
  for (int t = 0; t < trials; ++t) {
    const MatrixXd coeffs = random_coeffs(family, seed, 0x6e0000ULL + t);
    try {
      auto report = verify::verify_totally_skew(family.build(coeffs), plan, tol);
      if (report.verdict == verify::Verdict::CertifiedSampled) ++certified;
    } catch (const std::runtime_error&) {
      // non-immersed draw: counts as not certified
    }
  }
  return static_cast<double>(certified) / trials;
}

nlohmann::json result_to_json(const SearchResult& r, const SearchConfig& cfg) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < r.best_coeffs.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < r.best_coeffs.cols(); ++j) row.push_back(r.best_coeffs(i, j));
    rows.push_back(row);
  }
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& t : r.trace) trace.push_back({{"iteration", t.iteration}, {"objective", t.objective}});
  return nlohmann::json{
      {"config",
       {{"domain", cfg.family.domain == DomainKind::Circle ? "circle" : "interval"},
        {"basis", cfg.family.basis == CurveBasis::Fourier ? "fourier" : "polynomial"},
        {"degree", cfg.family.degree},
        {"ambient", cfg.family.ambient},
        {"objective_grid", cfg.objective_grid},
        {"delta", cfg.delta},
        {"beta", cfg.beta},
        {"iterations", cfg.iterations},
        {"population", cfg.population},
        {"seed", cfg.seed},
        {"target_margin", cfg.target_margin},
        {"verify_grid", cfg.verify_plan.grid_resolution},
        {"verify_random", cfg.verify_plan.random_samples}}},
      {"coefficients",
       {{"basis", cfg.family.basis == CurveBasis::Fourier ? "fourier" : "polynomial"},
        {"ambient", cfg.family.ambient},
        {"rows", rows}}},
      {"best_objective", r.best_objective},
      {"true_min_margin", r.true_min_margin},
      {"status", status_name(r.status)},
      {"trace", trace}};
}

}  // namespace skewtk::search
