#include "skewtk/verify.hpp"

#include <nlohmann/json.hpp>
#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "skewtk/linalg.hpp"

namespace skewtk::verify {

namespace {

constexpr std::size_t kMaxRecordedViolations = 64;

std::vector<double> to_std(const VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

struct GridPoint {
  VectorXd p;
  affine::LiftedSubspace lift;
};

// Immersion check + precomputed lifts for a set of domain points.
std::vector<GridPoint> prepare_points(const Embedding& e, const std::vector<VectorXd>& pts) {
  std::vector<GridPoint> out;
  out.reserve(pts.size());
  for (const auto& p : pts) {
    Jet j = e.jet(p, 1);
    Eigen::JacobiSVD<MatrixXd> svd(j.frame);
    if (svd.singularValues()(j.frame.cols() - 1) <= kImmersionTol)
      throw std::runtime_error("verify: embedding is not immersed at a sampled point");
    out.push_back({p, affine::lift(affine::make_affine(j.value, j.frame))});
  }
  return out;
}

affine::LiftedSubspace lift_at(const Embedding& e, const VectorXd& p) {
  Jet j = e.jet(p, 1);
  return affine::lift(affine::make_affine(j.value, j.frame));
}

struct SweepState {
  double min_margin = std::numeric_limits<double>::infinity();
  long argmin_a = -1, argmin_b = -1;
  std::vector<std::pair<std::pair<long, long>, double>> candidates;
  long suspicious = 0;
  long pair_count = 0;

  void record(long a, long b, double m, double recheck_below, double tol) {
    ++pair_count;
    if (m < min_margin) {
      min_margin = m;
      argmin_a = a;
      argmin_b = b;
    }
    if (m <= recheck_below) candidates.push_back({{a, b}, m});
    else if (m <= kSuspiciousMargin && m > tol) ++suspicious;
  }

  void merge(const SweepState& o) {
    pair_count += o.pair_count;
    suspicious += o.suspicious;
    if (o.min_margin < min_margin) {
      min_margin = o.min_margin;
      argmin_a = o.argmin_a;
      argmin_b = o.argmin_b;
    }
    candidates.insert(candidates.end(), o.candidates.begin(), o.candidates.end());
  }
};

// Sweep grid pairs. mode_self: unordered pairs (a < b) from one point set
// with the delta exclusion; otherwise the full product of two sets.
SweepState sweep_grid_pairs(const Embedding& e1, const std::vector<GridPoint>& g1,
                            const Embedding* e2_or_null, const std::vector<GridPoint>& g2,
                            double delta, double tol, double recheck_below, int threads,
                            std::ostream* dump) {
  const bool self = (e2_or_null == nullptr);
  const long n1 = static_cast<long>(g1.size());
  if (dump) threads = 1;  // keep the dump row order deterministic

  auto run_chunk = [&](long begin, long end) {
    SweepState st;
    for (long a = begin; a < end; ++a) {
      const long b0 = self ? a + 1 : 0;
      const long bn = self ? n1 : static_cast<long>(g2.size());
      const auto& ga = g1[static_cast<std::size_t>(a)];
      for (long b = b0; b < bn; ++b) {
        const auto& gb = self ? g1[static_cast<std::size_t>(b)] : g2[static_cast<std::size_t>(b)];
        if (self && intrinsic_distance(e1.domain, ga.p, gb.p) < delta) continue;
        const double m = affine::lifted_margin_fast(ga.lift, gb.lift);
        st.record(a, b, m, recheck_below, tol);
        if (dump) {
          for (Eigen::Index k = 0; k < ga.p.size(); ++k) *dump << ga.p(k) << ',';
          for (Eigen::Index k = 0; k < gb.p.size(); ++k) *dump << gb.p(k) << ',';
          *dump << m << '\n';
        }
      }
    }
    return st;
  };

  if (threads <= 1) return run_chunk(0, n1);

  const long chunk = std::max<long>(1, (n1 + threads - 1) / threads);
  std::vector<std::future<SweepState>> futs;
  for (long begin = 0; begin < n1; begin += chunk)
    futs.push_back(std::async(std::launch::async, run_chunk, begin,
                              std::min(begin + chunk, n1)));
  SweepState total;
  for (auto& f : futs) total.merge(f.get());  // chunk order, deterministic
  return total;
}

VectorXd perturb_point(const Domain& d, const VectorXd& p, double radius, CounterRng& rng) {
  switch (d.kind) {
    case DomainKind::Interval: {
      VectorXd q(1);
      q(0) = std::clamp(p(0) + radius * rng.next_normal(), d.a, d.b);
      return q;
    }
    case DomainKind::Circle: {
      VectorXd q(1);
      const double two_pi = 2.0 * std::numbers::pi;
      q(0) = std::fmod(p(0) + radius * rng.next_normal() + two_pi, two_pi);
      return q;
    }
    case DomainKind::Sphere: {
      VectorXd q = p;
      for (Eigen::Index k = 0; k < q.size(); ++k) q(k) += radius * rng.next_normal();
      return q / q.norm();
    }
    case DomainKind::Disk: {
      VectorXd q = p;
      for (Eigen::Index k = 0; k < q.size(); ++k) q(k) += radius * rng.next_normal();
      const double n = q.norm();
      if (n > d.radius) q *= d.radius / n;
      return q;
    }
  }
  throw std::logic_error("perturb_point: unreachable");
}

void finalize_report(const Embedding& e, SkewReport& r, const SweepState& sweep,
                     const std::vector<VectorXd>& pa, const std::vector<VectorXd>& pb,
                     double tol) {
  if (sweep.pair_count == 0)
    throw std::runtime_error("verify: empty pair set (delta too large?)");

  r.min_margin = sweep.min_margin;
  r.argmin_s = pa[static_cast<std::size_t>(sweep.argmin_a)];
  r.argmin_t = pb[static_cast<std::size_t>(sweep.argmin_b)];

  // Re-check small fast-path margins through the precise concatenated-SVD
  // route; only those decide refutation.
  long suspicious = sweep.suspicious;
  for (const auto& [ab, fast] : sweep.candidates) {
    const VectorXd& s = pa[static_cast<std::size_t>(ab.first)];
    const VectorXd& t = pb[static_cast<std::size_t>(ab.second)];
    const double precise = affine::skew_margin_pair(e, s, e, t);
    if (precise < r.min_margin) {
      r.min_margin = precise;
      r.argmin_s = s;
      r.argmin_t = t;
    }
    if (precise <= tol) {
      if (r.violations.size() < kMaxRecordedViolations) r.violations.push_back({s, t, precise});
    } else if (precise <= kSuspiciousMargin) {
      ++suspicious;
    }
  }
  if (suspicious > 0)
    r.warnings.push_back(std::to_string(suspicious) +
                         " pair margin(s) in the suspicious band (tol, 1e-5]");
  r.verdict = r.violations.empty() ? Verdict::CertifiedSampled : Verdict::Refuted;
}

// as finalize_report but for a pair of distinct embeddings
void finalize_pair_report(const Embedding& e1, const Embedding& e2, SkewReport& r,
                          const SweepState& sweep, const std::vector<VectorXd>& pa,
                          const std::vector<VectorXd>& pb, double tol) {
  if (sweep.pair_count == 0) throw std::runtime_error("verify: empty pair set");
  r.min_margin = sweep.min_margin;
  r.argmin_s = pa[static_cast<std::size_t>(sweep.argmin_a)];
  r.argmin_t = pb[static_cast<std::size_t>(sweep.argmin_b)];
  long suspicious = sweep.suspicious;
  for (const auto& [ab, fast] : sweep.candidates) {
    const VectorXd& s = pa[static_cast<std::size_t>(ab.first)];
    const VectorXd& t = pb[static_cast<std::size_t>(ab.second)];
    const double precise = affine::skew_margin_pair(e1, s, e2, t);
    if (precise < r.min_margin) {
      r.min_margin = precise;
      r.argmin_s = s;
      r.argmin_t = t;
    }
    if (precise <= tol) {
      if (r.violations.size() < kMaxRecordedViolations) r.violations.push_back({s, t, precise});
    } else if (precise <= kSuspiciousMargin) {
      ++suspicious;
    }
  }
  if (suspicious > 0)
    r.warnings.push_back(std::to_string(suspicious) +
                         " pair margin(s) in the suspicious band (tol, 1e-5]");
  r.verdict = r.violations.empty() ? Verdict::CertifiedSampled : Verdict::Refuted;
}

}  // namespace

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::CertifiedExact: return "certified-exact";
    case Verdict::CertifiedSampled: return "certified-sampled";
    case Verdict::Refuted: return "refuted";
  }
  return "?";
}

SkewReport verify_totally_skew(const Embedding& e, const SamplingPlan& plan, double tol,
                               int threads, std::ostream* margin_dump) {
  SkewReport r;
  r.embedding = e.name;
  r.plan = plan;

  auto grid_pts = domain_grid(e.domain, plan.grid_resolution);
  auto grid = prepare_points(e, grid_pts);
  const double recheck_below = std::max(3.0 * tol, 1e-7);

  SweepState sweep = sweep_grid_pairs(e, grid, nullptr, {}, plan.delta, tol, recheck_below,
                                      threads, margin_dump);

  // random pairs, counter-seeded per pair index
  std::vector<VectorXd> extra_pts;
  for (long k = 0; k < plan.random_samples; ++k) {
    CounterRng rng(plan.seed, 0x724e0000ULL + static_cast<std::uint64_t>(k));
    VectorXd s = random_domain_point(e.domain, rng);
    VectorXd t = random_domain_point(e.domain, rng);
    if (intrinsic_distance(e.domain, s, t) < plan.delta) continue;
    const double m = affine::lifted_margin_fast(lift_at(e, s), lift_at(e, t));
    const long ia = static_cast<long>(grid_pts.size() + extra_pts.size());
    extra_pts.push_back(s);
    const long ib = static_cast<long>(grid_pts.size() + extra_pts.size());
    extra_pts.push_back(t);
    sweep.record(ia, ib, m, recheck_below, tol);
  }

  std::vector<VectorXd> all_pts = grid_pts;
  all_pts.insert(all_pts.end(), extra_pts.begin(), extra_pts.end());
  finalize_report(e, r, sweep, all_pts, all_pts, tol);

  if (e.domain.is_curve() && e.ambient_dim >= 3) {
    r.near_diagonal = near_diagonal_check(e, plan.grid_resolution);
    if (r.near_diagonal.status == "fail")
      r.warnings.push_back("near-diagonal order-3 rank check failed; tangent lines at "
                           "nearby points are not locally certified");
  }
  return r;
}

SkewReport verify_skew_pair(const Embedding& e1, const Embedding& e2,
                            const SamplingPlan& plan, double tol, int threads,
                            std::ostream* margin_dump) {
  if (e1.ambient_dim != e2.ambient_dim)
    throw std::invalid_argument("verify_skew_pair: ambient dimension mismatch");
  SkewReport r;
  r.embedding = e1.name + " | " + e2.name;
  r.plan = plan;

  auto pts1 = domain_grid(e1.domain, plan.grid_resolution);
  auto pts2 = domain_grid(e2.domain, plan.grid_resolution);
  auto g1 = prepare_points(e1, pts1);
  auto g2 = prepare_points(e2, pts2);
  const double recheck_below = std::max(3.0 * tol, 1e-7);

  SweepState sweep = sweep_grid_pairs(e1, g1, &e2, g2, plan.delta, tol, recheck_below,
                                      threads, margin_dump);

  std::vector<VectorXd> extra1, extra2;
  for (long k = 0; k < plan.random_samples; ++k) {
    CounterRng rng(plan.seed, 0x9a170000ULL + static_cast<std::uint64_t>(k));
    VectorXd s = random_domain_point(e1.domain, rng);
    VectorXd t = random_domain_point(e2.domain, rng);
    const double m = affine::lifted_margin_fast(lift_at(e1, s), lift_at(e2, t));
    const long ia = static_cast<long>(pts1.size() + extra1.size());
    extra1.push_back(s);
    const long ib = static_cast<long>(pts2.size() + extra2.size());
    extra2.push_back(t);
    sweep.record(ia, ib, m, recheck_below, tol);
  }

  std::vector<VectorXd> all1 = pts1, all2 = pts2;
  all1.insert(all1.end(), extra1.begin(), extra1.end());
  all2.insert(all2.end(), extra2.begin(), extra2.end());
  finalize_pair_report(e1, e2, r, sweep, all1, all2, tol);
  return r;
}

NearDiagonalResult near_diagonal_check(const Embedding& e, int grid) {
  if (!e.domain.is_curve())
    throw std::invalid_argument("near_diagonal_check: curve domain required");
  if (e.ambient_dim < 3)
    throw std::invalid_argument("near_diagonal_check: ambient dimension must be >= 3");
  NearDiagonalResult out;
  out.worst_sigma = std::numeric_limits<double>::infinity();
  for (const auto& p : domain_grid(e.domain, grid)) {
    Jet j = e.jet(p, 3);
    MatrixXd m(e.ambient_dim, 3);
    m.col(0) = j.frame.col(0);
    m.col(1) = j.higher.at(0);
    m.col(2) = j.higher.at(1);
    Eigen::JacobiSVD<MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    const double rel = sv(0) > 0 ? sv(2) / sv(0) : 0.0;
    if (rel < out.worst_sigma) {
      out.worst_sigma = rel;
      out.worst_point = p;
    }
  }
  out.status = (out.worst_sigma > 1e-8) ? "pass" : "fail";
  return out;
}

SkewReport certify_bilinear_sphere(const bilinear::BilinearMap& b, int samples,
                                   std::uint64_t seed) {
  if (b.dim_left() != b.dim_right())
    throw std::invalid_argument("certify_bilinear_sphere: map must be square");
  const int n = b.dim_left() - 1;
  SkewReport r;
  r.embedding = "bilinear-sphere:n=" + std::to_string(n);
  r.plan = SamplingPlan{2, samples, 0.0, seed};

  auto sym = bilinear::is_symmetric(b);
  if (!sym.symmetric) {
    r.verdict = Verdict::Refuted;
    r.certificate_rule = "symmetry-hypothesis-failed";
    const auto& [x, y] = *sym.witness;
    const double gap = (bilinear::evaluate(b, x, y) - bilinear::evaluate(b, y, x)).norm();
    r.violations.push_back({x, y, gap});
    r.warnings.push_back("asymmetry witness recorded in violations; margin slot holds "
                         "||B(x,y)-B(y,x)||");
    return r;
  }

  bool exact = false;
  try {
    exact = bilinear::certify_convolution_nonsingular(b);
  } catch (const std::invalid_argument&) {
    exact = false;
  }
  if (exact) {
    r.verdict = Verdict::CertifiedExact;
    r.certificate_rule = "symmetric-nonsingular-bilinear-sphere (polynomial convolution, "
                         "nonsingular exactly)";
    r.min_margin = bilinear::nonsingularity_margin(b, std::min(samples, 1000), seed);
    return r;
  }

  const double margin = bilinear::nonsingularity_margin(b, samples, seed);
  r.min_margin = margin;
  if (margin > 1e-6) {
    r.verdict = Verdict::CertifiedSampled;
    r.certificate_rule = "symmetric-bilinear-sphere (nonsingularity sampled only)";
  } else {
    r.verdict = Verdict::Refuted;
    r.certificate_rule = "sampled-nonsingularity-margin-near-zero";
    r.warnings.push_back("sampled nonsingularity margin is near zero; certification refused");
  }
  return r;
}

ViolationSearchResult find_violation(const Embedding& e, std::uint64_t seed, int max_iters,
                                     double tol, double delta) {
  // immersion pre-check on a coarse grid
  (void)prepare_points(e, domain_grid(e.domain, 16));

  CounterRng rng(seed, 0xf1d0);
  const int coarse = std::min(max_iters / 4, 4000);

  struct Start {
    VectorXd s, t;
    double m;
  };
  std::vector<Start> starts;
  for (int k = 0; k < coarse; ++k) {
    VectorXd s = random_domain_point(e.domain, rng);
    VectorXd t = random_domain_point(e.domain, rng);
    if (intrinsic_distance(e.domain, s, t) < delta) continue;
    starts.push_back({s, t, affine::skew_margin_pair(e, s, e, t)});
  }
  if (starts.empty()) throw std::runtime_error("find_violation: no admissible start pairs");
  std::sort(starts.begin(), starts.end(),
            [](const Start& a, const Start& b) { return a.m < b.m; });
  starts.resize(std::min<std::size_t>(starts.size(), 4));

  const int budget_each = std::max(1, (max_iters - coarse) / static_cast<int>(starts.size()));
  Start best = starts.front();
  for (auto& st : starts) {
    double radius = 0.05 * e.domain.diameter();
    int evals = 0;
    while (evals < budget_each && radius > 1e-14 && st.m > 0.0) {
      bool improved = false;
      for (int trial = 0; trial < 16 && evals < budget_each; ++trial) {
        VectorXd s2 = perturb_point(e.domain, st.s, radius, rng);
        VectorXd t2 = perturb_point(e.domain, st.t, radius, rng);
        if (intrinsic_distance(e.domain, s2, t2) < delta) continue;
        const double m2 = affine::skew_margin_pair(e, s2, e, t2);
        ++evals;
        if (m2 < st.m) {
          st = {s2, t2, m2};
          improved = true;
          break;
        }
      }
      if (!improved) radius *= 0.5;
    }
    if (st.m < best.m) best = st;
  }
  return {best.s, best.t, best.m, best.m < tol};
}

double gauss_pair_differential_check(const Embedding& e1, const Embedding& e2, int samples,
                                     std::uint64_t seed) {
  if (e1.ambient_dim != e2.ambient_dim)
    throw std::invalid_argument("gauss_pair_differential_check: ambient mismatch");
  double worst = std::numeric_limits<double>::infinity();
  for (int k = 0; k < samples; ++k) {
    CounterRng rng(seed, 0x6a550000ULL + static_cast<std::uint64_t>(k));
    VectorXd s = random_domain_point(e1.domain, rng);
    VectorXd t = random_domain_point(e2.domain, rng);
    auto ts1 = tangent_space(e1, s);
    auto ts2 = tangent_space(e2, t);
    const VectorXd diff = ts1.base_point - ts2.base_point;
    const double dist = diff.norm();
    if (dist < 1e-9)
      throw std::runtime_error("gauss_pair_differential_check: images intersect at a sample");
    const VectorXd u = diff / dist;
    const int n1 = ts1.dim(), n2 = ts2.dim();
    MatrixXd df(e1.ambient_dim, n1 + n2);
    for (int c = 0; c < n1; ++c) {
      const VectorXd v = ts1.directions.col(c);
      df.col(c) = (v - u * u.dot(v)) / dist;
    }
    for (int c = 0; c < n2; ++c) {
      const VectorXd w = ts2.directions.col(c);
      df.col(n1 + c) = -(w - u * u.dot(w)) / dist;
    }
    worst = std::min(worst, linalg::smallest_singular_value(df));
  }
  return worst;
}

nlohmann::json report_to_json(const SkewReport& r) {
  nlohmann::json viols = nlohmann::json::array();
  for (const auto& v : r.violations)
    viols.push_back({{"s", to_std(v.s)}, {"t", to_std(v.t)}, {"margin", v.margin}});
  nlohmann::json nd = {{"status", r.near_diagonal.status}};
  if (r.near_diagonal.worst_point.size() > 0) {
    nd["worst_point"] = to_std(r.near_diagonal.worst_point);
    nd["worst_sigma"] = r.near_diagonal.worst_sigma;
  }
  return nlohmann::json{
      {"embedding", r.embedding},
      {"verdict", verdict_name(r.verdict)},
      {"min_margin", r.min_margin},
      {"argmin", {{"s", to_std(r.argmin_s)}, {"t", to_std(r.argmin_t)}}},
      {"near_diagonal", nd},
      {"plan",
       {{"grid", r.plan.grid_resolution},
        {"random", r.plan.random_samples},
        {"delta", r.plan.delta},
        {"seed", r.plan.seed}}},
      {"violations", viols},
      {"certificate_rule", r.certificate_rule},
      {"warnings", r.warnings}};
}

}  // namespace skewtk::verify
