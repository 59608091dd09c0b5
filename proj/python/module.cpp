// Python bindings for the core operations: bound formulas, bilinear maps,
// the embedding catalog, skewness checks, sampled verification, and search.
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "skewtk/bounds.hpp"
#include "skewtk/search.hpp"
#include "skewtk/verify.hpp"

namespace py = pybind11;
using namespace skewtk;

namespace {

py::dict report_dict(const verify::SkewReport& r) {
  // go through the canonical JSON form so python and CLI outputs agree
  return py::module_::import("json").attr("loads")(verify::report_to_json(r).dump());
}

verify::SamplingPlan make_plan(int grid, long random_samples, double delta,
                               std::uint64_t seed) {
  return {grid, random_samples, delta, seed};
}

}  // namespace

PYBIND11_MODULE(_skewtk, m) {
  m.doc() = "totally skew embeddings: constructions, certification, bounds, search";

  // --- bounds -----------------------------------------------------------
  auto b = m.def_submodule("bounds");
  b.def("basic_bounds", &bounds::basic_bounds, py::arg("n"), py::arg("closed"));
  b.def("table_lower_bound", &bounds::table_lower_bound, py::arg("n"));
  b.def("binom_odd", &bounds::binom_odd, py::arg("a"), py::arg("b"));
  b.def("binomial_q_min", &bounds::binomial_q_min, py::arg("n"));
  b.def("power_constraint_check", [](int n, int q) {
    auto pc = bounds::power_constraint_check(n, q);
    return py::make_tuple(pc.r, pc.m, pc.consistent);
  });
  b.def("alpha", &bounds::alpha, py::arg("m"));
  b.def("nu", &bounds::nu, py::arg("k"));
  b.def("davis_sections", &bounds::davis_sections, py::arg("k"), py::arg("p"));
  b.def("davis_exception_bound", &bounds::davis_exception_bound, py::arg("n"));
  b.def("immersion_bound", &bounds::immersion_bound, py::arg("n"));
  b.def("sphere_upper_bound", &bounds::sphere_upper_bound, py::arg("n"));
  b.def("best_known", [](int n, bool use_published_table) {
    return py::module_::import("json").attr("loads")(
        bounds::record_to_json(bounds::best_known(n, use_published_table)).dump());
  }, py::arg("n"), py::arg("use_published_table") = true);

  // --- bilinear maps ----------------------------------------------------
  py::class_<bilinear::BilinearMap>(m, "BilinearMap")
      .def(py::init<int, int, int>())
      .def_property_readonly("dim_left", &bilinear::BilinearMap::dim_left)
      .def_property_readonly("dim_right", &bilinear::BilinearMap::dim_right)
      .def_property_readonly("dim_out", &bilinear::BilinearMap::dim_out)
      .def("at", [](const bilinear::BilinearMap& b, int k, int i, int j) {
        return b.at(k, i, j);
      })
      .def("set", [](bilinear::BilinearMap& b, int k, int i, int j, double v) {
        b.at(k, i, j) = v;
      });
  m.def("convolution_map", &bilinear::convolution_map, py::arg("n"));
  m.def("complex_convolution_map", &bilinear::complex_convolution_map, py::arg("l"));
  m.def("quaternion_map", &bilinear::quaternion_map);
  m.def("bilinear_evaluate", &bilinear::evaluate);
  m.def("is_symmetric", [](const bilinear::BilinearMap& b) {
    return bilinear::is_symmetric(b).symmetric;
  });
  m.def("nonsingularity_margin", &bilinear::nonsingularity_margin, py::arg("b"),
        py::arg("samples"), py::arg("seed"));
  m.def("certify_convolution_nonsingular",
        py::overload_cast<int>(&bilinear::certify_convolution_nonsingular), py::arg("n"));

  // --- embeddings -------------------------------------------------------
  py::class_<Embedding>(m, "Embedding")
      .def_readonly("name", &Embedding::name)
      .def_readonly("ambient_dim", &Embedding::ambient_dim)
      .def_property_readonly("domain_dim", &Embedding::domain_dim)
      .def("value", &Embedding::value)
      .def("tangent_frame",
           [](const Embedding& e, const VectorXd& p) { return e.jet(p, 1).frame; });
  m.def("catalog", &catalog, py::arg("name"));
  m.def("sphere_pair", &sphere_pair, py::arg("n1"), py::arg("n2"));
  m.def("parametric_curve", [](const MatrixXd& coeffs, const std::string& basis, int ambient) {
    const CurveBasis cb = basis == "fourier" ? CurveBasis::Fourier : CurveBasis::Polynomial;
    return parametric_curve(coeffs, cb, ambient);
  }, py::arg("coeffs"), py::arg("basis"), py::arg("ambient"));
  m.def("domain_grid", [](const Embedding& e, int res) { return domain_grid(e.domain, res); });

  // --- skewness ---------------------------------------------------------
  m.def("skew_margin_pair", [](const Embedding& e1, const VectorXd& s, const Embedding& e2,
                               const VectorXd& t) {
    return affine::skew_margin_pair(e1, s, e2, t);
  });
  m.def("are_skew", [](const VectorXd& p1, const MatrixXd& d1, const VectorXd& p2,
                       const MatrixXd& d2) {
    auto res = affine::are_skew(affine::make_affine(p1, d1), affine::make_affine(p2, d2));
    return py::make_tuple(res.skew, res.margin);
  }, py::arg("base1"), py::arg("dirs1"), py::arg("base2"), py::arg("dirs2"));

  // --- verification -----------------------------------------------------
  m.def("verify_totally_skew",
        [](const Embedding& e, int grid, long random_samples, double delta,
           std::uint64_t seed, double tol, int threads) {
          return report_dict(verify::verify_totally_skew(
              e, make_plan(grid, random_samples, delta, seed), tol, threads));
        },
        py::arg("embedding"), py::arg("grid") = 64, py::arg("random_samples") = 0,
        py::arg("delta") = 1e-3, py::arg("seed") = 0,
        py::arg("tol") = verify::kDefaultRefuteTol, py::arg("threads") = 1);
  m.def("verify_skew_pair",
        [](const Embedding& e1, const Embedding& e2, int grid, double delta,
           std::uint64_t seed, double tol) {
          return report_dict(
              verify::verify_skew_pair(e1, e2, make_plan(grid, 0, delta, seed), tol));
        },
        py::arg("e1"), py::arg("e2"), py::arg("grid") = 64, py::arg("delta") = 1e-3,
        py::arg("seed") = 0, py::arg("tol") = verify::kDefaultRefuteTol);
  m.def("certify_bilinear_sphere",
        [](const bilinear::BilinearMap& b, int samples, std::uint64_t seed) {
          return report_dict(verify::certify_bilinear_sphere(b, samples, seed));
        },
        py::arg("b"), py::arg("samples") = 1000, py::arg("seed") = 0);
  m.def("find_violation", [](const Embedding& e, std::uint64_t seed, int max_iters) {
    auto r = verify::find_violation(e, seed, max_iters);
    return py::make_tuple(r.s, r.t, r.margin, r.is_violation);
  }, py::arg("embedding"), py::arg("seed") = 0, py::arg("max_iters") = 20000);
  m.def("gauss_pair_differential_check", &verify::gauss_pair_differential_check,
        py::arg("e1"), py::arg("e2"), py::arg("samples") = 500, py::arg("seed") = 0);

  // --- search -----------------------------------------------------------
  m.def("run_search",
        [](const std::string& domain, const std::string& basis, int degree, int ambient,
           int iterations, std::uint64_t seed, double target_margin, int objective_grid,
           double delta, const py::object& init_coeffs) {
          search::SearchConfig cfg;
          cfg.family.domain = domain == "interval" ? DomainKind::Interval : DomainKind::Circle;
          cfg.family.basis = basis == "polynomial" ? CurveBasis::Polynomial : CurveBasis::Fourier;
          cfg.family.degree = degree;
          cfg.family.ambient = ambient;
          cfg.iterations = iterations;
          cfg.seed = seed;
          cfg.target_margin = target_margin;
          cfg.objective_grid = objective_grid;
          cfg.delta = delta;
          cfg.verify_plan.delta = delta;  // same convention as the CLI
          if (!init_coeffs.is_none()) cfg.init_coeffs = init_coeffs.cast<MatrixXd>();
          auto res = search::run_search(cfg);
          return py::module_::import("json").attr("loads")(
              search::result_to_json(res, cfg).dump());
        },
        py::arg("domain") = "circle", py::arg("basis") = "fourier", py::arg("degree") = 3,
        py::arg("ambient") = 5, py::arg("iterations") = 2000, py::arg("seed") = 0,
        py::arg("target_margin") = 1e-3, py::arg("objective_grid") = 64,
        py::arg("delta") = 1e-3, py::arg("init_coeffs") = py::none());
  m.def("genericity_experiment",
        [](int trials, const std::string& domain, const std::string& basis, int degree,
           int ambient, std::uint64_t seed, int grid) {
          search::Family fam;
          fam.domain = domain == "interval" ? DomainKind::Interval : DomainKind::Circle;
          fam.basis = basis == "polynomial" ? CurveBasis::Polynomial : CurveBasis::Fourier;
          fam.degree = degree;
          fam.ambient = ambient;
          return search::genericity_experiment(trials, fam, seed, make_plan(grid, 0, 1e-3, 0));
        },
        py::arg("trials") = 20, py::arg("domain") = "interval",
        py::arg("basis") = "polynomial", py::arg("degree") = 3, py::arg("ambient") = 5,
        py::arg("seed") = 0, py::arg("grid") = 64);
}
