// Command-line front door: construct / verify / pair / bounds / search.
//
// Exit codes: 0 success (certified / completed), 1 usage or validation error,
// 2 refuted, 3 search stalled.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <fstream>
#include <iostream>
#include <optional>

#include "skewtk/bounds.hpp"
#include "skewtk/embeddings.hpp"
#include "skewtk/search.hpp"
#include "skewtk/verify.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using nlohmann::json;
using namespace skewtk;

json manifest(const std::string& subcommand, const json& config, std::uint64_t seed) {
  return json{{"subcommand", subcommand},
              {"config", config},
              {"tool_version", kVersion},
              {"seed", seed}};
}

void write_json(const std::string& path, const json& j) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << j.dump(2) << "\n";
  }
}

MatrixXd coeffs_from_json(const json& j, CurveBasis& basis, int& ambient) {
  const json& c = j.contains("coefficients") ? j.at("coefficients") : j;
  const std::string b = c.at("basis").get<std::string>();
  basis = (b == "fourier") ? CurveBasis::Fourier : CurveBasis::Polynomial;
  ambient = c.at("ambient").get<int>();
  const auto rows = c.at("rows").get<std::vector<std::vector<double>>>();
  MatrixXd m(rows.size(), rows.at(0).size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t k = 0; k < rows[i].size(); ++k)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = rows[i][k];
  return m;
}

Embedding resolve_embedding(const std::string& name, const std::string& coeffs_path) {
  if (name == "parametric") {
    if (coeffs_path.empty())
      throw std::invalid_argument("parametric embedding requires --coeffs FILE");
    std::ifstream in(coeffs_path);
    if (!in) throw std::invalid_argument("cannot read coefficients file: " + coeffs_path);
    json j;
    in >> j;
    CurveBasis basis;
    int ambient;
    MatrixXd m = coeffs_from_json(j, basis, ambient);
    return parametric_curve(m, basis, ambient);
  }
  return catalog(name);
}

int cmd_verify(const std::string& name, const std::string& coeffs_path,
               const verify::SamplingPlan& plan, double tol, int threads,
               const std::string& out, const std::string& margins_csv, int descent_iters) {
  Embedding e = resolve_embedding(name, coeffs_path);

  std::optional<std::ofstream> dump;
  if (!margins_csv.empty()) {
    dump.emplace(margins_csv);
    if (!*dump) throw std::runtime_error("cannot open " + margins_csv);
    for (int k = 0; k < e.domain_dim() + (e.domain.kind == DomainKind::Sphere ? 1 : 0); ++k)
      *dump << "s" << k << ",";
    for (int k = 0; k < e.domain_dim() + (e.domain.kind == DomainKind::Sphere ? 1 : 0); ++k)
      *dump << "t" << k << ",";
    *dump << "margin\n";
  }

  verify::SkewReport report =
      verify::verify_totally_skew(e, plan, tol, threads, dump ? &*dump : nullptr);

  if (descent_iters > 0 && report.verdict != verify::Verdict::Refuted) {
    auto v = verify::find_violation(e, plan.seed, descent_iters, tol, plan.delta);
    if (v.is_violation) {
      report.verdict = verify::Verdict::Refuted;
      report.violations.push_back({v.s, v.t, v.margin});
      if (v.margin < report.min_margin) {
        report.min_margin = v.margin;
        report.argmin_s = v.s;
        report.argmin_t = v.t;
      }
    }
  }

  json j = verify::report_to_json(report);
  j["manifest"] = manifest("verify",
                           json{{"embedding", name},
                                {"grid", plan.grid_resolution},
                                {"random", plan.random_samples},
                                {"delta", plan.delta},
                                {"tol", tol},
                                {"threads", threads},
                                {"descent", descent_iters}},
                           plan.seed);
  write_json(out, j);
  return report.verdict == verify::Verdict::Refuted ? 2 : 0;
}

int cmd_pair(const std::string& e1_name, const std::string& e2_name, int n1, int n2,
             const verify::SamplingPlan& plan, double tol, int threads,
             const std::string& out) {
  Embedding e1, e2;
  if (!e1_name.empty()) {
    e1 = catalog(e1_name);
    e2 = catalog(e2_name.empty() ? e1_name : e2_name);
  } else {
    auto [a, b] = sphere_pair(n1, n2);
    e1 = a;
    e2 = b;
  }
  auto report = verify::verify_skew_pair(e1, e2, plan, tol, threads);
  json j = verify::report_to_json(report);
  j["manifest"] = manifest("pair",
                           json{{"e1", e1.name},
                                {"e2", e2.name},
                                {"grid", plan.grid_resolution},
                                {"random", plan.random_samples},
                                {"delta", plan.delta},
                                {"tol", tol}},
                           plan.seed);
  write_json(out, j);
  return report.verdict == verify::Verdict::Refuted ? 2 : 0;
}

std::pair<int, int> parse_range(const std::string& range) {
  const auto pos = range.find("..");
  if (pos == std::string::npos) {
    const int n = std::stoi(range);
    return {n, n};
  }
  return {std::stoi(range.substr(0, pos)), std::stoi(range.substr(pos + 2))};
}

int cmd_bounds(const std::string& range, bool use_table, const std::string& format,
               const std::string& out) {
  auto [lo, hi] = parse_range(range);
  if (lo < 1 || hi < lo) throw std::invalid_argument("bounds: invalid range (need 1 <= a <= b)");
  std::vector<bounds::BoundRecord> records;
  for (int n = lo; n <= hi; ++n) records.push_back(bounds::best_known(n, use_table));

  const json man = manifest(
      "bounds", json{{"n", range}, {"use_published_table", use_table}, {"format", format}}, 0);
  if (format == "csv") {
    std::ostringstream os;
    os << "# manifest: " << man.dump() << "\n" << bounds::record_csv_header() << "\n";
    for (const auto& r : records) os << bounds::record_to_csv(r) << "\n";
    if (out.empty() || out == "-") {
      std::cout << os.str();
    } else {
      std::ofstream f(out);
      f << os.str();
    }
  } else {
    json rows = json::array();
    for (const auto& r : records) rows.push_back(bounds::record_to_json(r));
    write_json(out, json{{"manifest", man}, {"records", rows}});
  }
  return 0;
}

int cmd_search(const search::SearchConfig& cfg, const std::string& out) {
  auto result = search::run_search(cfg);
  json j = search::result_to_json(result, cfg);
  j["manifest"] = manifest("search", j["config"], cfg.seed);
  write_json(out, j);
  if (result.status == search::Status::Stalled) return 3;
  return 0;
}

int cmd_construct(const std::string& family, int n1, int n2, int grid,
                  const std::string& emit) {
  std::vector<Embedding> embeddings;
  if (family.rfind("sphere-pair", 0) == 0) {
    auto [a, b] = sphere_pair(n1, n2);
    embeddings = {a, b};
  } else {
    embeddings = {catalog(family)};
  }
  std::ofstream f(emit);
  if (!f) throw std::runtime_error("cannot open " + emit);
  const json man =
      manifest("construct", json{{"family", family}, {"grid", grid}, {"emit", emit}}, 0);
  f << "# manifest: " << man.dump() << "\n";
  bool header = false;
  for (const auto& e : embeddings) {
    auto pts = domain_grid(e.domain, grid);
    if (!header) {
      const int dcols = static_cast<int>(pts.front().size());
      for (int k = 0; k < dcols; ++k) f << "d" << k << ",";
      for (int k = 0; k < e.ambient_dim; ++k) f << "x" << k << (k + 1 < e.ambient_dim ? "," : "\n");
      header = true;
    }
    for (const auto& p : pts) {
      const VectorXd v = e.value(p);
      for (Eigen::Index k = 0; k < p.size(); ++k) f << p(k) << ",";
      for (Eigen::Index k = 0; k < v.size(); ++k) f << v(k) << (k + 1 < v.size() ? "," : "\n");
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"totally-skew embedding toolkit"};
  app.set_config("--config");
  app.require_subcommand(1);

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "sampled total-skewness verification");
  std::string v_embedding, v_coeffs, v_out, v_margins_csv;
  verify::SamplingPlan v_plan{256, 0, 1e-3, 0};
  double v_tol = verify::kDefaultRefuteTol;
  int v_threads = 1, v_descent = 0;
  verify_cmd->add_option("--embedding", v_embedding, "catalog name or 'parametric'")->required();
  verify_cmd->add_option("--coeffs", v_coeffs, "coefficient JSON for parametric curves");
  verify_cmd->add_option("--grid", v_plan.grid_resolution);
  verify_cmd->add_option("--random", v_plan.random_samples);
  verify_cmd->add_option("--delta", v_plan.delta);
  verify_cmd->add_option("--seed", v_plan.seed);
  verify_cmd->add_option("--tol", v_tol);
  verify_cmd->add_option("--threads", v_threads);
  verify_cmd->add_option("--descent", v_descent, "extra local-descent violation search budget");
  verify_cmd->add_option("--out", v_out, "report JSON path (default stdout)");
  verify_cmd->add_option("--margins-csv", v_margins_csv, "dump every grid pair margin");

  // pair
  auto* pair_cmd = app.add_subcommand("pair", "totally skew pair verification");
  std::string p_family = "sphere-pair", p_e1, p_e2, p_out;
  int p_n1 = 1, p_n2 = 1, p_threads = 1;
  verify::SamplingPlan p_plan{128, 0, 1e-3, 0};
  double p_tol = verify::kDefaultRefuteTol;
  pair_cmd->add_option("--family", p_family);
  pair_cmd->add_option("--n1", p_n1);
  pair_cmd->add_option("--n2", p_n2);
  pair_cmd->add_option("--e1", p_e1, "first catalog embedding (overrides --family)");
  pair_cmd->add_option("--e2", p_e2, "second catalog embedding");
  pair_cmd->add_option("--grid", p_plan.grid_resolution);
  pair_cmd->add_option("--random", p_plan.random_samples);
  pair_cmd->add_option("--seed", p_plan.seed);
  pair_cmd->add_option("--tol", p_tol);
  pair_cmd->add_option("--threads", p_threads);
  pair_cmd->add_option("--out", p_out);

  // bounds
  auto* bounds_cmd = app.add_subcommand("bounds", "dimension bound calculators");
  std::string b_range, b_format = "json", b_out;
  bool b_table = false;
  bounds_cmd->add_option("--n", b_range, "range A..B or single n")->required();
  bounds_cmd->add_flag("--use-published-table", b_table);
  bounds_cmd->add_option("--format", b_format)->check(CLI::IsMember({"csv", "json"}));
  bounds_cmd->add_option("--out", b_out);

  // search
  auto* search_cmd = app.add_subcommand("search", "maximin skew-margin search");
  search::SearchConfig s_cfg;
  std::string s_domain = "circle", s_basis = "fourier", s_out, s_init;
  search_cmd->add_option("--domain", s_domain)->check(CLI::IsMember({"circle", "interval"}));
  search_cmd->add_option("--ambient", s_cfg.family.ambient)->required();
  search_cmd->add_option("--basis", s_basis)->check(CLI::IsMember({"fourier", "polynomial"}));
  search_cmd->add_option("--degree", s_cfg.family.degree);
  search_cmd->add_option("--iters", s_cfg.iterations);
  search_cmd->add_option("--population", s_cfg.population);
  search_cmd->add_option("--seed", s_cfg.seed);
  search_cmd->add_option("--target", s_cfg.target_margin);
  search_cmd->add_option("--grid", s_cfg.objective_grid);
  search_cmd->add_option("--delta", s_cfg.delta);
  search_cmd->add_option("--beta", s_cfg.beta);
  search_cmd->add_option("--verify-grid", s_cfg.verify_plan.grid_resolution);
  search_cmd->add_option("--verify-random", s_cfg.verify_plan.random_samples);
  search_cmd->add_option("--init-coeffs", s_init, "initial coefficient JSON");
  search_cmd->add_option("--out", s_out);

  // construct
  auto* construct_cmd = app.add_subcommand("construct", "emit sampled embedding points");
  std::string c_family, c_emit;
  int c_n = -1, c_n1 = 1, c_n2 = 1, c_grid = 64;
  construct_cmd->add_option("--family", c_family)->required();
  construct_cmd->add_option("--n", c_n, "bilinear sphere dimension");
  construct_cmd->add_option("--n1", c_n1);
  construct_cmd->add_option("--n2", c_n2);
  construct_cmd->add_option("--grid", c_grid);
  construct_cmd->add_option("--emit", c_emit)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify_cmd->parsed())
      return cmd_verify(v_embedding, v_coeffs, v_plan, v_tol, v_threads, v_out, v_margins_csv,
                        v_descent);
    if (pair_cmd->parsed()) return cmd_pair(p_e1, p_e2, p_n1, p_n2, p_plan, p_tol, p_threads, p_out);
    if (bounds_cmd->parsed()) return cmd_bounds(b_range, b_table, b_format, b_out);
    if (search_cmd->parsed()) {
      s_cfg.family.domain = (s_domain == "circle") ? DomainKind::Circle : DomainKind::Interval;
      s_cfg.family.basis = (s_basis == "fourier") ? CurveBasis::Fourier : CurveBasis::Polynomial;
      s_cfg.verify_plan.delta = s_cfg.delta;
      s_cfg.verify_plan.seed = s_cfg.seed;
      if (!s_init.empty()) {
        std::ifstream in(s_init);
        if (!in) throw std::invalid_argument("cannot read " + s_init);
        nlohmann::json j;
        in >> j;
        CurveBasis basis;
        int ambient;
        s_cfg.init_coeffs = coeffs_from_json(j, basis, ambient);
      }
      return cmd_search(s_cfg, s_out);
    }
    if (construct_cmd->parsed()) {
      std::string family = c_family;
      if (c_family == "bilinear-sphere" && c_n >= 0)
        family = "bilinear-sphere:n=" + std::to_string(c_n);
      return cmd_construct(family, c_n1, c_n2, c_grid, c_emit);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
