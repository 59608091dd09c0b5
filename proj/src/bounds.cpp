#include "skewtk/bounds.hpp"

#include <nlohmann/json.hpp>
#include <array>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace skewtk::bounds {

std::pair<int, int> basic_bounds(int n, bool closed) {
  if (n < 1) throw std::invalid_argument("basic_bounds: n must be >= 1");
  return {closed ? 2 * n + 2 : 2 * n + 1, 4 * n + 1};
}

int table_lower_bound(int n) {
  static constexpr std::array<int, 17> table = {3,  6,  7,  12, 13, 14, 15, 24, 25,
                                                27, 28, 31, 36, 37, 38, 48, 49};
  if (n < 1 || n > 17)
    throw std::invalid_argument("table_lower_bound: published table covers n = 1..17");
  return table[static_cast<std::size_t>(n - 1)];
}

bool binom_odd(std::uint64_t a, std::uint64_t b) { return (b & ~a) == 0; }

int binomial_q_min(int n) {
  if (n < 1) throw std::invalid_argument("binomial_q_min: n must be >= 1");
  for (int q = 1; q <= n; ++q) {
    bool ok = true;
    for (int i = q; i < n; ++i) {
      if (binom_odd(static_cast<std::uint64_t>(n + q), static_cast<std::uint64_t>(i))) {
        ok = false;
        break;
      }
    }
    if (ok) return q;
  }
  return n;  // q = n is vacuous (empty range); unreachable in practice
}

PowerConstraint power_constraint_check(int n, int q) {
  if (q < 1 || q > n) throw std::invalid_argument("power_constraint_check: need 1 <= q <= n");
  int r = 0;
  while ((1 << (r + 1)) <= n + q) ++r;
  const int m = n + q - (1 << r);
  return {r, m, q > m};
}

int alpha(std::uint64_t m) { return std::popcount(m); }

int nu(std::uint64_t k) {
  if (k == 0) throw std::invalid_argument("nu: k must be positive");
  return std::countr_zero(k);
}

int davis_sections(int k, int p) {
  if (p % 4 != 2)
    throw std::invalid_argument("davis_sections: only p = 2 (mod 4) is supported");
  if (k < 1 || p < 1 || !binom_odd(static_cast<std::uint64_t>(k - 1),
                                   static_cast<std::uint64_t>(p)))
    throw std::invalid_argument("davis_sections: hypothesis C(k-1, p) odd fails");
  const int v = nu(static_cast<std::uint64_t>(k));
  static constexpr std::array<int, 4> eps = {0, -2, -2, 0};  // eps(v mod 4, 2)
  return k - p + 2 * v + eps[static_cast<std::size_t>(v % 4)];
}

int davis_exception_bound(int n) {
  if (n < 1) throw std::invalid_argument("davis_exception_bound: n must be >= 1");
  return (n == 1 || n == 3 || n == 7) ? 2 * n + 1 : 2 * n + 2;
}

int immersion_bound(int n) {
  if (n < 3 || n % 2 == 0)
    throw std::invalid_argument("immersion_bound: n must be odd and >= 3");
  const int l = (n - 1) / 2;
  int d = 0;
  while (alpha(static_cast<std::uint64_t>(l - d)) > d + 1) ++d;
  return 2 * (3 * l - 2 * d - alpha(static_cast<std::uint64_t>(l - d))) + 3;
}

int sphere_upper_bound(int n) {
  if (n < 1) throw std::invalid_argument("sphere_upper_bound: n must be >= 1");
  if (n == 1) return 4;
  return (n % 2 == 1) ? 3 * n + 1 : 3 * n + 2;
}

BoundRecord best_known(int n, bool use_published_table) {
  if (n < 1) throw std::invalid_argument("best_known: n must be >= 1");
  BoundRecord rec;
  rec.n = n;

  auto take_lower = [&rec](int value, const std::string& rule) {
    if (rec.lower.rule.empty() || value > rec.lower.value) rec.lower = {value, rule};
  };
  take_lower(basic_bounds(n, false).first, "basic-open");
  take_lower(davis_exception_bound(n), "davis-exception");
  take_lower(2 * n + binomial_q_min(n), "binomial");
  if (n >= 3 && n % 2 == 1) take_lower(immersion_bound(n), "immersion");
  if (use_published_table && n <= 17) take_lower(table_lower_bound(n), "published-table");

  auto take_upper = [&rec](int value, const std::string& rule) {
    if (rec.upper.rule.empty() || value < rec.upper.value) rec.upper = {value, rule};
  };
  take_upper(basic_bounds(n, false).second, "generic");
  take_upper(sphere_upper_bound(n), "sphere");  // valid since N(n) <= N(S^n)
  if (n == 1) take_upper(3, "exact-line");
  if (n == 2) take_upper(6, "exact-complex-cubic");

  if (rec.lower.value == rec.upper.value) rec.exact = rec.lower.value;
  return rec;
}

nlohmann::json record_to_json(const BoundRecord& r) {
  nlohmann::json j{{"n", r.n},
                   {"target", r.target},
                   {"lower", {{"value", r.lower.value}, {"rule", r.lower.rule}}},
                   {"upper", {{"value", r.upper.value}, {"rule", r.upper.rule}}}};
  if (r.exact) j["exact"] = *r.exact;
  return j;
}

std::string record_csv_header() { return "n,target,lower,lower_rule,upper,upper_rule,exact"; }

std::string record_to_csv(const BoundRecord& r) {
  std::ostringstream os;
  os << r.n << ',' << r.target << ',' << r.lower.value << ',' << r.lower.rule << ','
     << r.upper.value << ',' << r.upper.rule << ',';
  if (r.exact) os << *r.exact;
  return os.str();
}

}  // namespace skewtk::bounds
