#pragma once

#include <nlohmann/json_fwd.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

namespace skewtk::bounds {

struct Bound {
  int value = 0;
  std::string rule;
};

// Lower/upper bounds on the least ambient dimension of a totally skew disk,
// with the rule that produced each side.
struct BoundRecord {
  int n = 0;
  std::string target = "disk";
  Bound lower, upper;
  std::optional<int> exact;
};

// (lower, upper) with lower = 2n+2 for closed manifolds, 2n+1 otherwise;
// upper = 4n+1.
std::pair<int, int> basic_bounds(int n, bool closed);

// Published lower-bound table for n = 1..17.
int table_lower_bound(int n);

// C(a, b) odd iff the bits of b are a subset of the bits of a.
bool binom_odd(std::uint64_t a, std::uint64_t b);

// Smallest q in 1..n such that C(n+q, i) is even for all i in q..n-1
// (an empty range counts as satisfied). Yields the lower bound 2n+q.
int binomial_q_min(int n);

struct PowerConstraint {
  int r = 0, m = 0;
  bool consistent = false;  // q > m, i.e. N(n)=2n+q survives
};

// Writes n+q = 2^r + m with 0 <= m < 2^r and checks q > m.
PowerConstraint power_constraint_check(int n, int q);

// population count of the binary expansion
int alpha(std::uint64_t m);

// exponent of the largest power of 2 dividing k
int nu(std::uint64_t k);

// Davis upper bound s = k - p + 2 nu(k) + eps(nu(k) mod 4, 2) on the number
// of independent sections of k xi_p. Requires p = 2 (mod 4) (the only eps
// column available) and C(k-1, p) odd; throws otherwise.
int davis_sections(int k, int p);

// 2n+1 for n in {1, 3, 7}, else 2n+2.
int davis_exception_bound(int n);

// For odd n = 2l+1 >= 3: 2(3l - 2d - alpha(l-d)) + 3, d the smallest
// nonnegative integer with alpha(l-d) <= d+1.
int immersion_bound(int n);

// 3n+1 for odd n, 3n+2 for even n; n=1 gives the exact value 4.
int sphere_upper_bound(int n);

BoundRecord best_known(int n, bool use_published_table);

nlohmann::json record_to_json(const BoundRecord& r);
std::string record_csv_header();
std::string record_to_csv(const BoundRecord& r);

}  // namespace skewtk::bounds
