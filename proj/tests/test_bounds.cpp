#include <doctest.h>

#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "skewtk/bounds.hpp"

using namespace skewtk::bounds;

TEST_CASE("basic bounds") {
  CHECK(basic_bounds(1, false) == std::make_pair(3, 5));
  CHECK(basic_bounds(1, true) == std::make_pair(4, 5));
  CHECK(basic_bounds(5, false) == std::make_pair(11, 21));
  CHECK_THROWS_AS(basic_bounds(0, false), std::invalid_argument);
}

TEST_CASE("published lower-bound table") {
  const int expect[] = {3, 6, 7, 12, 13, 14, 15, 24, 25, 27, 28, 31, 36, 37, 38, 48, 49};
  for (int n = 1; n <= 17; ++n) CHECK(table_lower_bound(n) == expect[n - 1]);
  CHECK_THROWS_AS(table_lower_bound(0), std::invalid_argument);
  CHECK_THROWS_AS(table_lower_bound(18), std::invalid_argument);
}

TEST_CASE("binomial parity agrees with exact Pascal triangle up to 64") {
  for (int a = 0; a <= 64; ++a)
    for (int b = 0; b <= a; ++b)
      CHECK(binom_odd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b)) ==
            oracles::pascal_binom_odd(a, b));
}

TEST_CASE("binomial q_min worked values") {
  CHECK(binomial_q_min(2) == 2);
  CHECK(binomial_q_min(3) == 1);  // 2n+q = 7
  CHECK(binomial_q_min(5) == 3);  // 13
  CHECK(binomial_q_min(6) == 2);
  CHECK(binomial_q_min(7) == 1);  // 15
  CHECK(binomial_q_min(9) == 7);  // 25
  // powers of two take the maximal value q = n
  for (int l = 0; l <= 5; ++l) CHECK(binomial_q_min(1 << l) == (1 << l));
}

TEST_CASE("binomial q_min defining property") {
  for (int n = 1; n <= 40; ++n) {
    const int q = binomial_q_min(n);
    CHECK(q >= 1);
    CHECK(q <= n);
    for (int i = q; i < n; ++i)
      CHECK_FALSE(oracles::pascal_binom_odd(n + q, i));
    // minimality: every smaller q fails
    for (int q2 = 1; q2 < q; ++q2) {
      bool fails = false;
      for (int i = q2; i < n; ++i)
        if (oracles::pascal_binom_odd(n + q2, i)) fails = true;
      CHECK(fails);
    }
  }
}

TEST_CASE("power constraint decomposition") {
  auto pc = power_constraint_check(9, 7);  // 16 = 2^4 + 0, q=7 > m=0
  CHECK(pc.r == 4);
  CHECK(pc.m == 0);
  CHECK(pc.consistent);
  auto pc2 = power_constraint_check(5, 3);  // 8 = 2^3 + 0
  CHECK(pc2.r == 3);
  CHECK(pc2.m == 0);
  CHECK(pc2.consistent);
  auto pc3 = power_constraint_check(6, 1);  // 7 = 4 + 3, q=1 <= m=3
  CHECK(pc3.m == 3);
  CHECK_FALSE(pc3.consistent);
  CHECK_THROWS_AS(power_constraint_check(4, 0), std::invalid_argument);
  CHECK_THROWS_AS(power_constraint_check(4, 5), std::invalid_argument);
}

TEST_CASE("alpha and nu") {
  CHECK(alpha(0) == 0);
  CHECK(alpha(7) == 3);
  CHECK(alpha(8) == 1);
  CHECK(alpha(0b1011010) == 4);
  CHECK(nu(1) == 0);
  CHECK(nu(8) == 3);
  CHECK(nu(12) == 2);
  CHECK_THROWS_AS(nu(0), std::invalid_argument);
}

TEST_CASE("davis sections") {
  CHECK(davis_sections(8, 6) == 8);    // nu=3, eps(-1 mod 4 -> 3)=0: 8-6+6+0
  CHECK(davis_sections(16, 14) == 10); // nu=4, eps(0)=0: 16-14+8+0
  CHECK(davis_sections(4, 2) == 4);    // nu=2, eps(2)=-2: 4-2+4-2
  CHECK_THROWS_AS(davis_sections(8, 4), std::invalid_argument);  // p != 2 mod 4
  CHECK_THROWS_AS(davis_sections(4, 6), std::invalid_argument);  // C(3,6) even
}

TEST_CASE("davis exception bound") {
  CHECK(davis_exception_bound(1) == 3);
  CHECK(davis_exception_bound(3) == 7);
  CHECK(davis_exception_bound(7) == 15);
  CHECK(davis_exception_bound(2) == 6);
  CHECK(davis_exception_bound(4) == 10);
}

TEST_CASE("immersion bound") {
  CHECK(immersion_bound(9) == 25);
  CHECK(immersion_bound(11) == 27);
  CHECK(immersion_bound(13) == 31);
  CHECK(immersion_bound(15) == 37);
  CHECK(immersion_bound(17) == 49);
  CHECK_THROWS_AS(immersion_bound(4), std::invalid_argument);
  CHECK_THROWS_AS(immersion_bound(1), std::invalid_argument);
}

TEST_CASE("sphere upper bound") {
  CHECK(sphere_upper_bound(1) == 4);
  CHECK(sphere_upper_bound(2) == 8);
  CHECK(sphere_upper_bound(3) == 10);
  CHECK(sphere_upper_bound(4) == 14);
}

TEST_CASE("best_known relations") {
  for (int n = 1; n <= 30; ++n) {
    auto off = best_known(n, false);
    auto on = best_known(n, true);
    CHECK(off.lower.value <= off.upper.value);
    CHECK(on.lower.value <= on.upper.value);
    CHECK(on.lower.value >= off.lower.value);
    CHECK(off.lower.value >= 2 * n + 1);
    if (n <= 17) {
      CHECK(on.lower.value == table_lower_bound(n));
      CHECK(off.lower.value <= table_lower_bound(n));
    }
  }
  CHECK(best_known(1, true).exact == 3);
  CHECK(best_known(2, true).exact == 6);
}

TEST_CASE("record serialization") {
  auto rec = best_known(2, true);
  auto j = record_to_json(rec);
  CHECK(j["n"] == 2);
  CHECK(j["lower"]["value"] == 6);
  CHECK(j["exact"] == 6);
  CHECK(record_csv_header() == "n,target,lower,lower_rule,upper,upper_rule,exact");
  CHECK(record_to_csv(rec).rfind("2,disk,6,", 0) == 0);
}
