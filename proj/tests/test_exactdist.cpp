#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "convexchain/exactdist.hpp"
#include "convexchain/rational.hpp"

using namespace convexchain;
using exact::distribution_exact;

namespace {
Rational q(long p, long d) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}
}  // namespace

TEST_CASE("brute force: small values and domain") {
  CHECK(exact::brute_force_pk(2, 1) == q(2, 3));
  CHECK(exact::brute_force_pk(2, 2) == q(1, 3));
  CHECK(exact::brute_force_pk(5, 5) == q(1, 2700));
  CHECK(exact::brute_force_pk(0, 0) == 1);
  CHECK_THROWS_AS(exact::brute_force_pk(3, 0), std::invalid_argument);
  CHECK_THROWS_AS(exact::brute_force_pk(11, 3), std::invalid_argument);
}

TEST_CASE("exact rows: frozen values from an independent composition enumeration") {
  // n = 7, k = 0..7
  const std::vector<Rational> row7 = {q(0, 1),         q(1, 4),      q(118, 245), q(40141, 176400),
                                      q(1262, 33075), q(293, 113400), q(1, 14175), q(1, 1587600)};
  const exact::ExactDistribution d = distribution_exact(7);
  REQUIRE(d.probs.size() == 8);
  for (int k = 0; k <= 7; ++k) CHECK(d[k] == row7[static_cast<size_t>(k)]);
  CHECK(distribution_exact(0).probs == std::vector<Rational>{Rational(1)});
  CHECK(distribution_exact(2).probs == std::vector<Rational>{Rational(0), q(2, 3), q(1, 3)});
  CHECK_THROWS(distribution_exact(exact::kExactCap + 1));
}

TEST_CASE("exact rows: OpenMP kernel equals the serial reference") {
  for (int n : {0, 1, 5, 63, 64, 65, 150}) {
    CHECK(distribution_exact(n).probs == exact::distribution_exact_serial(n).probs);
  }
}

TEST_CASE("exact rows agree with brute force for n <= 9") {
  for (int n = 1; n <= 9; ++n) {
    const exact::ExactDistribution d = distribution_exact(n);
    CHECK(d[0] == 0);
    for (int k = 1; k <= n; ++k) CHECK(d[k] == exact::brute_force_pk(n, k));
  }
}

TEST_CASE("genpoly: base cases, normalization, frozen value") {
  const exact::GenPoly g1 = exact::genpoly(1);
  CHECK(g1.coeffs == std::vector<Rational>{Rational(0), Rational(1)});
  const exact::GenPoly g2 = exact::genpoly(2);
  CHECK(g2.coeffs == std::vector<Rational>{Rational(0), q(2, 3), q(1, 3)});
  const exact::GenPoly g8 = exact::genpoly(8);
  CHECK(g8(Rational(1)) == 1);
  Rational half(1, 2);
  Rational expect("771087157/2926264320");
  expect.canonicalize();
  CHECK(g8(half) == expect);
  CHECK(exact::exact_mean(g8) == q(1741, 420));
  CHECK(exact::exact_variance(g8) == q(369283, 529200));
  // independent routes: polynomial recurrence vs integer-scaled row
  for (int n : {3, 17, 40}) CHECK(exact::genpoly(n).coeffs == distribution_exact(n).probs);
}

TEST_CASE("eval_G agrees with genpoly coefficients") {
  CHECK(exact::eval_G(50, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  for (int n : {1, 2, 10, 57, 200}) {
    const exact::GenPoly g = exact::genpoly(n);
    for (double z : {0.25, 0.5, 1.0, 1.5}) {
      const double direct = g.eval(z);
      CHECK(std::abs(exact::eval_G(n, z) - direct) <= 1e-12 * std::abs(direct));
    }
  }
  CHECK_THROWS_AS(exact::eval_G(2000, 1e6), std::overflow_error);
}

TEST_CASE("eval_G on a jet gives the exact mean") {
  const exact::GenPoly g = exact::genpoly(100);
  const TruncatedSeries jet = exact::eval_G(100, TruncatedSeries::exp_variable(2));
  const double mean = to_double(exact::exact_mean(g));
  CHECK(jet[1] == doctest::Approx(mean - 2.0).epsilon(1e-12));
}

TEST_CASE("cumulants") {
  const exact::CumulantVector one = exact::exact_cumulants(1, 2);
  CHECK(one(1) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(std::abs(one(2)) < 1e-14);
  const exact::CumulantVector c8 = exact::exact_cumulants(8, 4);
  CHECK(c8(3) == doctest::Approx(42715381.0 / 166698000.0).epsilon(1e-12));
  CHECK(c8(4) == doctest::Approx(-2392385333.0 / 140026320000.0).epsilon(1e-10));
  for (int n = 2; n <= 50; ++n) {
    const exact::GenPoly g = exact::genpoly(n);
    const exact::CumulantVector c = exact::exact_cumulants(n, 2);
    CHECK(c(1) == doctest::Approx(to_double(exact::exact_mean(g))).epsilon(1e-9));
    CHECK(c(2) == doctest::Approx(to_double(exact::exact_variance(g))).epsilon(1e-9));
    CHECK(c(2) > 0.0);
  }
  const exact::CumulantVector big = exact::exact_cumulants(10000, 2);
  CHECK(std::abs(big(2) / std::log(1e4) / (10.0 / 27.0) - 1.0) <= 0.25);
  CHECK_THROWS(exact::exact_cumulants(10, 13));
}

TEST_CASE("tail_dp: closed forms for columns 1 and 2") {
  const exact::TailTable t = exact::tail_dp(10000, 10);
  double harmonic = 0.0;  // sum_{j=1}^{n-1} 1/(j+1)
  double worst = 0.0;
  for (int n = 2; n <= 10000; ++n) {
    harmonic += 1.0 / n;
    const auto& p = t.row(n).p;
    const double p1 = 2.0 / (n + 1.0);
    const double p2 = 4.0 / n * (harmonic - 1.0 + 2.0 / (n + 1.0));
    worst = std::max({worst, std::abs(p[1] / p1 - 1.0), std::abs(p[2] / p2 - 1.0)});
  }
  CHECK(worst <= 1e-12);
  CHECK_FALSE(t.underflow);
}

TEST_CASE("tail_dp: full row 100 matches the exact row") {
  const int keep[] = {100};
  const exact::TailTable t = exact::tail_dp(100, 100, keep);
  const exact::ExactDistribution d = distribution_exact(100);
  for (int k = 0; k <= 100; ++k) {
    const double e = to_double(d[k]);
    if (t.row(100).flushed[static_cast<size_t>(k)]) {
      CHECK(e < 1e-279);
      continue;
    }
    CHECK(std::abs(t.row(100).p[static_cast<size_t>(k)] - e) <= 1e-12 * e);
  }
  CHECK_THROWS_AS(t.row(99), std::out_of_range);
}

TEST_CASE("tail_dp flushes tiny retained entries") {
  const int keep[] = {200};
  const exact::TailTable t = exact::tail_dp(200, 200, keep);
  CHECK(t.underflow);
  const auto& row = t.row(200);
  CHECK(row.flushed[200] == 1);  // p_200 ~ 1e-690
  CHECK(row.p[200] == 0.0);
  CHECK(row.flushed[5] == 0);
}

TEST_CASE("float rows are unimodal") {
  // every row up to 10^5, truncated at k = 80 where the tail is decreasing
  const exact::TailTable t = exact::tail_dp(100000, 80);
  int bad = -1;
  for (const auto& [n, row] : t.rows) {
    const int top = std::min(n, 80);
    int changes = 0;
    bool rising = true;
    for (int k = 1; k <= top; ++k) {
      if (row.flushed[static_cast<size_t>(k)]) break;
      const bool up = row.p[static_cast<size_t>(k)] > row.p[static_cast<size_t>(k - 1)];
      if (rising && !up) rising = false, ++changes;
      else if (!rising && up) ++changes;
    }
    if (changes > 1) {
      bad = n;
      break;
    }
  }
  CHECK(bad == -1);
  const std::vector<double> f = exact::distribution_float(3000);
  double sum = 0.0;
  for (double v : f) sum += v;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("top probabilities") {
  CHECK(exact::top_probability(5, 0) == q(1, 2700));
  CHECK(exact::top_probability(5, 1) == q(2, 135));
  for (int n : {4, 10, 25}) CHECK(exact::top_probability(n, 2) == distribution_exact(n)[n - 2]);
  CHECK(exact::top_probability(10, 3) == distribution_exact(10)[7]);
  CHECK_THROWS(exact::top_probability(3, 2));
  CHECK_THROWS(exact::top_probability(10, 4));
}

TEST_CASE("Newton inequalities") {
  for (int n : {2, 10, 60}) CHECK(exact::newton_inequality_check(n).holds);
}

TEST_CASE("rational serialization") {
  CHECK(to_string(Rational(1)) == "1/1");
  CHECK(to_string(Rational(0)) == "0/1");
  CHECK(to_string(q(2, 3)) == "2/3");
  CHECK(rational_from_string("4/6") == q(2, 3));
  CHECK(rational_from_string("7") == 7);
  CHECK(to_double(q(1, 3)) == doctest::Approx(1.0 / 3.0).epsilon(1e-16));
}
