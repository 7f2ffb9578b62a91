#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "convexchain/asymptotics.hpp"
#include "convexchain/exactdist.hpp"
#include "convexchain/jet.hpp"

using namespace convexchain;
using namespace convexchain::asymptotics;

TEST_CASE("Stirling numbers of the second kind") {
  for (int r = 0; r <= 12; ++r) CHECK(stirling2(r, r) == 1);
  for (int r = 1; r <= 12; ++r) CHECK(stirling2(r, 1) == 1);
  CHECK(stirling2(4, 2) == 7);
  CHECK(stirling2(10, 3) == 9330);
  CHECK(stirling2(5, 0) == 0);
}

TEST_CASE("cumulant prefactors") {
  CHECK(cumulant_prefactor(1) == Rational(2, 3));
  CHECK(cumulant_prefactor(2) == Rational(10, 27));
  CHECK(cumulant_prefactor(6) == Rational(110, 6561));
  CHECK(cumulant_prefactor(9) == Rational(-52598, 1594323));
  const TruncatedSeries z = TruncatedSeries::exp_variable(12);
  const TruncatedSeries alpha = 4.0 * z / (1.0 + sqrt(1.0 + 8.0 * z));
  for (int r = 1; r <= 12; ++r) {
    const double p = to_double(cumulant_prefactor(r));
    CHECK(std::abs(alpha.derivative(r) - p) <= 1e-10 * std::abs(p));
  }
}

TEST_CASE("scaling function mu") {
  CHECK(std::abs(mu(0.0)) <= 1e-12);
  CHECK(mu_prime(0.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(mu_second(0.0) == doctest::Approx(10.0 / 27.0).epsilon(1e-12));
  for (int i = -50; i <= 50; ++i) {
    const double t = i / 10.0;
    CHECK(mu_prime(t) > 0.0);
    CHECK(mu_second(t) > 0.0);
    const double h = 1e-5;
    CHECK(mu_prime(t) == doctest::Approx((mu(t + h) - mu(t - h)) / (2 * h)).epsilon(1e-7));
    CHECK(mu_second(t) == doctest::Approx((mu_prime(t + h) - mu_prime(t - h)) / (2 * h)).epsilon(1e-7));
  }
}

TEST_CASE("rate function values") {
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(rate_I(-0.1) == inf);
  CHECK(rate_I1(-0.1) == inf);
  CHECK(rate_I2(-0.1) == inf);
  CHECK(std::abs(rate_I(2.0 / 3.0)) <= 1e-12);
  CHECK(rate_I(0.0) == 1.0);
  CHECK(rate_I(1e-12) == doctest::Approx(1.0).epsilon(1e-9));
  // mpmath references
  CHECK(rate_I(1.0) == doctest::Approx(0.13245430586897018).epsilon(1e-13));
  CHECK(rate_I(0.25) == doctest::Approx(0.29142557646999446).epsilon(1e-13));
  for (int i = 0; i <= 1000; ++i) {
    const double x = 0.01 + 4.99 * i / 1000.0;
    CHECK(std::abs(rate_I(x) - rate_I1(x) - rate_I2(x)) <= 1e-12);
  }
}

TEST_CASE("rate function is convex") {
  const double h = (5.0 - 0.05) / 999.0;
  for (int i = 1; i < 999; ++i) {
    const double x = 0.05 + i * h;
    CHECK(rate_I(x - h) - 2 * rate_I(x) + rate_I(x + h) > 0.0);
  }
}

TEST_CASE("Legendre-Fenchel solver") {
  auto sq = [](double t) { return 0.5 * t * t; };
  auto id = [](double t) { return t; };
  CHECK(legendre_fenchel(id, sq, 1.3) == doctest::Approx(0.845).epsilon(1e-12));
  CHECK(std::abs(legendre_fenchel(mu_prime, mu, 2.0 / 3.0, mu_second)) <= 1e-10);
  auto pois = [](double t) { return 2.0 * (std::exp(t) - 1.0); };
  auto pois_d = [](double t) { return 2.0 * std::exp(t); };
  CHECK(legendre_fenchel(pois_d, pois, 1.0) == doctest::Approx(rate_I1(1.0)).epsilon(1e-10));
  for (double x : {0.05, 0.1, 0.25, 2.0 / 3.0, 1.0, 2.0, 4.0}) {
    CHECK(std::abs(legendre_fenchel(mu_prime, mu, x, mu_second) - rate_I(x)) <= 1e-9);
  }
  // x at the boundary of the range of mu' gives the limit; outside it fails
  CHECK(legendre_fenchel(mu_prime, mu, 0.0, mu_second) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS(legendre_fenchel(mu_prime, mu, -0.5, mu_second), std::range_error);
}

TEST_CASE("Gaussian predictors and Edgeworth") {
  const CltPredictors e3 = clt_predictors(std::exp(3.0));
  CHECK(e3.mean == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(e3.sd == doctest::Approx(std::sqrt(10.0 / 9.0)).epsilon(1e-14));
  const CltPredictors p5000 = clt_predictors(5000);
  CHECK(p5000.mean == doctest::Approx(5.678).epsilon(1e-3));
  CHECK(p5000.sd == doctest::Approx(1.776).epsilon(1e-3));
  CHECK(clt_predictors(50000).mean / clt_predictors(50000).sd > p5000.mean / p5000.sd);
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(normal_cdf(1.0) == doctest::Approx(0.84134474606854293).epsilon(1e-14));
  // mean + 0 * sd = 10.5: sawtooth 0, symmetric point
  CHECK(edgeworth_cdf(0.0, 10.5, 2.0, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
  // the skewness term vanishes at x = +-1
  const double y = 10.0 + 1.0 * 2.0;
  const double plain = normal_cdf(1.0) + (0.5 - (y - std::floor(y))) * normal_pdf(1.0) / 2.0;
  CHECK(edgeworth_cdf(1.0, 10.0, 2.0, 5.0) == doctest::Approx(plain).epsilon(1e-15));
  CHECK_THROWS(edgeworth_cdf(0.0, 1.0, 0.0, 0.0));
}

TEST_CASE("fixed-k probability asymptotics") {
  CHECK(prob_asymptotic(1000, 0) == doctest::Approx(2.0 / 1000).epsilon(1e-14));
  CHECK(prob_asymptotic(1000, 1) == doctest::Approx(4.0 * std::log(1000.0) / 1000).epsilon(1e-14));
  // leading term n^{-1} 2^n/(n!)^2 at k = 0; p_n itself is 2^n/((n+1)(n!)^2)
  const double log_pn = 20 * std::log(2.0) - std::lgamma(21.0) - std::lgamma(22.0);
  CHECK(log_top_asymptotic(20, 0) - log_pn == doctest::Approx(std::log(21.0 / 20.0)).epsilon(1e-12));
  // k = 1: ratio to the exact p_{n-1} tends to 1
  const double r = std::exp(std::log(to_double(exact::top_probability(100, 1))) - log_top_asymptotic(100, 1));
  CHECK(std::abs(r - 1.0) < 0.01);
}

TEST_CASE("saddle point") {
  const SaddlePoint s = saddle_point(2.0 / 3.0);
  CHECK(s.alpha_star == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s.sigma_star == doctest::Approx(2.0 / std::sqrt(5.0)).epsilon(1e-15));
  for (double c : {0.1, 1.0 / 3.0, 0.5, 0.7}) {
    const SaddlePoint t = saddle_point(c);
    CHECK(t.alpha_star > 0.0);
    CHECK(std::abs(c * (1.0 / t.alpha_star + 1.0 / (1.0 + t.alpha_star)) - 1.0) <= 1e-12);
  }
  CHECK_THROWS_AS(saddle_point(0.75), std::domain_error);
  CHECK_THROWS_AS(saddle_point(0.0), std::domain_error);
  const double L = std::log(1e6);
  CHECK(saddle_probability_at(1e6, 2.0 / 3.0, 2.0 / 3.0 * L) ==
        doctest::Approx(std::sqrt(27.0 / 10.0) / std::sqrt(2 * std::numbers::pi * L)).epsilon(1e-12));
  CHECK_THROWS(saddle_probability(2, 0.5));  // floor(c log n) = 0
}

TEST_CASE("saddle and LDP consistency") {
  for (double c : {1.0 / 3.0, 0.5, 2.0 / 3.0}) {
    double prev = std::numeric_limits<double>::infinity();
    for (double n : {1e4, 1e6, 1e8}) {
      const double gap = std::abs(-std::log(saddle_probability(n, c)) / std::log(n) - rate_I(c));
      CHECK(gap < prev);
      prev = gap;
    }
  }
}

TEST_CASE("LDP exponent estimate") {
  const double at_one = ldp_exponent_estimate(1000000, 1.0);
  CHECK(std::abs(at_one - rate_I(1.0)) <= 0.15);
  const double small = ldp_exponent_estimate(1000000, 0.08);  // k_n = 1
  CHECK(small == doctest::Approx(1.0).epsilon(0.2));
}
