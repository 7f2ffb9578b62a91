#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "convexchain/jet.hpp"

using convexchain::TruncatedSeries;

TEST_CASE("variable and exp_variable") {
  const TruncatedSeries t = TruncatedSeries::variable(4);
  CHECK(t[0] == 0.0);
  CHECK(t[1] == 1.0);
  CHECK(t[2] == 0.0);
  const TruncatedSeries e = TruncatedSeries::exp_variable(5);
  for (int j = 0; j <= 5; ++j) CHECK(e.derivative(j) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("products truncate above the order") {
  const TruncatedSeries t = TruncatedSeries::variable(3);
  const TruncatedSeries p = (1.0 + t) * (1.0 + t) * (1.0 + t) * (1.0 + t);  // 1 + 4t + 6t^2 + 4t^3 (+ t^4 dropped)
  CHECK(p.order() == 3);
  CHECK(p[0] == 1.0);
  CHECK(p[1] == 4.0);
  CHECK(p[2] == 6.0);
  CHECK(p[3] == 4.0);
}

TEST_CASE("division inverts multiplication") {
  const TruncatedSeries t = TruncatedSeries::variable(8);
  const TruncatedSeries a = 2.0 + 3.0 * t - t * t;
  const TruncatedSeries b = 1.5 - 0.25 * t + 0.1 * t * t * t;
  const TruncatedSeries q = (a * b) / b;
  for (int j = 0; j <= 8; ++j) CHECK(q[j] == doctest::Approx(a[j]).epsilon(1e-13));
}

TEST_CASE("exp of log is the identity within 1e-12 relative") {
  const TruncatedSeries t = TruncatedSeries::variable(12);
  const TruncatedSeries a = 0.7 + 0.4 * t + 0.3 * t * t - 0.05 * t * t * t;
  const TruncatedSeries b = exp(log(a));
  for (int j = 0; j <= 12; ++j) {
    CHECK(std::abs(b[j] - a[j]) <= 1e-12 * std::max(1.0, std::abs(a[j])));
  }
}

TEST_CASE("log of e^t is t, sqrt squares back") {
  const TruncatedSeries lg = log(TruncatedSeries::exp_variable(10));
  CHECK(lg[0] == doctest::Approx(0.0));
  CHECK(lg[1] == doctest::Approx(1.0));
  for (int j = 2; j <= 10; ++j) CHECK(std::abs(lg[j]) < 1e-14);

  const TruncatedSeries t = TruncatedSeries::variable(10);
  const TruncatedSeries a = 1.0 + 8.0 * TruncatedSeries::exp_variable(10);
  const TruncatedSeries r = sqrt(a);
  const TruncatedSeries back = r * r;
  for (int j = 0; j <= 10; ++j) CHECK(back[j] == doctest::Approx(a[j]).epsilon(1e-13));
  (void)t;
}

TEST_CASE("known Taylor coefficients: log(1 + t), exp(2t)") {
  const TruncatedSeries t = TruncatedSeries::variable(6);
  const TruncatedSeries l = log(1.0 + t);
  for (int j = 1; j <= 6; ++j) CHECK(l[j] == doctest::Approx((j % 2 ? 1.0 : -1.0) / j).epsilon(1e-14));
  const TruncatedSeries e = exp(2.0 * t);
  for (int j = 0; j <= 6; ++j) CHECK(e.derivative(j) == doctest::Approx(std::pow(2.0, j)).epsilon(1e-14));
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(TruncatedSeries::variable(2) + TruncatedSeries::variable(3), std::invalid_argument);
  CHECK_THROWS(log(TruncatedSeries(3, -1.0)));
  CHECK_THROWS(sqrt(TruncatedSeries(3, 0.0)));
  TruncatedSeries bad(2, 1.0);
  bad[1] = std::nan("");
  CHECK_FALSE(isfinite(bad));
  CHECK(isfinite(TruncatedSeries::exp_variable(2)));
}
