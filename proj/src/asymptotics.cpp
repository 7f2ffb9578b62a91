#include "convexchain/asymptotics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "convexchain/analytic.hpp"

namespace convexchain::asymptotics {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kStirlingCap = 30;
constexpr int kMaxNewtonIterations = 60;

}  // namespace

BigInt stirling2(int r, int k) {
  if (r < 0 || r > kStirlingCap || k < 0 || k > r) {
    throw std::invalid_argument("stirling2 requires 0 <= k <= r <= 30");
  }
  std::vector<BigInt> row{BigInt(1)};  // S(0, .)
  for (int m = 1; m <= r; ++m) {
    std::vector<BigInt> next(static_cast<size_t>(m) + 1, BigInt(0));
    for (int j = 1; j <= m; ++j) {
      const BigInt stay = j < m ? BigInt(row[static_cast<size_t>(j)] * j) : BigInt(0);
      next[static_cast<size_t>(j)] = stay + row[static_cast<size_t>(j - 1)];
    }
    row = std::move(next);
  }
  return row[static_cast<size_t>(k)];
}

Rational cumulant_prefactor(int r) {
  if (r < 1 || r > kStirlingCap) throw std::invalid_argument("cumulant_prefactor requires 1 <= r <= 30");
  Rational sum = 0;
  for (int k = 1; k <= r; ++k) {
    // 2^k (2k-2)! / (3^{2k-1} (k-1)!)
    BigInt num, den, f;
    mpz_ui_pow_ui(num.get_mpz_t(), 2, static_cast<unsigned long>(k));
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(2 * k - 2));
    num *= f;
    mpz_ui_pow_ui(den.get_mpz_t(), 3, static_cast<unsigned long>(2 * k - 1));
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k - 1));
    den *= f;
    Rational term(BigInt(stirling2(r, k) * num), den);
    term.canonicalize();
    if (k % 2 == 0) {
      sum -= term;
    } else {
      sum += term;
    }
  }
  return sum;
}

double mu(double t) { return analytic::alpha_of_z(std::exp(t)) - 1.0; }

double mu_prime(double t) {
  const double y = std::exp(t);
  return 2.0 * y / std::sqrt(8.0 * y + 1.0);
}

double mu_second(double t) {
  const double y = std::exp(t);
  return 2.0 * y * (4.0 * y + 1.0) / std::pow(8.0 * y + 1.0, 1.5);
}

double psi(double t) {
  const double a = analytic::alpha_of_z(std::exp(t));
  return 2.0 * t + std::log(analytic::K_of_alpha(a)) - std::lgamma(a);
}

double rate_I(double x) {
  if (x < 0.0) return kInf;
  if (x == 0.0) return 1.0;
  return x * std::log(x / 2.0) + x * std::asinh(2.0 * x) - x - 0.5 * std::sqrt(1.0 + 4.0 * x * x) + 1.5;
}

double rate_I1(double x) {
  if (x < 0.0) return kInf;
  if (x == 0.0) return 2.0;
  return x * std::log(x / 2.0) - x + 2.0;
}

double rate_I2(double x) {
  if (x < 0.0) return kInf;
  return x * std::asinh(2.0 * x) - 0.5 * std::sqrt(1.0 + 4.0 * x * x) - 0.5;
}

double legendre_fenchel(const RealFn& f_prime, const RealFn& f, double x, const RealFn& f_second) {
  const double tol = 1e-12 * std::max(1.0, std::abs(x));
  auto g = [&](double t) { return f_prime(t) - x; };
  auto curvature = [&](double t) {
    if (f_second) return f_second(t);
    const double h = 1e-6 * std::max(1.0, std::abs(t));
    return (f_prime(t + h) - f_prime(t - h)) / (2.0 * h);
  };
  // Expanding bracket around t = 0. f' is increasing, so g changes sign once.
  double lo = -1.0, hi = 1.0;
  constexpr double kReach = 700.0;
  while (g(lo) > 0.0 && lo > -kReach) lo = std::max(2.0 * lo, -kReach);
  while (g(hi) < 0.0 && hi < kReach) hi = std::min(2.0 * hi, kReach);
  if (g(lo) > 0.0 || g(hi) < 0.0) {
    // x may still sit on the boundary of the range, approached as t -> +-inf.
    const double edge = g(lo) > 0.0 ? lo : hi;
    if (std::abs(g(edge)) <= tol) return x * edge - f(edge);
    throw std::range_error("legendre_fenchel: x = " + std::to_string(x) + " is outside the range of f'");
  }
  double t = std::clamp(0.0, lo, hi);
  for (int it = 0; it < kMaxNewtonIterations; ++it) {
    const double gt = g(t);
    if (std::abs(gt) <= tol) break;
    if (gt > 0.0) {
      hi = t;
    } else {
      lo = t;
    }
    const double d = curvature(t);
    double next = (d > 0.0 && std::isfinite(d)) ? t - gt / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == t) break;
    t = next;
  }
  return x * t - f(t);
}

CltPredictors clt_predictors(double n) {
  if (!(n >= 2.0)) throw std::invalid_argument("clt_predictors requires n >= 2");
  const double L = std::log(n);
  return {2.0 / 3.0 * L, std::sqrt(10.0 / 27.0 * L)};
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

double edgeworth_cdf(double x, double mean, double sd, double kappa3) {
  if (!(sd > 0.0)) throw std::invalid_argument("edgeworth_cdf requires sd > 0");
  const double skew = kappa3 / (sd * sd * sd);
  const double y = mean + x * sd;
  const double sawtooth = 0.5 - (y - std::floor(y));
  const double phi = normal_pdf(x);
  return normal_cdf(x) + skew / 6.0 * (1.0 - x * x) * phi + sawtooth * phi / sd;
}

double prob_asymptotic(double n, int k) {
  if (k < 0) throw std::invalid_argument("prob_asymptotic requires k >= 0");
  const double L = std::log(n);
  return std::exp((k + 1) * std::numbers::ln2 + k * std::log(L) - std::lgamma(k + 1.0) - L);
}

double log_top_asymptotic(double n, int k) {
  if (k < 0) throw std::invalid_argument("log_top_asymptotic requires k >= 0");
  return (3.0 * k - 1.0) * std::log(n) + n * std::numbers::ln2 - k * std::log(3.0) - std::lgamma(k + 1.0) -
         2.0 * std::lgamma(n + 1.0);
}

SaddlePoint saddle_point(double c) {
  if (!(c > 0.0 && c < 0.75)) throw std::domain_error("saddle point requires c in (0, 3/4)");
  SaddlePoint s;
  s.c = c;
  s.alpha_star = c - 0.5 + 0.5 * std::sqrt(4.0 * c * c + 1.0);
  const double a = s.alpha_star;
  s.sigma_star = 1.0 / std::sqrt(1.0 / (a * a) + 1.0 / ((a + 1.0) * (a + 1.0)));
  s.H = (1.0 / a + 1.0 / (a + 1.0)) * analytic::K_of_alpha(a) / std::tgamma(a);
  return s;
}

double saddle_probability_at(double n, double c, double k) {
  if (!(k > 0.0)) throw std::domain_error("saddle_probability requires k > 0");
  const SaddlePoint s = saddle_point(c);
  const double a = s.alpha_star;
  const double log_binom = std::log(0.5 * a * (a + 1.0));  // C(a+1, 2)
  const double log_value = std::log(s.sigma_star / std::sqrt(2.0 * std::numbers::pi) * s.H) - k * log_binom +
                           (a - 1.0) * std::log(n) - 0.5 * std::log(k);
  return std::exp(log_value);
}

double saddle_probability(double n, double c) {
  const double k = std::floor(c * std::log(n));
  if (k < 1.0) throw std::domain_error("saddle_probability: floor(c log n) must be at least 1");
  return saddle_probability_at(n, c, k);
}

double ldp_exponent_estimate(const exact::TailTable& table, int n, double c) {
  const int k = static_cast<int>(std::floor(c * std::log(static_cast<double>(n))));
  if (k > table.K) throw std::out_of_range("ldp_exponent_estimate: k_n exceeds the table width");
  const exact::TailRow& row = table.row(n);
  const double p = row.p[static_cast<size_t>(k)];
  if (row.flushed[static_cast<size_t>(k)] || !(p > 0.0)) {
    throw std::domain_error("ldp_exponent_estimate: p_{k_n} underflowed or is zero");
  }
  return -std::log(p) / std::log(static_cast<double>(n));
}

double ldp_exponent_estimate(int n, double c) {
  const int k = static_cast<int>(std::floor(c * std::log(static_cast<double>(n))));
  const int keep[] = {n};
  return ldp_exponent_estimate(exact::tail_dp(n, std::max(k, 1), keep), n, c);
}

}  // namespace convexchain::asymptotics
