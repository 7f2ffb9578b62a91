#include "convexchain/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace convexchain::analytic {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxSeriesTerms = 2'000'000;

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

// Nearest half-integer k + 1/2 with k >= 0, and its distance.
std::pair<int, double> nearest_half_integer(double alpha) {
  const int k = std::max(0, static_cast<int>(std::lround(alpha - 0.5)));
  return {k, std::abs(alpha - (k + 0.5))};
}

// tan(pi a) / a, finite at a = 0.
double tan_pi_over(double a) {
  if (std::abs(a) < 1e-8) return std::numbers::pi * (1.0 + std::pow(std::numbers::pi * a, 2) / 3.0);
  return std::tan(std::numbers::pi * a) / a;
}

}  // namespace

double alpha_of_z(double z) {
  if (!(z > -0.125)) throw std::domain_error("alpha_of_z requires z > -1/8");
  // (sqrt(8z+1) - 1)/2 without the cancellation near z = 0
  return 4.0 * z / (1.0 + std::sqrt(1.0 + 8.0 * z));
}

double z_of_alpha(double alpha) { return 0.5 * alpha * (alpha + 1.0); }

double reciprocal_gamma(double x) {
  if (is_nonpositive_integer(x)) return 0.0;
  return 1.0 / std::tgamma(x);
}

SeriesValue hyp2f1(const HypergeomParams& p, double u) {
  if (is_nonpositive_integer(p.c)) throw std::domain_error("hyp2f1: c is a non-positive integer");
  if (!(std::abs(u) < 1.0)) throw std::domain_error("hyp2f1: series requires |u| < 1");
  auto ratio = [&](int n) { return (p.a + n) * (p.b + n) / ((p.c + n) * (n + 1.0)); };
  SeriesValue out;
  // Neumaier-compensated sum
  double sum = 1.0;
  double comp = 0.0;
  double term = 1.0;
  const double au = std::abs(u);
  for (int n = 0; n < kMaxSeriesTerms; ++n) {
    term *= ratio(n) * u;
    out.terms = n + 1;
    if (term == 0.0) {  // terminating series
      out.converged = true;
      out.error_estimate = 0.0;
      break;
    }
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
    // the term ratios tend monotonically to |u|, so the tail is dominated by
    // a geometric series with the larger of the two
    const double rho = std::max(std::abs(ratio(n + 1)) * au, au);
    if (rho >= 1.0) continue;  // terms still growing
    out.error_estimate = std::abs(term) * rho / (1.0 - rho);
    if (n >= 8 && out.error_estimate <= 1e-17 * std::abs(sum + comp)) {
      out.converged = true;
      break;
    }
  }
  out.value = sum + comp;
  return out;
}

SeriesValue f_closed(double u, double z) {
  if (!(u >= 0.0 && u < 1.0)) throw std::domain_error("f_closed requires u in [0, 1)");
  const double alpha = alpha_of_z(z);
  SeriesValue h = hyp2f1({1.0 - alpha, -alpha, 2.0}, u);
  const double prefactor = std::pow(1.0 - u, -alpha);
  h.value *= prefactor;
  h.error_estimate *= prefactor;
  return h;
}

Representations representations(double u, double z) {
  if (!(u >= 0.0 && u < 1.0)) throw std::domain_error("representations require u in [0, 1)");
  const double alpha = alpha_of_z(z);
  Representations r;
  r.direct = std::pow(1.0 - u, -alpha) * hyp2f1({1.0 - alpha, -alpha, 2.0}, u).value;
  r.euler = std::pow(1.0 - u, 1.0 + alpha) * hyp2f1({2.0 + alpha, 1.0 + alpha, 2.0}, u).value;
  // Pfaff: 2F1(a, b; c; u) = (1-u)^{-a} 2F1(a, c-b; c; u/(u-1)) with a = -alpha
  if (u < 0.5) r.pfaff = hyp2f1({-alpha, 1.0 + alpha, 2.0}, u / (u - 1.0)).value;
  const double scale = std::abs(r.direct);
  double dev = std::abs(r.direct - r.euler);
  if (r.pfaff) {
    dev = std::max({dev, std::abs(r.direct - *r.pfaff), std::abs(r.euler - *r.pfaff)});
  }
  r.max_deviation = dev / scale;
  return r;
}

double representation_check(double u, double z) { return representations(u, z).max_deviation; }

namespace {

template <class T>
std::vector<T> series_coeffs_impl(double z, int N) {
  if (N < 0) throw std::invalid_argument("series_coeffs requires N >= 0");
  alpha_of_z(z);  // domain check
  const T zt = z;
  const T alpha = 4 * zt / (1 + std::sqrt(1 + 8 * zt));
  const size_t len = static_cast<size_t>(N) + 1;
  std::vector<T> hyp(len), binom(len);
  hyp[0] = 1;
  binom[0] = 1;
  const T a = 1 - alpha;
  const T b = -alpha;
  for (size_t j = 1; j < len; ++j) {
    const T jm = static_cast<T>(j - 1);
    hyp[j] = hyp[j - 1] * (a + jm) * (b + jm) / ((2 + jm) * static_cast<T>(j));
    binom[j] = binom[j - 1] * (alpha + jm) / static_cast<T>(j);
  }
  std::vector<T> g(len, 0);
  for (size_t n = 0; n < len; ++n) {
    T s = 0;
    for (size_t j = 0; j <= n; ++j) s += hyp[j] * binom[n - j];
    g[n] = s;
  }
  return g;
}

}  // namespace

std::vector<double> series_coeffs(double z, int N) {
  const std::vector<long double> g = series_coeffs_impl<long double>(z, N);
  return std::vector<double>(g.begin(), g.end());
}

double K_of_alpha(double alpha) {
  if (!(alpha > -0.5)) throw std::domain_error("K(alpha) requires alpha > -1/2");
  return std::exp(std::lgamma(1.0 + 2.0 * alpha) - std::lgamma(1.0 + alpha) - std::lgamma(2.0 + alpha));
}

double L_of_alpha(double alpha) {
  if (!(alpha > -0.5)) throw std::domain_error("L(alpha) requires alpha > -1/2");
  if (nearest_half_integer(alpha).second == 0.0) return kInf;
  // Gamma(a)^2 / Gamma(2a) = 2 Gamma(1+a)^2 / (a Gamma(1+2a)); the 1/a is
  // absorbed into tan(pi a)/a so that alpha = 0 is regular.
  const double beta = 2.0 * std::exp(2.0 * std::lgamma(1.0 + alpha) - std::lgamma(1.0 + 2.0 * alpha));
  return -beta * tan_pi_over(alpha) / (4.0 * (1.0 + 2.0 * alpha) * std::numbers::pi);
}

double L_gamma_ratio(double alpha) {
  return std::tgamma(-1.0 - 2.0 * alpha) / (std::tgamma(-alpha) * std::tgamma(1.0 - alpha));
}

double C_half_integer(int k) {
  if (k < 0) throw std::invalid_argument("C_k requires k >= 0");
  const double a0 = k + 0.5;
  const double log_ratio = 2.0 * std::lgamma(a0) - std::lgamma(2.0 * a0);
  return std::exp(log_ratio) / (4.0 * std::numbers::pi * std::numbers::pi * a0 * (1.0 + 2.0 * a0));
}

double a_coeff(double alpha, int j) {
  if (j < 0) throw std::invalid_argument("a_j requires j >= 0");
  double num = 1.0;
  double den = 1.0;
  for (int i = 0; i < j; ++i) {
    num *= (1.0 - alpha + i) * (-alpha + i);
    den *= (-2.0 * alpha + i) * (i + 1.0);
  }
  return num / den;
}

SingularData singular_constants(double z) {
  SingularData d;
  d.z = z;
  d.alpha = alpha_of_z(z);
  d.K = K_of_alpha(d.alpha);
  d.band = std::max(0, static_cast<int>(std::ceil(d.alpha - 0.5)));
  const auto [k, dist] = nearest_half_integer(d.alpha);
  if (d.alpha > 0.0 && dist <= kHalfIntegerWindow) {
    d.half_integer = true;
    d.band = k;
    d.L = kInf;
    d.Ck = C_half_integer(k);
  } else {
    d.L = L_of_alpha(d.alpha);
  }
  return d;
}

GnPrediction predicted_Gn(double z, double n, int depth) {
  if (!(n >= 1.0)) throw std::invalid_argument("predicted_Gn requires n >= 1");
  const SingularData s = singular_constants(z);
  const double alpha = s.alpha;
  const double log_n = std::log(n);
  GnPrediction out;
  if (s.half_integer) {
    const double a0 = s.band + 0.5;
    out.half_integer_branch = true;
    out.value = s.K * reciprocal_gamma(a0) * std::exp((a0 - 1.0) * log_n) +
                2.0 * (*s.Ck) * std::exp((a0 - 2.0) * log_n) * log_n * reciprocal_gamma(-1.0 - a0);
    return out;
  }
  if (depth < 0) depth = s.band + 1;
  out.near_half_integer = alpha > 0.0 && nearest_half_integer(alpha).second < kNearHalfIntegerWarning;
  double value = s.K * reciprocal_gamma(alpha) * std::exp((alpha - 1.0) * log_n);
  for (int j = 1; j <= depth; ++j) {
    value += s.K * a_coeff(alpha, j) * reciprocal_gamma(alpha - j) * std::exp((alpha - j - 1.0) * log_n);
  }
  value += s.L * reciprocal_gamma(-alpha - 1.0) * std::exp((-alpha - 2.0) * log_n);
  out.value = value;
  return out;
}

OdeResidual ode_residual(double z, int N) {
  // extended precision: the residual cancels terms of size n^2 |G_n|
  const std::vector<long double> g = series_coeffs_impl<long double>(z, N);
  const long double zl = z;
  OdeResidual out;
  for (int n = 0; n <= N; ++n) {
    const long double nd = n;
    const long double g0 = g[static_cast<size_t>(n)];
    const long double g1 = n >= 1 ? g[static_cast<size_t>(n - 1)] : 0.0L;
    const long double g2 = n >= 2 ? g[static_cast<size_t>(n - 2)] : 0.0L;
    const long double r = nd * (nd + 1) * g0 - 2 * (nd - 1) * nd * g1 + (nd - 1) * (nd - 2) * g2 - 2 * zl * g1;
    out.max_residual = std::max(out.max_residual, static_cast<double>(std::abs(r)));
    out.max_coefficient = std::max(out.max_coefficient, static_cast<double>(std::abs(g0)));
  }
  return out;
}

}  // namespace convexchain::analytic
