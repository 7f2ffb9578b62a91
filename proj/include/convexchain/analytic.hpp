#pragma once

// Closed-form bivariate generating function
//   F(u, z) = sum_n G_n(z) u^n = 2F1(1 - alpha, -alpha; 2; u) / (1 - u)^alpha,
// with alpha(alpha + 1) = 2z, and the constants of its singular expansion
// at u = 1. Everything here is restricted to real u in [0, 1) and z > -1/8.

#include <optional>
#include <vector>

namespace convexchain::analytic {

inline constexpr double kHalfIntegerWindow = 1e-9;
inline constexpr double kNearHalfIntegerWarning = 0.02;

// Principal root of alpha(alpha + 1) = 2z. Throws std::domain_error for z <= -1/8.
double alpha_of_z(double z);
double z_of_alpha(double alpha);

// 1/Gamma(x), exactly 0 at the poles x = 0, -1, -2, ...
double reciprocal_gamma(double x);

struct HypergeomParams {
  double a = 0.0;
  double b = 0.0;
  double c = 1.0;
};

struct SeriesValue {
  double value = 0.0;
  double error_estimate = 0.0;  // bound on the truncated tail
  int terms = 0;
  bool converged = false;
};

// Gauss series sum_n (a)_n (b)_n / ((c)_n n!) u^n for |u| < 1.
// Throws std::domain_error if c is a non-positive integer or |u| >= 1.
SeriesValue hyp2f1(const HypergeomParams& p, double u);

// F(u, z) from the closed form.
SeriesValue f_closed(double u, double z);

struct Representations {
  double direct = 0.0;               // (1-u)^{-alpha} 2F1(1-alpha, -alpha; 2; u)
  double euler = 0.0;                // (1-u)^{1+alpha} 2F1(2+alpha, 1+alpha; 2; u)
  std::optional<double> pfaff;       // 2F1(-alpha, 1+alpha; 2; u/(u-1)), only for u < 1/2
  double max_deviation = 0.0;        // max pairwise |difference| / |direct|
};

Representations representations(double u, double z);
double representation_check(double u, double z);

// G_0(z)..G_N(z) as the Cauchy product of the 2F1 coefficients with the
// binomial series of (1-u)^{-alpha}. Does not touch the G_n recurrence.
std::vector<double> series_coeffs(double z, int N);

// Constants of the expansion of F at u = 1.
double K_of_alpha(double alpha);
// tan form; +-inf at half-integers.
double L_of_alpha(double alpha);
// Gamma(-1-2a) / (Gamma(-a) Gamma(1-a)); NaN/inf at its poles.
double L_gamma_ratio(double alpha);
// Residue constant for alpha_0 = k + 1/2.
double C_half_integer(int k);
// a_j(alpha) = (1-alpha)^(j) (-alpha)^(j) / ((-2alpha)^(j) j!), rising factorials.
double a_coeff(double alpha, int j);

struct SingularData {
  double z = 0.0;
  double alpha = 0.0;
  double K = 0.0;
  double L = 0.0;          // +inf when alpha is a half-integer
  int band = 0;            // alpha in (band - 1/2, band + 1/2]
  bool half_integer = false;
  std::optional<double> Ck;  // set only when half_integer

  double a(int j) const { return a_coeff(alpha, j); }
};

SingularData singular_constants(double z);

struct GnPrediction {
  double value = 0.0;
  bool half_integer_branch = false;
  // alpha lies close to a half-integer but outside the routing window, where
  // L(alpha) is large and the generic expansion degrades.
  bool near_half_integer = false;
};

// Transfer of the singular expansion to [u^n] F. depth < 0 uses band + 1
// correction terms.
GnPrediction predicted_Gn(double z, double n, int depth = -1);

struct OdeResidual {
  double max_residual = 0.0;
  double max_coefficient = 0.0;  // max |G_n(z)| over the same range
};

// Coefficients of (1-u)^2 (2u F_u + u^2 F_uu) - 2uzF for F built from
// series_coeffs(z, N).
OdeResidual ode_residual(double z, int N);

}  // namespace convexchain::analytic
