#pragma once

// Limit theorems for f0(T_n): cumulant prefactors, Gaussian and Edgeworth
// predictors, large deviation rate function and point-probability asymptotics.

#include <functional>
#include <optional>

#include "convexchain/exactdist.hpp"
#include "convexchain/rational.hpp"

namespace convexchain::asymptotics {

// Stirling numbers of the second kind, 0 <= k <= r <= 30.
BigInt stirling2(int r, int k);

// r-th derivative at 0 of alpha(e^t); the slope of kappa_n^{(r)} in log n.
Rational cumulant_prefactor(int r);

// Limiting scaled cumulant generating function mu(t) = alpha(e^t) - 1 and
// the constant-order term psi(t).
double mu(double t);
double mu_prime(double t);
double mu_second(double t);
double psi(double t);

// Rate function of f0(T_n)/log n and its two-part split; +inf for x < 0.
double rate_I(double x);
double rate_I1(double x);
double rate_I2(double x);

using RealFn = std::function<double(double)>;

// sup_t (x t - f(t)) for strictly convex f, solving f'(t) = x by Newton with
// a bisection safeguard. f'' is optional (finite differences of f' otherwise).
// Throws std::range_error when x lies outside the closure of the range of f'.
double legendre_fenchel(const RealFn& f_prime, const RealFn& f, double x, const RealFn& f_second = {});

struct CltPredictors {
  double mean = 0.0;
  double sd = 0.0;
};

CltPredictors clt_predictors(double n);

double normal_cdf(double x);
double normal_pdf(double x);

// One-term Edgeworth approximation of P((X - mean)/sd <= x) for an
// integer-valued X, including the lattice (sawtooth) correction.
double edgeworth_cdf(double x, double mean, double sd, double kappa3);

// Leading-order p_{k+1}^{(n)} ~ 2^{k+1} (log n)^k / (k! n).
double prob_asymptotic(double n, int k);
// log of the leading-order p_{n-k}^{(n)} ~ n^{3k-1} 2^n / (3^k k! (n!)^2).
double log_top_asymptotic(double n, int k);

struct SaddlePoint {
  double c = 0.0;
  double alpha_star = 0.0;
  double sigma_star = 0.0;
  double H = 0.0;  // (1/a + 1/(a+1)) K(a)/Gamma(a) at a = alpha_star
};

// Throws std::domain_error unless 0 < c < 3/4.
SaddlePoint saddle_point(double c);

// Saddle-point estimate of p_{k_n}^{(n)}, k_n = floor(c log n).
double saddle_probability(double n, double c);
// The same display with an arbitrary positive real k in place of k_n.
double saddle_probability_at(double n, double c, double k);

// -log p_{k_n}^{(n)} / log n from a tail table containing row n and column k_n.
double ldp_exponent_estimate(const exact::TailTable& table, int n, double c);
double ldp_exponent_estimate(int n, double c);

}  // namespace convexchain::asymptotics
