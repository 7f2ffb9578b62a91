#pragma once

// Exact and floating-point law of the vertex count f0(T_n) of the random
// convex chain: p_k^{(n)} = P(f0(T_n) = k + 2), k = 0..n.

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "convexchain/jet.hpp"
#include "convexchain/rational.hpp"

namespace convexchain::exact {

inline constexpr int kBruteForceCap = 10;
inline constexpr int kExactCap = 2000;
inline constexpr int kMaxJetOrder = 12;
inline constexpr double kUnderflowThreshold = 1e-280;

struct ExactDistribution {
  int n = 0;
  std::vector<Rational> probs;  // probs[k] = p_k^{(n)}, reduced

  const Rational& operator[](int k) const { return probs[static_cast<size_t>(k)]; }
};

// Coefficients of the probability generating polynomial G_n(z) = sum p_k z^k.
struct GenPoly {
  int n = 0;
  std::vector<Rational> coeffs;

  Rational operator()(const Rational& z) const;
  double eval(double z) const;
  // d^r/dz^r G_n at z = 1, exactly.
  Rational derivative_at_one(int r) const;
};

struct CumulantVector {
  int n = 0;
  std::vector<double> values;  // values[r-1] = kappa^{(r)} of f0(T_n)

  double operator()(int r) const { return values.at(static_cast<size_t>(r - 1)); }
};

// Sum over compositions of n into k positive parts, straight from the
// definition. Exponential; 1 <= k <= n <= kBruteForceCap (n = 0 only with k = 0).
Rational brute_force_pk(int n, int k);

// Exact row by the three-term recurrence. The OpenMP kernel parallelizes
// the k-loop of each row; the serial version is the reference. n <= kExactCap.
ExactDistribution distribution_exact(int n);
ExactDistribution distribution_exact_serial(int n);

// The same recurrence in double precision, all k.
std::vector<double> distribution_float(int n);

// G_n from the polynomial recurrence G_n = (a_n z + b_n) G_{n-1} - c_n G_{n-2}.
GenPoly genpoly(int n);

// G_n(z) by the three-term iteration, no coefficients materialized.
// Throws std::overflow_error if the iteration leaves the double range.
double eval_G(int n, double z);
TruncatedSeries eval_G(int n, const TruncatedSeries& z);

// kappa^{(1..R)} of f0(T_n) from log(e^{2t} G_n(e^t)). 1 <= R <= kMaxJetOrder.
CumulantVector exact_cumulants(int n, int R);

struct TailRow {
  std::vector<double> p;             // p[k], k = 0..K
  std::vector<std::uint8_t> flushed;  // 1 where the value fell below the underflow threshold
};

struct TailTable {
  int N = 0;
  int K = 0;
  bool underflow = false;
  std::map<int, TailRow> rows;

  const TailRow& row(int n) const;
  bool has_row(int n) const { return rows.count(n) != 0; }
};

// Column-truncated double-precision DP for k <= K, n <= N. Only the rows
// listed in keep are retained; an empty list keeps every row.
TailTable tail_dp(int N, int K, std::span<const int> keep = {});

// p_{n-k}^{(n)} for k = 0..3; closed forms for k <= 2, exact DP for k = 3.
Rational top_probability(int n, int k);

struct NewtonCheck {
  bool holds = true;
  int first_violation = -1;
};

// Newton's inequalities p_k^2 (1 + 1/k)(1 + 1/(n-k)) >= p_{k-1} p_{k+1},
// compared exactly.
NewtonCheck newton_inequality_check(int n);

// Exact mean and variance of f0(T_n).
Rational exact_mean(const GenPoly& g);
Rational exact_variance(const GenPoly& g);

}  // namespace convexchain::exact
