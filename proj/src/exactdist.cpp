#include "convexchain/exactdist.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace convexchain::exact {

namespace {

// Scaled row q_k = D_n p_k^{(n)} with D_n = prod_{m=1}^{n} C(m+1, 2) =
// n!(n+1)!/2^n. Multiplying the recurrence through by D_{n-1} gives the
// integer recurrence
//   q_k^{(m)} = 2C(m,2) q_k^{(m-1)} + q_{k-1}^{(m-1)} - C(m,2) C(m-1,2) q_k^{(m-2)},
// so no gcd work is needed until the final reduction.
struct ScaledRow {
  std::vector<BigInt> q;
  BigInt scale;
};

ScaledRow scaled_row(int n, bool parallel) {
  if (n < 0) throw std::invalid_argument("n must be non-negative");
  if (n > kExactCap) {
    throw std::invalid_argument("exact mode is capped at n = " + std::to_string(kExactCap));
  }
  const size_t width = static_cast<size_t>(n) + 1;
  std::vector<BigInt> prev2(width), prev(width), cur(width);
  prev2[0] = 1;  // row 0
  if (n == 0) return {prev2, BigInt(1)};
  prev[1] = 1;  // row 1, D_1 = 1
  BigInt scale = 1;
  for (int m = 2; m <= n; ++m) {
    const unsigned long a = static_cast<unsigned long>(m) * static_cast<unsigned long>(m - 1);
    const unsigned long b = (static_cast<unsigned long>(m) * (m - 1) / 2) *
                            (static_cast<unsigned long>(m - 1) * (m - 2) / 2);
#pragma omp parallel for schedule(dynamic, 8) if (parallel && m > 64)
    for (int k = 1; k <= m; ++k) {
      mpz_ptr out = cur[static_cast<size_t>(k)].get_mpz_t();
      mpz_mul_ui(out, prev[static_cast<size_t>(k)].get_mpz_t(), a);
      mpz_add(out, out, prev[static_cast<size_t>(k - 1)].get_mpz_t());
      if (b != 0) mpz_submul_ui(out, prev2[static_cast<size_t>(k)].get_mpz_t(), b);
    }
    cur[0] = 0;
    scale *= static_cast<unsigned long>(m) * static_cast<unsigned long>(m + 1) / 2;
    std::swap(prev2, prev);
    std::swap(prev, cur);
  }
  return {std::move(prev), std::move(scale)};
}

ExactDistribution reduce(int n, const ScaledRow& row) {
  ExactDistribution d;
  d.n = n;
  d.probs.resize(row.q.size());
  for (size_t k = 0; k < row.q.size(); ++k) {
    d.probs[k] = Rational(row.q[k], row.scale);
    d.probs[k].canonicalize();
  }
  return d;
}

void composition_sum(int remaining, int parts_left, int partial, const Rational& weight, Rational& acc) {
  if (parts_left == 0) {
    if (remaining == 0) acc += weight;
    return;
  }
  // each remaining part needs at least one point
  for (int i = 1; i <= remaining - (parts_left - 1); ++i) {
    const int I = partial + i;
    Rational factor(i, static_cast<long>(I) * (I + 1) / 2);
    factor.canonicalize();
    composition_sum(remaining - i, parts_left - 1, I, weight * factor, acc);
  }
}

// Both G_n and the float DP are advanced in difference form. With
// D_m = X_m - X_{m-1}, the three-term recurrence
//   C(m+1,2) X_m - 2C(m,2) X_{m-1} + C(m-1,2) X_{m-2} = inj_m
// becomes
//   D_m = (C(m-1,2) D_{m-1} - X_{m-1} + inj_m) / C(m+1,2),   X_m = X_{m-1} + D_m.
// The direct three-term form amplifies the rounding of each step by a factor
// of order m (the two homogeneous solutions differ only by a factor of m),
// while the difference form with a compensated running sum keeps the
// relative error near sqrt(n) eps.
template <class T>
T eval_G_impl(int n, const T& z, const std::function<bool(const T&)>& finite) {
  if (n < 0) throw std::invalid_argument("n must be non-negative");
  T g = z * 0.0 + 1.0;  // G_0
  if (n == 0) return g;
  const T z_minus_one = z - 1.0;
  T diff = z_minus_one;  // D_1 = G_1 - G_0
  g = z;
  T comp = z * 0.0;
  for (int m = 2; m <= n; ++m) {
    const double md = m;
    const double lower = (md - 1.0) * (md - 2.0) / 2.0;
    const double upper = md * (md + 1.0) / 2.0;
    // inj_m = z G_{m-1}, so -G_{m-1} + inj_m = (z - 1) G_{m-1}
    diff = (diff * lower + z_minus_one * g) / upper;
    // Neumaier step g += diff
    T y = diff - comp;
    T t = g + y;
    comp = (t - g) - y;
    g = std::move(t);
    if (!finite(g)) {
      throw std::overflow_error("eval_G: iteration left the double range at n = " + std::to_string(m));
    }
  }
  return g - comp;
}

// Shared float DP core. Calls visit(m, row) for every row m = 0..N, where row
// holds p_0..p_K of row m (entries with k > m are zero).
template <class Visit>
void float_dp(int N, int K, Visit&& visit) {
  if (N < 0) throw std::invalid_argument("N must be non-negative");
  if (K < 1) throw std::invalid_argument("K must be at least 1");
  const size_t width = static_cast<size_t>(K) + 1;
  std::vector<double> p(width, 0.0), diff(width, 0.0), comp(width, 0.0), out(width, 0.0);
  p[0] = 1.0;
  visit(0, p);
  if (N == 0) return;
  p[0] = 0.0;
  p[1] = 1.0;
  diff[0] = -1.0;
  diff[1] = 1.0;
  visit(1, p);
  for (int m = 2; m <= N; ++m) {
    const double md = m;
    const double lower = (md - 1.0) * (md - 2.0) / 2.0;
    const double inv_upper = 2.0 / (md * (md + 1.0));
    const int top = std::min(K, m);
    // descending k so that p[k-1] still holds row m-1
    for (int k = top; k >= 1; --k) {
      const size_t i = static_cast<size_t>(k);
      const double d = (lower * diff[i] - p[i] + p[i - 1]) * inv_upper;
      diff[i] = d;
      const double y = d - comp[i];
      const double t = p[i] + y;
      comp[i] = (t - p[i]) - y;
      p[i] = t;
    }
    diff[0] = 0.0;  // p_0 = 0 from row 1 on
    for (int k = 0; k <= top; ++k) out[static_cast<size_t>(k)] = p[static_cast<size_t>(k)] - comp[static_cast<size_t>(k)];
    visit(m, out);
  }
}

}  // namespace

Rational GenPoly::operator()(const Rational& z) const {
  Rational acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

double GenPoly::eval(double z) const {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + to_double(*it);
  return acc;
}

Rational GenPoly::derivative_at_one(int r) const {
  Rational acc = 0;
  for (size_t k = 0; k < coeffs.size(); ++k) {
    if (static_cast<int>(k) < r) continue;
    BigInt falling = 1;
    for (int j = 0; j < r; ++j) falling *= static_cast<long>(k) - j;
    acc += coeffs[k] * Rational(falling);
  }
  return acc;
}

Rational brute_force_pk(int n, int k) {
  if (n < 0 || k < 0) throw std::invalid_argument("n and k must be non-negative");
  if (n > kBruteForceCap) {
    throw std::invalid_argument("brute force is capped at n = " + std::to_string(kBruteForceCap));
  }
  if (n == 0) return k == 0 ? Rational(1) : Rational(0);
  if (k == 0 || k > n) throw std::invalid_argument("brute force requires 1 <= k <= n");
  Rational acc = 0;
  composition_sum(n, k, 0, Rational(1), acc);
  return acc;
}

ExactDistribution distribution_exact(int n) { return reduce(n, scaled_row(n, true)); }

ExactDistribution distribution_exact_serial(int n) { return reduce(n, scaled_row(n, false)); }

std::vector<double> distribution_float(int n) {
  if (n == 0) return {1.0};
  std::vector<double> out;
  float_dp(n, n, [&](int m, const std::vector<double>& row) {
    if (m == n) out = row;
  });
  return out;
}

GenPoly genpoly(int n) {
  if (n < 0) throw std::invalid_argument("n must be non-negative");
  std::vector<Rational> g_prev2{Rational(1)};
  if (n == 0) return {0, g_prev2};
  std::vector<Rational> g_prev{Rational(0), Rational(1)};
  for (int m = 2; m <= n; ++m) {
    Rational a(2, static_cast<long>(m) * (m + 1));
    Rational b(2 * (m - 1), m + 1);
    Rational c(static_cast<long>(m - 1) * (m - 2), static_cast<long>(m) * (m + 1));
    a.canonicalize();
    b.canonicalize();
    c.canonicalize();
    std::vector<Rational> g(static_cast<size_t>(m) + 1, Rational(0));
    for (size_t k = 0; k < g_prev.size(); ++k) {
      g[k] += b * g_prev[k];
      g[k + 1] += a * g_prev[k];
    }
    for (size_t k = 0; k < g_prev2.size(); ++k) g[k] -= c * g_prev2[k];
    g_prev2 = std::move(g_prev);
    g_prev = std::move(g);
  }
  return {n, g_prev};
}

double eval_G(int n, double z) {
  return eval_G_impl<double>(n, z, [](const double& v) { return std::isfinite(v); });
}

TruncatedSeries eval_G(int n, const TruncatedSeries& z) {
  return eval_G_impl<TruncatedSeries>(n, z, [](const TruncatedSeries& v) { return isfinite(v); });
}

CumulantVector exact_cumulants(int n, int R) {
  if (n < 1) throw std::invalid_argument("exact_cumulants requires n >= 1");
  if (R < 1 || R > kMaxJetOrder) {
    throw std::invalid_argument("cumulant order must lie in 1.." + std::to_string(kMaxJetOrder));
  }
  TruncatedSeries log_mgf = log(eval_G(n, TruncatedSeries::exp_variable(R)));
  log_mgf[1] += 2.0;  // f0 = k + 2
  CumulantVector out;
  out.n = n;
  for (int r = 1; r <= R; ++r) out.values.push_back(log_mgf.derivative(r));
  return out;
}

const TailRow& TailTable::row(int n) const {
  auto it = rows.find(n);
  if (it == rows.end()) throw std::out_of_range("tail_dp row " + std::to_string(n) + " was not retained");
  return it->second;
}

TailTable tail_dp(int N, int K, std::span<const int> keep) {
  TailTable table;
  table.N = N;
  table.K = K;
  if (keep.empty() && (static_cast<double>(N) + 1) * (K + 1) > 5e7) {
    throw std::invalid_argument("tail_dp: retaining every row of this table exceeds the memory budget");
  }
  std::vector<int> wanted(keep.begin(), keep.end());
  std::sort(wanted.begin(), wanted.end());
  // IEEE gradual underflow is kept during the sweep; flushing happens only on
  // the retained copies so that entries above the threshold stay accurate.
  float_dp(N, K, [&](int m, const std::vector<double>& row) {
    if (!wanted.empty() && !std::binary_search(wanted.begin(), wanted.end(), m)) return;
    TailRow out;
    out.p = row;
    out.flushed.assign(row.size(), 0);
    const int top = std::min(K, m);
    for (int k = 0; k <= top; ++k) {
      double& v = out.p[static_cast<size_t>(k)];
      // p_k > 0 for 1 <= k <= m, so an exact zero is an underflow too
      if (k >= 1 ? std::abs(v) < kUnderflowThreshold : (v != 0.0 && std::abs(v) < kUnderflowThreshold)) {
        v = 0.0;
        out.flushed[static_cast<size_t>(k)] = 1;
        table.underflow = true;
      }
    }
    table.rows.emplace(m, std::move(out));
  });
  return table;
}

Rational top_probability(int n, int k) {
  if (k < 0 || k > 3) throw std::invalid_argument("top_probability supports k = 0..3");
  if (n < k + 2) throw std::invalid_argument("top_probability requires n >= k + 2");
  BigInt two_pow;
  mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(n));
  BigInt fact;
  mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(n));
  const Rational N(n);
  Rational out;
  switch (k) {
    case 0:
      out = Rational(two_pow, fact * fact * (n + 1));
      break;
    case 1:
      out = Rational(two_pow, fact * fact) * N * N * (Rational(1) - Rational(1) / N) / 3;
      break;
    case 2: {
      const Rational poly = N * N * N * N * N / 18 - Rational(37, 180) * N * N * N * N +
                            Rational(79, 360) * N * N * N - Rational(19, 360) * N * N - N / 60;
      out = Rational(two_pow, fact * fact) * poly;
      break;
    }
    default:
      return distribution_exact(n)[n - 3];
  }
  out.canonicalize();
  return out;
}

NewtonCheck newton_inequality_check(int n) {
  if (n < 2) throw std::invalid_argument("newton_inequality_check requires n >= 2");
  // The common scale D_n cancels from both sides; after multiplying by
  // k(n-k) the comparison is between integers.
  const ScaledRow row = scaled_row(n, true);
  NewtonCheck out;
  for (int k = 1; k <= n - 1; ++k) {
    const BigInt& left = row.q[static_cast<size_t>(k - 1)];
    const BigInt& mid = row.q[static_cast<size_t>(k)];
    const BigInt& right = row.q[static_cast<size_t>(k + 1)];
    const BigInt lhs = mid * mid * (k + 1) * (n - k + 1);
    const BigInt rhs = left * right * k * (n - k);
    if (lhs < rhs) {
      out.holds = false;
      out.first_violation = k;
      break;
    }
  }
  return out;
}

Rational exact_mean(const GenPoly& g) { return Rational(2) + g.derivative_at_one(1); }

Rational exact_variance(const GenPoly& g) {
  const Rational d1 = g.derivative_at_one(1);
  const Rational d2 = g.derivative_at_one(2);
  return d2 + d1 - d1 * d1;
}

}  // namespace convexchain::exact
