#include "convexchain/validate.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "convexchain/analytic.hpp"
#include "convexchain/asymptotics.hpp"
#include "convexchain/geometry.hpp"
#include "convexchain/jet.hpp"

namespace convexchain::validate {

namespace {

std::string fmt(const char* format, ...) {
  std::array<char, 512> buf{};
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf.data(), buf.size(), format, args);
  va_end(args);
  return buf.data();
}

void add(CriterionResult& r, std::string name, bool pass, std::string detail) {
  r.checks.push_back({std::move(name), pass, std::move(detail)});
}

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

Rational two_pow(int n) {
  BigInt v;
  mpz_ui_pow_ui(v.get_mpz_t(), 2, static_cast<unsigned long>(n));
  return Rational(v);
}

Rational factorial(int n) {
  BigInt v;
  mpz_fac_ui(v.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(v);
}

struct RowMoments {
  double mean = 0.0;
  double sd = 0.0;
  double kappa3 = 0.0;
};

// Moments of f0 = k + 2 under a (truncated) float row.
RowMoments row_moments(const std::vector<double>& p) {
  RowMoments m;
  for (size_t k = 0; k < p.size(); ++k) m.mean += (static_cast<double>(k) + 2.0) * p[k];
  double m2 = 0.0;
  for (size_t k = 0; k < p.size(); ++k) {
    const double d = static_cast<double>(k) + 2.0 - m.mean;
    m2 += d * d * p[k];
    m.kappa3 += d * d * d * p[k];
  }
  m.sd = std::sqrt(m2);
  return m;
}

// sup_x |P((f0 - mean)/sd <= x) - approx(x)|. For a lattice law the sup is
// attained at a jump, so both one-sided limits at every atom are compared.
template <class Approx>
double sup_cdf_error(const std::vector<double>& p, const RowMoments& m, Approx&& approx) {
  double worst = 0.0;
  double cdf = 0.0;
  const double nudge = 1e-9;
  for (size_t k = 0; k < p.size(); ++k) {
    const double x = (static_cast<double>(k) + 2.0 - m.mean) / m.sd;
    worst = std::max(worst, std::abs(cdf - approx(x - nudge / m.sd)));
    cdf += p[k];
    worst = std::max(worst, std::abs(cdf - approx(x + nudge / m.sd)));
  }
  return worst;
}

std::string serialize(const geometry::EmpiricalDistribution& e) {
  std::ostringstream os;
  os << e.n << ' ' << e.reps;
  for (const auto& [f0, c] : e.counts) os << ' ' << f0 << ':' << c;
  return os.str();
}

}  // namespace

bool CriterionResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const std::map<std::string, std::vector<int>>& suites() {
  static const std::map<std::string, std::vector<int>> table = {
      {"oracle", {1}},
      {"identities", {2, 3}},
      {"analytic", {4, 5}},
      {"cumulants", {6, 7}},
      {"clt", {8, 9}},
      {"rate", {10}},
      {"probability", {11, 12, 13}},
      {"montecarlo", {14, 15}},
      {"all", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15}},
  };
  return table;
}

std::optional<std::vector<int>> suite_members(const std::string& name) {
  auto it = suites().find(name);
  if (it == suites().end()) return std::nullopt;
  return it->second;
}

Runner::Runner(Options options) : options_(options) {}
Runner::~Runner() = default;

const exact::TailTable& Runner::tail() {
  if (!tail_) {
    const std::vector<int> keep = {100, 1000, 10000, 100000, 1000000, 10000000};
    tail_ = std::make_unique<exact::TailTable>(exact::tail_dp(10000000, 80, keep));
  }
  return *tail_;
}

CriterionResult Runner::run(int id) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(clock::now() - start).count(); };
  CriterionResult r;
  r.id = id;

  switch (id) {
    case 1: {
      r.title = "oracle equivalence";
      int compared = 0;
      std::string first_bad;
      for (int n = 0; n <= 9; ++n) {
        const exact::ExactDistribution d = exact::distribution_exact(n);
        for (int k = 0; k <= n; ++k) {
          ++compared;
          // no composition of n >= 1 has zero parts
          const Rational oracle = (k == 0 && n >= 1) ? Rational(0) : exact::brute_force_pk(n, k);
          if (d[k] != oracle && first_bad.empty()) first_bad = fmt("n=%d k=%d", n, k);
        }
      }
      add(r, "exact rows equal composition sums, n <= 9", first_bad.empty(),
          first_bad.empty() ? fmt("%d entries equal", compared) : "first mismatch " + first_bad);
      add(r, "runtime < 10 s", elapsed() < 10.0, fmt("%.2f s", elapsed()));
      break;
    }

    case 2: {
      r.title = "exact identities";
      std::array<std::string, 6> bad;
      const std::array<const char*, 6> names = {"sum p_k = 1", "p_1 = 2/(n+1)", "p_2 harmonic form",
                                                 "p_n = 2^n/(n!(n+1)!)", "p_{n-1} closed form",
                                                 "p_{n-2} polynomial form"};
      auto flag = [&](int which, int n) {
        if (bad[static_cast<size_t>(which)].empty()) bad[static_cast<size_t>(which)] = fmt("fails at n=%d", n);
      };
      Rational harmonic = 0;  // sum_{j=1}^{n-1} 1/(j+1)
      for (int n = 1; n <= 300; ++n) {
        if (n >= 2) harmonic += Rational(1, n);
        const exact::ExactDistribution d = exact::distribution_exact(n);
        Rational total = 0;
        for (const Rational& p : d.probs) total += p;
        if (total != 1) flag(0, n);
        Rational p1(2, n + 1);
        p1.canonicalize();
        if (d[1] != p1) flag(1, n);
        if (n >= 2) {
          Rational p2 = Rational(4, n) * (harmonic - 1 + Rational(2, n + 1));
          p2.canonicalize();
          if (d[2] != p2) flag(2, n);
        }
        Rational pn = two_pow(n) / (factorial(n) * factorial(n + 1));
        if (d[n] != pn) flag(3, n);
        if (n >= 3 && d[n - 1] != exact::top_probability(n, 1)) flag(4, n);
        if (n >= 4 && d[n - 2] != exact::top_probability(n, 2)) flag(5, n);
      }
      for (size_t i = 0; i < names.size(); ++i) {
        add(r, std::string(names[i]) + ", n <= 300", bad[i].empty(), bad[i].empty() ? "exact equality" : bad[i]);
      }
      add(r, "runtime < 60 s", elapsed() < 60.0, fmt("%.2f s", elapsed()));
      break;
    }

    case 3: {
      r.title = "Newton inequalities";
      int first_n = -1;
      int first_k = -1;
      for (int n = 2; n <= 60 && first_n < 0; ++n) {
        const exact::NewtonCheck c = exact::newton_inequality_check(n);
        if (!c.holds) {
          first_n = n;
          first_k = c.first_violation;
        }
      }
      add(r, "p_k^2 (1+1/k)(1+1/(n-k)) >= p_{k-1} p_{k+1}, 2 <= n <= 60", first_n < 0,
          first_n < 0 ? "holds exactly" : fmt("violated at n=%d k=%d", first_n, first_k));
      break;
    }

    case 4: {
      r.title = "closed-form generating function";
      double worst = 0.0;
      for (double z : {-0.1, 0.25, 0.5, 1.0, 2.0}) {
        const std::vector<double> coeffs = analytic::series_coeffs(z, 60);
        for (int n = 0; n <= 60; ++n) {
          worst = std::max(worst, rel_err(coeffs[static_cast<size_t>(n)], exact::eval_G(n, z)));
        }
      }
      add(r, "series coefficients vs G_n(z), n <= 60", worst <= 1e-10, fmt("max rel err %.2e", worst));

      double geo = 0.0;
      for (int i = 1; i <= 9; ++i) {
        const double u = 0.1 * i;
        geo = std::max(geo, std::abs(analytic::f_closed(u, 1.0).value * (1.0 - u) - 1.0));
      }
      add(r, "F(u,1)(1-u) = 1 on u = 0.1..0.9", geo <= 1e-12, fmt("max dev %.2e", geo));

      double rep = 0.0;
      for (int i = 0; i <= 9; ++i) {
        for (double z : {-0.1, 0.2, 0.5, 1.0, 1.5, 2.0}) {
          rep = std::max(rep, analytic::representation_check(0.1 * i, z));
        }
      }
      add(r, "three representations agree, u in [0,0.9], z in (-1/8,2]", rep <= 1e-9, fmt("max dev %.2e", rep));

      double ode = 0.0;
      for (double z : {-0.1, 0.25, 0.5, 1.0, 2.0}) {
        const analytic::OdeResidual res = analytic::ode_residual(z, 200);
        ode = std::max(ode, res.max_residual / std::max(1.0, res.max_coefficient));
      }
      add(r, "ODE residual through N = 200", ode <= 1e-10, fmt("max scaled residual %.2e", ode));
      break;
    }

    case 5: {
      r.title = "transfer asymptotics of G_n(z)";
      auto err = [](double z, int n) {
        const double g = exact::eval_G(n, z);
        return rel_err(analytic::predicted_Gn(z, n).value, g);
      };
      for (double z : {0.25, 0.5, 2.0}) {
        const double e3 = err(z, 1000);
        const double e5 = err(z, 100000);
        add(r, fmt("z=%g error drops >= 5x from 1e3 to 1e5", z), e3 >= 5.0 * e5,
            fmt("%.3e -> %.3e (x%.1f)", e3, e5, e3 / e5));
        add(r, fmt("z=%g error <= 10/n at 1e5", z), e5 <= 10.0 / 1e5, fmt("%.3e vs %.1e", e5, 10.0 / 1e5));
      }
      const double e4 = err(0.375, 10000);
      const double C = e4 * 1e4 / std::log(1e4);
      const double e5 = err(0.375, 100000);
      const double bound = C * std::log(1e5) / 1e5;
      add(r, "z=3/8 half-integer branch: error <= C log n / n at 1e5", e5 <= bound,
          fmt("C=%.4f fit at 1e4; error %.3e vs bound %.3e", C, e5, bound));
      break;
    }

    case 6: {
      r.title = "cumulant prefactors";
      const std::vector<std::pair<int, Rational>> expected = {
          {1, Rational(2, 3)},       {2, Rational(10, 27)},     {3, Rational(14, 81)},
          {4, Rational(62, 729)},    {5, Rational(334, 6561)},  {6, Rational(110, 6561)},
          {9, Rational(-52598, 1594323)}};
      std::string bad;
      for (const auto& [order, value] : expected) {
        if (asymptotics::cumulant_prefactor(order) != value) {
          bad += fmt("r=%d gives %s; ", order, to_string(asymptotics::cumulant_prefactor(order)).c_str());
        }
      }
      add(r, "exact prefactors for r = 1..6 and 9", bad.empty(), bad.empty() ? "exact equality" : bad);

      // Jet of alpha(e^t) = 4z/(1 + sqrt(1 + 8z)) at t = 0.
      const int R = exact::kMaxJetOrder;
      const TruncatedSeries z = TruncatedSeries::exp_variable(R);
      const TruncatedSeries alpha = 4.0 * z / (1.0 + sqrt(1.0 + 8.0 * z));
      double worst = 0.0;
      for (int order = 1; order <= R; ++order) {
        worst = std::max(worst, rel_err(alpha.derivative(order), to_double(asymptotics::cumulant_prefactor(order))));
      }
      add(r, "jet derivatives of alpha(e^t) match, r <= 12", worst <= 1e-10, fmt("max rel err %.2e", worst));
      break;
    }

    case 7: {
      r.title = "cumulant slopes in log n";
      const exact::CumulantVector k3 = exact::exact_cumulants(1000, 4);
      const exact::CumulantVector k4 = exact::exact_cumulants(10000, 4);
      const exact::CumulantVector k7 = exact::exact_cumulants(10000000, 4);
      for (int order = 1; order <= 4; ++order) {
        const double pre = to_double(asymptotics::cumulant_prefactor(order));
        const double narrow = (k7(order) - k4(order)) / std::log(1e3) / pre - 1.0;
        const double wide = (k7(order) - k3(order)) / std::log(1e4) / pre - 1.0;
        const double tol = order <= 2 ? 0.05 : 0.15;
        add(r, fmt("r=%d slope over (1e4,1e7) within %.0f%%", order, tol * 100), std::abs(narrow) <= tol,
            fmt("rel dev %+.3e", narrow));
        add(r, fmt("r=%d deviation shrinks over (1e3,1e7)", order), std::abs(wide) < std::abs(narrow),
            fmt("|%.3e| vs |%.3e|", wide, narrow));
      }
      add(r, "runtime < 5 min", elapsed() < 300.0, fmt("%.2f s", elapsed()));
      break;
    }

    case 8: {
      r.title = "central limit theorem";
      std::map<int, double> d;
      for (int n : {100, 10000, 1000000}) {
        const std::vector<double>& p = tail().row(n).p;
        d[n] = sup_cdf_error(p, row_moments(p), asymptotics::normal_cdf);
      }
      add(r, "d(1e6) < d(1e4) < d(1e2)", d[1000000] < d[10000] && d[10000] < d[100],
          fmt("%.4f < %.4f < %.4f", d[1000000], d[10000], d[100]));
      const double scaled = d[1000000] * std::sqrt(std::log(1e6));
      add(r, "d(1e6) sqrt(log 1e6) <= 2", scaled <= 2.0, fmt("%.4f", scaled));
      break;
    }

    case 9: {
      r.title = "Edgeworth correction";
      const std::vector<double>& p = tail().row(100000).p;
      const RowMoments m = row_moments(p);
      const double plain = sup_cdf_error(p, m, asymptotics::normal_cdf);
      const double edge = sup_cdf_error(p, m, [&](double x) { return asymptotics::edgeworth_cdf(x, m.mean, m.sd, m.kappa3); });
      add(r, "Edgeworth sup error <= Gaussian sup error at n=1e5", edge <= plain,
          fmt("%.4f vs %.4f", edge, plain));
      break;
    }

    case 10: {
      r.title = "rate function";
      using asymptotics::legendre_fenchel;
      double dual = 0.0;
      for (double x : {0.05, 0.1, 0.25, 2.0 / 3.0, 1.0, 2.0, 4.0}) {
        const double lf = legendre_fenchel(asymptotics::mu_prime, asymptotics::mu, x, asymptotics::mu_second);
        dual = std::max(dual, std::abs(asymptotics::rate_I(x) - lf));
      }
      add(r, "I = Legendre-Fenchel transform of mu", dual <= 1e-9, fmt("max dev %.2e", dual));
      const double at_min = std::abs(asymptotics::rate_I(2.0 / 3.0));
      add(r, "I(2/3) = 0", at_min <= 1e-12, fmt("%.2e", at_min));

      double split = 0.0;
      for (int i = 0; i <= 1000; ++i) {
        const double x = 0.01 + (5.0 - 0.01) * i / 1000.0;
        split = std::max(split, std::abs(asymptotics::rate_I(x) - asymptotics::rate_I1(x) - asymptotics::rate_I2(x)));
      }
      add(r, "I = I1 + I2 on [0.01, 5]", split <= 1e-12, fmt("max dev %.2e", split));

      const auto poisson = [](double t) { return 2.0 * (std::exp(t) - 1.0); };
      const auto poisson_d = [](double t) { return 2.0 * std::exp(t); };
      const auto sym = [](double t) { return 0.5 * (std::cosh(t) - 1.0); };
      const auto sym_d = [](double t) { return 0.5 * std::sinh(t); };
      const auto sym_dd = [](double t) { return 0.5 * std::cosh(t); };
      double i1 = 0.0;
      double i2 = 0.0;
      for (double x : {0.05, 0.1, 0.25, 2.0 / 3.0, 1.0, 2.0, 4.0}) {
        i1 = std::max(i1, std::abs(asymptotics::rate_I1(x) - legendre_fenchel(poisson_d, poisson, x, poisson_d)));
        i2 = std::max(i2, std::abs(asymptotics::rate_I2(x) - legendre_fenchel(sym_d, sym, x, sym_dd)));
      }
      add(r, "I1 = transform of 2(e^t - 1)", i1 <= 1e-9, fmt("max dev %.2e", i1));
      add(r, "I2 = transform of (cosh t - 1)/2", i2 <= 1e-9, fmt("max dev %.2e", i2));

      double mdp = 0.0;
      for (double x : {-2.0, -0.5, 0.0, 0.3, 1.0, 3.0}) {
        const double lf = legendre_fenchel([](double t) { return t; }, [](double t) { return 0.5 * t * t; }, x,
                                           [](double) { return 1.0; });
        mdp = std::max(mdp, std::abs(lf - 0.5 * x * x));
      }
      add(r, "transform of t^2/2 is x^2/2", mdp <= 1e-10, fmt("max dev %.2e", mdp));
      break;
    }

    case 11: {
      r.title = "fixed-k probability asymptotics";
      const std::vector<int> keep = {1000, 100000, 10000000};
      const exact::TailTable table = exact::tail_dp(10000000, 60, keep);
      const double dp_seconds = elapsed();
      for (int k = 0; k <= 4; ++k) {
        std::array<double, 3> dev{};
        const std::array<int, 3> ns = {1000, 100000, 10000000};
        for (size_t i = 0; i < ns.size(); ++i) {
          const double p = table.row(ns[i]).p[static_cast<size_t>(k + 1)];
          dev[i] = std::abs(p / asymptotics::prob_asymptotic(ns[i], k) - 1.0);
        }
        add(r, fmt("k=%d deviation decreases over 1e3, 1e5, 1e7", k), dev[0] > dev[1] && dev[1] > dev[2],
            fmt("%.4f, %.4f, %.4f", dev[0], dev[1], dev[2]));
        add(r, fmt("k=%d deviation <= 0.35 at 1e7", k), dev[2] <= 0.35, fmt("%.4f", dev[2]));
      }
      add(r, "runtime < 10 min (n = 1e7, K = 60)", dp_seconds < 600.0, fmt("%.2f s", dp_seconds));
      break;
    }

    case 12: {
      r.title = "saddle-point estimate";
      const double c = 2.0 / 3.0;
      auto ratio = [&](int n) {
        const int k = static_cast<int>(std::floor(c * std::log(static_cast<double>(n))));
        return tail().row(n).p[static_cast<size_t>(k)] / asymptotics::saddle_probability(n, c);
      };
      const double r4 = ratio(10000);
      const double r7 = ratio(10000000);
      add(r, "ratio in [0.8, 1.2] at 1e7", r7 >= 0.8 && r7 <= 1.2, fmt("%.4f", r7));
      add(r, "ratio closer to 1 at 1e7 than at 1e4", std::abs(r7 - 1.0) < std::abs(r4 - 1.0),
          fmt("|%.4f - 1| vs |%.4f - 1|", r7, r4));
      double identity = 0.0;
      for (double n : {1e4, 1e6, 1e8, 1e12}) {
        const double L = std::log(n);
        const double direct = std::sqrt(27.0 / 10.0) / std::sqrt(2.0 * std::numbers::pi * L);
        identity = std::max(identity, rel_err(asymptotics::saddle_probability_at(n, c, c * L), direct));
      }
      add(r, "c=2/3 display equals sqrt(27/10)/sqrt(2 pi log n)", identity <= 1e-10, fmt("max rel dev %.2e", identity));
      break;
    }

    case 13: {
      r.title = "large deviation exponent";
      for (double c : {1.0 / 3.0, 1.0}) {
        const double I = asymptotics::rate_I(c);
        const double d4 = asymptotics::ldp_exponent_estimate(tail(), 10000, c) - I;
        const double d6 = asymptotics::ldp_exponent_estimate(tail(), 1000000, c) - I;
        const double L = std::log(1e6);
        const double bound = (0.5 * std::log(L) + 3.0) / L;
        add(r, fmt("c=%.3f excess positive and decreasing", c), d4 > 0.0 && d6 > 0.0 && d6 < d4,
            fmt("%.4f -> %.4f", d4, d6));
        add(r, fmt("c=%.3f excess within saddle correction at 1e6", c), d6 <= bound, fmt("%.4f vs %.4f", d6, bound));
      }
      break;
    }

    case 14: {
      r.title = "Monte Carlo agreement";
      geometry::SimulationConfig cfg{5000, 100000, options_.seed, options_.threads};
      const geometry::EmpiricalDistribution emp = geometry::monte_carlo(cfg);
      const std::vector<double> row = exact::distribution_float(5000);
      const geometry::Comparison cmp = geometry::compare_to_exact(emp, row);
      add(r, "mean within 4 standard errors (n=5000)", std::abs(cmp.mean_z) <= 4.0,
          fmt("z = %+.3f (mean %.4f vs %.4f)", cmp.mean_z, emp.mean(), cmp.exact_mean));
      add(r, "total variation <= 0.02", cmp.tv <= 0.02, fmt("%.4f", cmp.tv));

      const std::string first = serialize(emp);
      add(r, "same seed reproduces the histogram byte for byte", serialize(geometry::monte_carlo(cfg)) == first,
          fmt("%zu bytes", first.size()));
      bool threads_equal = true;
      for (int threads : {1, 2, 3}) {
        geometry::SimulationConfig other = cfg;
        other.threads = threads;
        threads_equal = threads_equal && serialize(geometry::monte_carlo(other)) == first;
      }
      add(r, "thread counts 1, 2, 3 give identical histograms", threads_equal, threads_equal ? "identical" : "differs");

      geometry::SimulationConfig small{5000, 2000, options_.seed, options_.threads};
      const bool ref_equal = geometry::monte_carlo_serial(small) == geometry::monte_carlo(small);
      add(r, "parallel kernel equals serial reference", ref_equal, "n=5000, 2000 trials");

      geometry::SimulationConfig two{2, 100000, options_.seed, options_.threads};
      const geometry::EmpiricalDistribution e2 = geometry::monte_carlo(two);
      const double p3 = e2.pmf(3);
      const double se = std::sqrt((2.0 / 3.0) * (1.0 / 3.0) / 1e5);
      add(r, "n=2: P(f0 = 3) within 4 SE of 2/3", std::abs(p3 - 2.0 / 3.0) <= 4.0 * se,
          fmt("%.5f (%.2f SE)", p3, (p3 - 2.0 / 3.0) / se));

      const std::vector<geometry::OverlayRow> overlay = geometry::gaussian_overlay(emp);
      double mass = 0.0;
      double density = 0.0;
      bool consistent = true;
      const asymptotics::CltPredictors clt = asymptotics::clt_predictors(5000);
      for (const auto& o : overlay) {
        mass += o.empirical;
        density += o.gaussian;
        const double expect = asymptotics::normal_pdf((o.f0 - clt.mean) / clt.sd) / clt.sd;
        consistent = consistent && std::abs(o.gaussian - expect) <= 1e-15;
      }
      add(r, "histogram overlay: pmf sums to 1, Gaussian column with mean (2/3)log n",
          std::abs(mass - 1.0) <= 1e-12 && consistent && density > 0.9,
          fmt("%zu rows, pmf mass %.6f, Gaussian mass %.4f", overlay.size(), mass, density));
      add(r, "runtime < 15 min", elapsed() < 900.0, fmt("%.2f s", elapsed()));
      break;
    }

    case 15: {
      r.title = "weak law of large numbers";
      auto ratio = [&](int n, std::int64_t reps) {
        const geometry::EmpiricalDistribution e = geometry::monte_carlo({n, reps, options_.seed, options_.threads});
        return e.mean() / std::log(static_cast<double>(n));
      };
      const double r4 = ratio(10000, 2000);
      const double r6 = ratio(1000000, 1000);
      const double target = 2.0 / 3.0;
      add(r, "mean f0/log n decreases toward 2/3 from 1e4 to 1e6",
          r6 < r4 && std::abs(r6 - target) < std::abs(r4 - target), fmt("%.4f -> %.4f", r4, r6));
      add(r, "within 0.12 of 2/3 at 1e6", std::abs(r6 - target) <= 0.12, fmt("|%.4f - 2/3| = %.4f", r6, std::abs(r6 - target)));
      break;
    }

    default:
      throw std::out_of_range(fmt("unknown criterion %d", id));
  }
  r.seconds = elapsed();
  return r;
}

}  // namespace convexchain::validate
