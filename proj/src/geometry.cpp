#include "convexchain/geometry.hpp"

#include "convexchain/asymptotics.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace convexchain::geometry {

namespace {

constexpr Point kV1{1.0, 0.0};
constexpr Point kV2{0.0, 1.0};

double cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

int hull_vertex_count(std::vector<Point>& pts) {
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  std::vector<Point> hull;
  hull.reserve(pts.size() + 1);
  // lower chain, then upper chain; non-left turns are popped
  for (const Point& p : pts) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0.0) hull.pop_back();
    hull.push_back(p);
  }
  const size_t lower = hull.size();
  for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
    while (hull.size() > lower && cross(hull[hull.size() - 2], hull.back(), *it) <= 0.0) hull.pop_back();
    hull.push_back(*it);
  }
  return static_cast<int>(hull.size()) - 1;
}

void draw(int n, Xoshiro256& rng, std::vector<Point>& out) {
  out.resize(static_cast<size_t>(n));
  for (Point& p : out) p = sample_triangle(rng);
}

void check(const SimulationConfig& cfg) {
  if (cfg.n < 0) throw std::invalid_argument("simulation requires n >= 0");
  if (cfg.reps < 1) throw std::invalid_argument("simulation requires reps >= 1");
}

EmpiricalDistribution from_histogram(const SimulationConfig& cfg, const std::vector<std::int64_t>& hist) {
  EmpiricalDistribution emp;
  emp.n = cfg.n;
  emp.reps = cfg.reps;
  for (size_t f0 = 0; f0 < hist.size(); ++f0) {
    if (hist[f0] != 0) emp.counts.emplace(static_cast<int>(f0), hist[f0]);
  }
  return emp;
}

}  // namespace

Point sample_triangle(Xoshiro256& rng) {
  const double u = rng.uniform();
  const double v = rng.uniform();
  if (u + v > 1.0) return {1.0 - u, 1.0 - v};
  return {u, v};
}

int chain_vertex_count(std::span<const Point> points) {
  std::vector<Point> pts(points.begin(), points.end());
  pts.push_back(kV1);
  pts.push_back(kV2);
  return hull_vertex_count(pts);
}

int simulate_trial(int n, Xoshiro256& rng, std::vector<Point>& scratch) {
  draw(n, rng, scratch);
  if (n == 0) return 2;
  const auto closest = std::min_element(scratch.begin(), scratch.end(), [](const Point& a, const Point& b) {
    return a.x + a.y < b.x + b.y;
  });
  const Point apex = *closest;
  // Keep only points outside the closed triangle (v1, v2, apex); everything
  // inside it is interior to the hull. The apex itself is always kept.
  size_t kept = 0;
  for (const Point& q : scratch) {
    if (cross(apex, kV1, q) < 0.0 || cross(kV2, apex, q) < 0.0) scratch[kept++] = q;
  }
  scratch.resize(kept);
  scratch.push_back(apex);
  scratch.push_back(kV1);
  scratch.push_back(kV2);
  return hull_vertex_count(scratch);
}

double EmpiricalDistribution::mean() const {
  double s = 0.0;
  for (const auto& [f0, c] : counts) s += static_cast<double>(f0) * static_cast<double>(c);
  return s / static_cast<double>(reps);
}

double EmpiricalDistribution::variance() const {
  if (reps < 2) return 0.0;
  const double m = mean();
  double s = 0.0;
  for (const auto& [f0, c] : counts) s += (f0 - m) * (f0 - m) * static_cast<double>(c);
  return s / static_cast<double>(reps - 1);
}

double EmpiricalDistribution::pmf(int f0) const {
  auto it = counts.find(f0);
  return it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(reps);
}

EmpiricalDistribution monte_carlo(const SimulationConfig& cfg) {
  check(cfg);
  const size_t bins = static_cast<size_t>(cfg.n) + 3;
  std::vector<std::int64_t> hist(bins, 0);
  const int threads = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
#pragma omp parallel num_threads(threads)
  {
    std::vector<std::int64_t> local(bins, 0);
    std::vector<Point> scratch;
#pragma omp for schedule(static)
    for (std::int64_t t = 0; t < cfg.reps; ++t) {
      Xoshiro256 rng = Xoshiro256::for_trial(cfg.seed, static_cast<std::uint64_t>(t));
      ++local[static_cast<size_t>(simulate_trial(cfg.n, rng, scratch))];
    }
#pragma omp critical
    for (size_t i = 0; i < bins; ++i) hist[i] += local[i];
  }
  return from_histogram(cfg, hist);
}

EmpiricalDistribution monte_carlo_serial(const SimulationConfig& cfg) {
  check(cfg);
  std::vector<std::int64_t> hist(static_cast<size_t>(cfg.n) + 3, 0);
  std::vector<Point> pts;
  for (std::int64_t t = 0; t < cfg.reps; ++t) {
    Xoshiro256 rng = Xoshiro256::for_trial(cfg.seed, static_cast<std::uint64_t>(t));
    draw(cfg.n, rng, pts);
    ++hist[static_cast<size_t>(chain_vertex_count(pts))];
  }
  return from_histogram(cfg, hist);
}

Comparison compare_to_exact(const EmpiricalDistribution& emp, std::span<const double> exact_row) {
  for (const auto& [f0, c] : emp.counts) {
    const int k = f0 - 2;
    if (k < 0 || k >= static_cast<int>(exact_row.size())) {
      throw std::out_of_range("observed f0 = " + std::to_string(f0) + " lies outside the exact row");
    }
  }
  Comparison out;
  const double reps = static_cast<double>(emp.reps);
  double m2 = 0.0;
  for (size_t k = 0; k < exact_row.size(); ++k) {
    const double p = exact_row[k];
    const double f0 = static_cast<double>(k) + 2.0;
    const double phat = emp.pmf(static_cast<int>(k) + 2);
    out.tv += std::abs(phat - p);
    out.exact_mean += f0 * p;
    m2 += f0 * f0 * p;
    const double expected = reps * p;
    if (expected >= 5.0) {
      const double diff = phat * reps - expected;
      out.chi_square += diff * diff / expected;
      ++out.chi_square_bins;
    }
  }
  out.tv *= 0.5;
  out.exact_sd = std::sqrt(std::max(0.0, m2 - out.exact_mean * out.exact_mean));
  out.mean_z = (emp.mean() - out.exact_mean) / (out.exact_sd / std::sqrt(reps));
  return out;
}

std::vector<OverlayRow> gaussian_overlay(const EmpiricalDistribution& emp) {
  const asymptotics::CltPredictors clt = asymptotics::clt_predictors(emp.n);
  std::vector<OverlayRow> rows;
  if (emp.counts.empty()) return rows;
  const int lo = emp.counts.begin()->first;
  const int hi = emp.counts.rbegin()->first;
  for (int f0 = lo; f0 <= hi; ++f0) {
    rows.push_back({f0, emp.pmf(f0), asymptotics::normal_pdf((f0 - clt.mean) / clt.sd) / clt.sd});
  }
  return rows;
}

}  // namespace convexchain::geometry
