#pragma once

// Monte Carlo simulation of the random convex chain in the triangle with
// vertices (0,0), (1,0), (0,1).

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "convexchain/rng.hpp"

namespace convexchain::geometry {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Uniform point of T by folding the unit square along x + y = 1.
Point sample_triangle(Xoshiro256& rng);

// Number of vertices of conv{(1,0), (0,1), points}. Collinear points are not
// vertices. Points are assumed to lie in T.
int chain_vertex_count(std::span<const Point> points);

// One trial: n points from rng, vertex count via a prefilter that discards
// points inside the triangle spanned by (1,0), (0,1) and the point closest
// to the origin in the x + y direction. scratch is reused between calls.
int simulate_trial(int n, Xoshiro256& rng, std::vector<Point>& scratch);

struct SimulationConfig {
  int n = 0;
  std::int64_t reps = 1;
  std::uint64_t seed = 0;
  int threads = 0;  // 0: OpenMP default
};

struct EmpiricalDistribution {
  int n = 0;
  std::int64_t reps = 0;
  std::map<int, std::int64_t> counts;  // f0 value -> trials

  double mean() const;
  double variance() const;  // unbiased
  double pmf(int f0) const;
  bool operator==(const EmpiricalDistribution&) const = default;
};

// Parallel kernel (OpenMP over trials, prefiltered hull).
EmpiricalDistribution monte_carlo(const SimulationConfig& cfg);
// Reference: one thread, full hull of every trial. Same streams, same result.
EmpiricalDistribution monte_carlo_serial(const SimulationConfig& cfg);

struct Comparison {
  double tv = 0.0;
  double chi_square = 0.0;
  int chi_square_bins = 0;  // bins with expected count >= 5
  double mean_z = 0.0;
  double exact_mean = 0.0;
  double exact_sd = 0.0;
};

// exact_row[k] = P(f0 = k + 2). Throws std::out_of_range if an observed
// value lies outside the row.
Comparison compare_to_exact(const EmpiricalDistribution& emp, std::span<const double> exact_row);

// Histogram overlay: empirical pmf of f0 next to the Gaussian density with
// mean (2/3) log n and variance (10/27) log n. Requires n >= 2.
struct OverlayRow {
  int f0 = 0;
  double empirical = 0.0;
  double gaussian = 0.0;
};
std::vector<OverlayRow> gaussian_overlay(const EmpiricalDistribution& emp);

}  // namespace convexchain::geometry
