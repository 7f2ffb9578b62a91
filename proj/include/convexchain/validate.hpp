#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "convexchain/exactdist.hpp"

// Acceptance checks, grouped into numbered criteria and named suites.
namespace convexchain::validate {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0.0;
  bool passed() const;
};

struct Options {
  std::uint64_t seed = 20240917;
  int threads = 0;  // 0: OpenMP default
};

inline constexpr int kCriterionCount = 15;

// Suite name -> criterion ids. "all" runs every criterion.
const std::map<std::string, std::vector<int>>& suites();
std::optional<std::vector<int>> suite_members(const std::string& name);

class Runner {
 public:
  explicit Runner(Options options = {});
  ~Runner();
  Runner(const Runner&) = delete;
  Runner& operator=(const Runner&) = delete;

  CriterionResult run(int id);

 private:
  // Shared float DP table: rows 10^2 .. 10^7, columns k <= 80.
  const exact::TailTable& tail();

  Options options_;
  std::unique_ptr<exact::TailTable> tail_;
};

}  // namespace convexchain::validate
