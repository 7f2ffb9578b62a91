// Command-line front end: exact and floating-point distributions, Monte Carlo
// runs with histogram overlay data, rate-function tables, generating-function
// values and the validation suites.
//
// Exit codes: 0 success, 1 validation failure, 2 usage or domain error.
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "convexchain/analytic.hpp"
#include "convexchain/asymptotics.hpp"
#include "convexchain/exactdist.hpp"
#include "convexchain/geometry.hpp"
#include "convexchain/rational.hpp"
#include "convexchain/validate.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace convexchain;

constexpr int kSchemaVersion = 1;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  // shortest representation that round-trips
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// RFC 4180: quote fields containing separators, quotes or line breaks.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  std::string csv() const {
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
      for (size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + csv_field(cells[i]);
      out += "\r\n";
    };
    line(header_);
    for (const auto& r : rows_) line(r);
    return out;
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

struct Common {
  std::string format = "json";
  std::string out;
};

void emit(const Common& common, const std::string& text) {
  if (common.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(common.out, std::ios::binary);
  if (!f) throw UsageError("cannot open output file " + common.out);
  f << text;
}

std::string render(const Common& common, const json& doc, const Table& table) {
  if (common.format == "csv") return table.csv();
  return doc.dump(2) + "\n";
}

json header(const std::string& command) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = command;
  return doc;
}

// ---- exact ----------------------------------------------------------------

struct ExactArgs {
  int n = 0;
  std::string mode = "exact";
  std::optional<int> k_max;
  int order = 4;
};

int cmd_exact(const ExactArgs& a, const Common& common) {
  if (a.n < 0) throw UsageError("--n must be non-negative");
  if (a.order < 0 || a.order > exact::kMaxJetOrder) {
    throw UsageError("--order must lie in 0.." + std::to_string(exact::kMaxJetOrder));
  }
  if (a.k_max && *a.k_max < 0) throw UsageError("--k-max must be non-negative");
  const int top = std::min(a.n, a.k_max.value_or(a.n));

  json doc = header("exact");
  doc["n"] = a.n;
  doc["mode"] = a.mode;
  json rows = json::array();
  Table table({"k", "f0", "p"});
  json summary;

  if (a.mode == "exact") {
    if (a.n > exact::kExactCap) {
      throw UsageError("exact mode is capped at n = " + std::to_string(exact::kExactCap) + "; use --mode float");
    }
    const exact::ExactDistribution d = exact::distribution_exact(a.n);
    Rational mean = 0;
    Rational second = 0;
    for (int k = 0; k <= a.n; ++k) {
      const Rational f0(k + 2);
      mean += f0 * d[k];
      second += f0 * f0 * d[k];
    }
    for (int k = 0; k <= top; ++k) {
      const std::string p = to_string(d[k]);
      rows.push_back({{"k", k}, {"p", p}});
      table.add({std::to_string(k), std::to_string(k + 2), p});
    }
    const Rational variance = second - mean * mean;
    summary["mean"] = to_string(mean);
    summary["variance"] = to_string(variance);
    summary["mean_float"] = number(to_double(mean));
    summary["variance_float"] = number(to_double(variance));
  } else {
    std::vector<double> p;
    if (a.k_max && *a.k_max < a.n) {
      const int keep[] = {a.n};
      p = exact::tail_dp(a.n, std::max(1, *a.k_max), keep).row(a.n).p;
    } else {
      p = exact::distribution_float(a.n);
    }
    for (int k = 0; k <= top; ++k) {
      rows.push_back({{"k", k}, {"p", number(p[static_cast<size_t>(k)])}});
      table.add({std::to_string(k), std::to_string(k + 2), csv_number(p[static_cast<size_t>(k)])});
    }
    if (!a.k_max || *a.k_max >= a.n) {
      double mean = 0.0;
      double second = 0.0;
      for (size_t k = 0; k < p.size(); ++k) {
        mean += (static_cast<double>(k) + 2.0) * p[k];
        second += (static_cast<double>(k) + 2.0) * (static_cast<double>(k) + 2.0) * p[k];
      }
      summary["mean"] = number(mean);
      summary["variance"] = number(second - mean * mean);
    }
  }
  if (a.order >= 1 && a.n >= 1) {
    const exact::CumulantVector kappa = exact::exact_cumulants(a.n, a.order);
    json cum = json::array();
    for (double v : kappa.values) cum.push_back(number(v));
    summary["cumulants"] = cum;
  }
  doc["rows"] = rows;
  doc["summary"] = summary;
  emit(common, render(common, doc, table));
  return 0;
}

// ---- simulate -------------------------------------------------------------

struct SimulateArgs {
  int n = 0;
  std::int64_t reps = 1000;
  std::uint64_t seed = 1;
  int threads = 0;
};

int cmd_simulate(const SimulateArgs& a, const Common& common) {
  if (a.n < 0) throw UsageError("--n must be non-negative");
  if (a.reps < 1) throw UsageError("--reps must be at least 1");
  if (a.threads < 0) throw UsageError("--threads must be non-negative");
  const geometry::EmpiricalDistribution emp = geometry::monte_carlo({a.n, a.reps, a.seed, a.threads});

  std::vector<geometry::OverlayRow> overlay;
  if (a.n >= 2) overlay = geometry::gaussian_overlay(emp);

  json doc = header("simulate");
  doc["n"] = a.n;
  doc["reps"] = a.reps;
  doc["seed"] = a.seed;
  json rows = json::array();
  Table table({"f0", "count", "empirical", "gaussian"});
  const int lo = emp.counts.begin()->first;
  const int hi = emp.counts.rbegin()->first;
  for (int f0 = lo; f0 <= hi; ++f0) {
    auto it = emp.counts.find(f0);
    const std::int64_t count = it == emp.counts.end() ? 0 : it->second;
    json row = {{"f0", f0}, {"count", count}, {"empirical", number(emp.pmf(f0))}};
    std::string gauss;
    if (!overlay.empty()) {
      const double g = overlay[static_cast<size_t>(f0 - lo)].gaussian;
      row["gaussian"] = number(g);
      gauss = csv_number(g);
    }
    rows.push_back(row);
    table.add({std::to_string(f0), std::to_string(count), csv_number(emp.pmf(f0)), gauss});
  }
  json summary;
  summary["mean"] = number(emp.mean());
  summary["variance"] = a.reps >= 2 ? number(emp.variance()) : json(nullptr);
  if (a.n >= 2) {
    const asymptotics::CltPredictors clt = asymptotics::clt_predictors(a.n);
    summary["gaussian_mean"] = number(clt.mean);
    summary["gaussian_sd"] = number(clt.sd);
  }
  doc["rows"] = rows;
  doc["summary"] = summary;

  // Exact comparison against a float DP row wide enough for every observation.
  const int k_cover = std::min(a.n, hi - 2 + 10);
  std::vector<double> row;
  if (k_cover >= a.n) {
    row = exact::distribution_float(a.n);
  } else {
    const int keep[] = {a.n};
    row = exact::tail_dp(a.n, std::max(1, k_cover), keep).row(a.n).p;
  }
  const geometry::Comparison cmp = geometry::compare_to_exact(emp, row);
  doc["comparison"] = {{"tv", number(cmp.tv)},
                       {"chi_square", number(cmp.chi_square)},
                       {"chi_square_bins", cmp.chi_square_bins},
                       {"mean_z", number(cmp.mean_z)},
                       {"exact_mean", number(cmp.exact_mean)},
                       {"exact_sd", number(cmp.exact_sd)}};
  emit(common, render(common, doc, table));
  return 0;
}

// ---- rate -----------------------------------------------------------------

std::vector<double> parse_grid(const std::string& spec) {
  // start:stop:step
  std::vector<double> parts;
  std::stringstream ss(spec);
  ss.imbue(std::locale::classic());
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--x-grid expects start:stop:step, got " + spec);
    }
  }
  if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) {
    throw UsageError("--x-grid expects start:stop:step with step > 0 and stop >= start");
  }
  std::vector<double> xs;
  const auto count = static_cast<long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
  if (count > 1000000) throw UsageError("--x-grid has more than 10^6 points");
  for (long i = 0; i <= count; ++i) xs.push_back(parts[0] + static_cast<double>(i) * parts[2]);
  return xs;
}

double numeric_lf(double x) {
  try {
    return asymptotics::legendre_fenchel(asymptotics::mu_prime, asymptotics::mu, x, asymptotics::mu_second);
  } catch (const std::range_error&) {
    return std::numeric_limits<double>::infinity();
  }
}

int cmd_rate(const std::vector<double>& xs_in, const std::string& grid, const std::optional<double>& c,
             const Common& common) {
  std::vector<double> xs = xs_in;
  if (!grid.empty()) {
    const std::vector<double> g = parse_grid(grid);
    xs.insert(xs.end(), g.begin(), g.end());
  }
  if (c) xs.push_back(*c);
  if (xs.empty()) throw UsageError("rate needs --x, --x-grid or --c");

  json doc = header("rate");
  json rows = json::array();
  Table table({"x", "I", "I1", "I2", "lf"});
  for (double x : xs) {
    const double I = asymptotics::rate_I(x);
    const double I1 = asymptotics::rate_I1(x);
    const double I2 = asymptotics::rate_I2(x);
    const double lf = numeric_lf(x);
    rows.push_back({{"x", number(x)}, {"I", number(I)}, {"I1", number(I1)}, {"I2", number(I2)}, {"lf", number(lf)}});
    table.add({csv_number(x), csv_number(I), csv_number(I1), csv_number(I2), csv_number(lf)});
  }
  doc["rows"] = rows;
  if (c && *c > 0.0 && *c < 0.75) {
    const asymptotics::SaddlePoint s = asymptotics::saddle_point(*c);
    doc["saddle"] = {{"c", number(s.c)},
                     {"alpha_star", number(s.alpha_star)},
                     {"sigma_star", number(s.sigma_star)},
                     {"H", number(s.H)}};
  }
  emit(common, render(common, doc, table));
  return 0;
}

// ---- gf -------------------------------------------------------------------

int cmd_gf(double z, int n, const Common& common) {
  if (n < 0) throw UsageError("--n must be non-negative");
  const analytic::SingularData s = analytic::singular_constants(z);
  json doc = header("gf");
  doc["z"] = number(z);
  doc["n"] = n;
  const double g = exact::eval_G(n, z);
  Table table({"n", "z", "G_n", "predicted"});
  json summary = {{"alpha", number(s.alpha)}, {"K", number(s.K)}, {"L", number(s.L)}, {"half_integer", s.half_integer}};
  if (s.Ck) summary["C_k"] = number(*s.Ck);
  summary["G_n"] = number(g);
  std::string predicted;
  if (n >= 1) {
    const analytic::GnPrediction p = analytic::predicted_Gn(z, n);
    summary["predicted"] = number(p.value);
    summary["near_half_integer"] = p.near_half_integer;
    predicted = csv_number(p.value);
  }
  doc["summary"] = summary;
  table.add({std::to_string(n), csv_number(z), csv_number(g), predicted});
  emit(common, render(common, doc, table));
  return 0;
}

// ---- validate -------------------------------------------------------------

int cmd_validate(const std::string& suite, const validate::Options& options, const Common& common) {
  const auto ids = validate::suite_members(suite);
  if (!ids) {
    std::string names;
    for (const auto& [name, _] : validate::suites()) names += " " + name;
    throw UsageError("unknown suite '" + suite + "'; available:" + names);
  }
  validate::Runner runner(options);
  json doc = header("validate");
  doc["suite"] = suite;
  json crit = json::array();
  Table table({"criterion", "title", "check", "pass", "detail"});
  bool all = true;
  std::string text;
  for (int id : *ids) {
    const validate::CriterionResult r = runner.run(id);
    all = all && r.passed();
    json checks = json::array();
    char line[256];
    std::snprintf(line, sizeof line, "criterion %2d: %s  %s (%.1f s)\n", id, r.passed() ? "PASS" : "FAIL",
                  r.title.c_str(), r.seconds);
    text += line;
    for (const auto& c : r.checks) {
      checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
      table.add({std::to_string(id), r.title, c.name, c.pass ? "true" : "false", c.detail});
      text += std::string("    ") + (c.pass ? "ok    " : "FAIL  ") + c.name + ": " + c.detail + "\n";
    }
    crit.push_back({{"id", id}, {"title", r.title}, {"pass", r.passed()}, {"seconds", number(r.seconds)}, {"checks", checks}});
  }
  doc["criteria"] = crit;
  doc["pass"] = all;
  if (common.format == "text") {
    emit(common, text);
  } else {
    emit(common, render(common, doc, table));
  }
  return all ? 0 : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vertex count of the random convex chain in a triangle"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub, std::vector<std::string> formats) {
    sub->add_option("--format", common.format, "output format")->check(CLI::IsMember(formats));
    sub->add_option("--out", common.out, "write to this file instead of stdout");
  };

  ExactArgs exact_args;
  auto* exact_cmd = app.add_subcommand("exact", "distribution of f0 for n points");
  exact_cmd->add_option("--n", exact_args.n, "number of points")->required();
  exact_cmd->add_option("--mode", exact_args.mode, "exact rationals or double precision")
      ->check(CLI::IsMember({"exact", "float"}));
  exact_cmd->add_option("--k-max", exact_args.k_max, "last k to emit (float mode: truncated DP)");
  exact_cmd->add_option("--order", exact_args.order, "cumulants of orders 1..R");
  add_common(exact_cmd, {"csv", "json"});

  SimulateArgs sim_args;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo histogram with Gaussian overlay");
  sim_cmd->add_option("--n", sim_args.n, "points per trial")->required();
  sim_cmd->add_option("--reps", sim_args.reps, "number of trials");
  sim_cmd->add_option("--seed", sim_args.seed, "64-bit seed");
  sim_cmd->add_option("--threads", sim_args.threads, "worker threads (0: default)");
  add_common(sim_cmd, {"csv", "json"});

  std::vector<double> xs;
  std::string grid;
  std::optional<double> c;
  auto* rate_cmd = app.add_subcommand("rate", "rate function table");
  rate_cmd->add_option("--x", xs, "evaluation points")->allow_extra_args(false);
  rate_cmd->add_option("--x-grid", grid, "start:stop:step");
  rate_cmd->add_option("--c", c, "single point c, with saddle data when 0 < c < 3/4");
  add_common(rate_cmd, {"csv", "json"});

  double z = 0.5;
  int gf_n = 0;
  auto* gf_cmd = app.add_subcommand("gf", "G_n(z), its transfer prediction and singular constants");
  gf_cmd->add_option("--z", z, "argument z > -1/8")->required();
  gf_cmd->add_option("--n", gf_n, "index n")->required();
  add_common(gf_cmd, {"csv", "json"});

  std::string suite = "all";
  validate::Options vopts;
  auto* val_cmd = app.add_subcommand("validate", "run an acceptance suite");
  val_cmd->add_option("suite", suite, "oracle, identities, analytic, cumulants, clt, rate, probability, montecarlo, all");
  val_cmd->add_option("--seed", vopts.seed, "Monte Carlo seed");
  val_cmd->add_option("--threads", vopts.threads, "worker threads (0: default)");
  add_common(val_cmd, {"csv", "json", "text"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*exact_cmd) return cmd_exact(exact_args, common);
    if (*sim_cmd) return cmd_simulate(sim_args, common);
    if (*rate_cmd) return cmd_rate(xs, grid, c, common);
    if (*gf_cmd) return cmd_gf(z, gf_n, common);
    if (*val_cmd) {
      if (val_cmd->count("--format") == 0) common.format = "text";
      if (!validate::suite_members(suite)) {
        std::cerr << app.get_subcommand("validate")->help();
      }
      return cmd_validate(suite, vopts, common);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "out of range: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
