// Runs every acceptance criterion and prints one PASS/FAIL line each.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "tpz/harness.hpp"
#include "tpz/limits.hpp"

using namespace tpz;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Outcome from_check(const CheckResult& c, const char* key = nullptr) {
  Outcome o{c.pass, ""};
  if (key && c.detail.contains(key)) o.detail = std::string(key) + "=" + c.detail[key].dump();
  if (c.detail.contains("error")) o.detail += " error=" + c.detail["error"].dump();
  return o;
}

// Expected zero count of phi for a = lambda, sigma^2 = 0.36 in |z| < R, from the first-intensity
// formula applied to the covariance 1 / ((1 - |z|^2)(1 - sigma^2 - |z|^2)).
double expected_zero_count(double radius) {
  const double r2 = radius * radius;
  return r2 / (1.0 - r2) + r2 / (0.64 - r2);
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe per_trial_total(const std::vector<std::vector<int>>& counts, int first_cell, int last_cell) {
  std::vector<double> totals;
  for (const auto& row : counts) {
    double t = 0.0;
    for (int c = first_cell; c < last_cell; ++c) t += row[static_cast<std::size_t>(c)];
    totals.push_back(t);
  }
  const double n = static_cast<double>(totals.size());
  double mean = 0.0, var = 0.0;
  for (double t : totals) mean += t;
  mean /= n;
  for (double t : totals) var += (t - mean) * (t - mean);
  var /= n - 1.0;
  return {mean, std::sqrt(var / n)};
}

Outcome criterion_outliers() {
  ExperimentConfig cfg;
  cfg.n = 500;
  cfg.trials = 50;
  const auto rep = run_outliers(cfg);
  return {rep.beyond_stable_radius == 0,
          "beyond_1.25=" + std::to_string(rep.beyond_stable_radius) + " trials=" + std::to_string(rep.trials)};
}

Outcome criterion_compare() {
  ExperimentConfig cfg;
  compare_region(cfg);
  const auto predicted = predicted_cell_counts(cfg);
  const auto base = compare_counts(cfg.n, empirical_cell_counts(cfg, cfg.n), predicted);
  const auto doubled = compare_counts(2 * cfg.n, empirical_cell_counts(cfg, 2 * cfg.n), predicted);
  const double allowance = std::hypot(base.discrepancy_se, doubled.discrepancy_se);
  const bool within = base.discrepancy <= 0.15;
  const bool no_growth = doubled.discrepancy <= base.discrepancy + allowance;
  // The sampled zero process must reproduce the closed-form intensity on the disk and the inner ring.
  const int sectors = cfg.cells.sectors;
  const auto disk = per_trial_total(predicted, 0, 2 * sectors);
  const auto inner = per_trial_total(predicted, 0, sectors);
  const double n_disk = expected_zero_count(0.7), n_inner = expected_zero_count(0.6);
  const bool intensity = std::abs(disk.mean - n_disk) <= 5.0 * disk.se && std::abs(inner.mean - n_inner) <= 5.0 * inner.se;
  std::string d = "D(400)=" + fmt("%.4f", base.discrepancy) + " D(800)=" + fmt("%.4f", doubled.discrepancy) +
                  " allowance=" + fmt("%.4f", allowance) + " predicted_disk=" + fmt("%.3f", disk.mean) + "+-" +
                  fmt("%.3f", disk.se) + " expected=" + fmt("%.3f", n_disk) + " predicted_inner=" +
                  fmt("%.3f", inner.mean) + " expected=" + fmt("%.3f", n_inner);
  return {within && no_growth && intensity, d};
}

Outcome criterion_clt() {
  const CltSpec spec;
  bool ok = true;
  std::string d;
  for (const auto& c : clt_battery(spec)) {
    const auto out = run_clt_case(c, spec.trials, 1, spec.moment_sigmas, spec.kurtosis_sigmas);
    ok = ok && out.pass;
    if (!out.pass) d += " failed:" + c.name;
  }
  return {ok, d.empty() ? "all cases" : d};
}

}  // namespace

int main() {
  const std::uint64_t seed = 1;
  const std::vector<Criterion> criteria{
      {1, "determinant identities", 10, [&] { return from_check(check_determinant_identities(seed), "toeplitz_minus_circulant_max_abs"); }},
      {2, "rank theorem", 30, [&] { return from_check(check_rank_theorem(seed), "agree"); }},
      {3, "exponential convergence of H", 30, [&] { return from_check(check_resolvent_convergence(seed), "exact_case_max_rel"); }},
      {4, "Szego limit", 5, [] { return from_check(check_szego(), "error_n30"); }},
      {5, "stable-region determinant ratio", 5, [] { return from_check(check_stable_ratio(), "bound"); }},
      {6, "support closed form and Brown mass", 60, [&] { return from_check(check_support(seed), "brown_mass"); }},
      {7, "no outliers in the stable region", 300, criterion_outliers},
      {8, "outliers vs zeros of phi", 1200, criterion_compare},
      {9, "trace CLT moments", 600, criterion_clt},
      {10, "Riemann-sum rate and resolvent decay", 5, [] { return from_check(check_riemann_decay(), "kappa_fit"); }},
      {11, "sum-product bound", 60, [&] { return from_check(check_sum_product(seed), "held"); }},
  };
  // Lines are mirrored to a report file since ctest hides output of passing tests.
  std::ofstream report("acceptance_report.txt");
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = secs < c.budget_seconds;
    const bool pass = o.pass && in_budget;
    failures += pass ? 0 : 1;
    char line[1024];
    std::snprintf(line, sizeof line, "%s criterion %d (%s): %s [%.1f s, budget %.0f s%s]", pass ? "PASS" : "FAIL", c.id,
                  c.name.c_str(), o.detail.c_str(), secs, c.budget_seconds, in_budget ? "" : ", over budget");
    std::printf("%s\n", line);
    std::fflush(stdout);
    report << line << '\n' << std::flush;
  }
  return failures == 0 ? 0 : 1;
}
