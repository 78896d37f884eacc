#pragma once

#include <cstdint>
#include <json.hpp>
#include <string>
#include <vector>

#include "tpz/config.hpp"
#include "tpz/fields.hpp"

namespace tpz {

struct CheckResult {
  std::string name;
  bool pass = false;
  nlohmann::json detail;
  double seconds = 0.0;
};
nlohmann::json to_json(const CheckResult& c);

// ---- spectra and outliers

// Eigenvalues of one draw of M_n; the draw is keyed by (seed, trial).
std::vector<Complex> model_spectrum(const LaurentSymbol& sym, const NoiseModel& noise, int n, std::uint64_t seed,
                                    std::uint64_t trial);

struct Outlier {
  Complex z;
  int delta = 0;
};
// Eigenvalues farther than margin from the support, labelled with their winding.
std::vector<Outlier> extract_outliers(const LaurentSymbol& sym, double sigma, std::span<const Complex> eigs,
                                      double margin);

struct OutlierReport {
  int n = 0;
  int trials = 0;
  std::vector<std::vector<Outlier>> per_trial;
  int beyond_stable_radius = 0;  // eigenvalues with |z| > stable radius over all trials
  int trials_with_outliers = 0;
  nlohmann::json to_json() const;
};
OutlierReport run_outliers(const ExperimentConfig& cfg);

// ---- counts in cells

// Annular sectors of the disk; cell index = ring * sectors + sector.
class CellGrid {
 public:
  explicit CellGrid(const CellSpec& spec);
  int size() const { return static_cast<int>((edges_.size() - 1) * sectors_); }
  // -1 outside the disk.
  int cell_of(Complex z) const;
  nlohmann::json describe(int cell) const;

 private:
  Complex center_;
  std::vector<double> edges_;
  int sectors_;
};

struct CellCounts {
  std::vector<double> mean;
  std::vector<double> se;
  int trials = 0;
};
// counts: trials x cells.
CellCounts summarize_counts(const std::vector<std::vector<int>>& counts);

struct ComparisonReport {
  int n = 0;
  CellCounts empirical;
  CellCounts predicted;
  std::vector<double> relative;  // |emp - pred| / pred per cell
  double discrepancy = 0.0;      // sum |emp - pred| / sum pred
  double discrepancy_se = 0.0;
  nlohmann::json to_json(const CellGrid& grid) const;
};

// Empirical side: eigenvalues of `trials` matrices counted per cell.
std::vector<std::vector<int>> empirical_cell_counts(const ExperimentConfig& cfg, int n);
// Predicted side: zeros of `trials` sampled phi fields counted per cell with multiplicity.
std::vector<std::vector<int>> predicted_cell_counts(const ExperimentConfig& cfg);
ComparisonReport compare_counts(int n, const std::vector<std::vector<int>>& empirical,
                                const std::vector<std::vector<int>>& predicted);
// Fails with RegionError unless the disk of reach lies in one region with delta != 0.
int compare_region(const ExperimentConfig& cfg);

// ---- trace statistics

struct CltCase {
  std::string name;
  int k = 2;
  int n = 100;
  Distribution dist = Distribution::real_gaussian;
  Basis basis = Basis::identity;
  bool identity_b = false;     // B_t = I instead of the diagonal profile
  bool check_moments = true;
  int expect_gaussian = -1;    // 1 must pass the screens, 0 must fail, -1 not screened
};

struct MomentCheck {
  double value = 0.0;
  double target = 0.0;
  double se = 0.0;
  double limit = 0.0;  // allowed |value - target| / se
  bool pass() const;
  nlohmann::json to_json() const;
};

struct CltOutcome {
  CltCase spec;
  Complex sigma;
  Complex sigma_prime;
  MomentCheck abs2;
  MomentCheck pseudo_re;
  MomentCheck pseudo_im;
  MomentCheck abs4;
  std::vector<MomentCheck> screens;  // skewness, excess kurtosis of Re and Im
  bool screens_pass = false;
  bool pass = false;
  nlohmann::json to_json() const;
};

std::vector<CltCase> clt_battery(const CltSpec& spec);
// B_0 = e_1 e_1^T and B_t = diag(1 + (j mod 3) / 4), conjugated by the basis.
std::vector<CMatrix> clt_matrices(const CltCase& c);
CltOutcome run_clt_case(const CltCase& c, int trials, std::uint64_t seed, double moment_sigmas,
                        double kurtosis_sigmas);

// ---- sum-product bound

struct DirectedMultigraph {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;  // (origin, terminus)
  bool even() const;
  bool weakly_connected() const;
};

struct SumProduct {
  Complex value;
  double bound = 0.0;
  double rank_bound = 0.0;  // 0 unless a rank edge is designated
  bool holds = true;
};
// Brute force over all n^|V| index assignments; rank_edge < 0 skips the rank-aware bound.
SumProduct sum_product(const DirectedMultigraph& g, std::span<const CMatrix> m, int rank_edge = -1, int rank = 0);
Complex sum_product_value(const DirectedMultigraph& g, std::span<const CMatrix> m);
Complex sum_product_value_serial(const DirectedMultigraph& g, std::span<const CMatrix> m);
DirectedMultigraph random_even_graph(std::uint64_t seed, int max_vertices);

// ---- deterministic checks

CheckResult check_determinant_identities(std::uint64_t seed);
CheckResult check_rank_theorem(std::uint64_t seed, int symbols = 100, double min_gap = 0.05);
CheckResult check_resolvent_convergence(std::uint64_t seed, int symbols = 10);
CheckResult check_szego();
CheckResult check_stable_ratio();
CheckResult check_support(std::uint64_t seed);
CheckResult check_riemann_decay();
CheckResult check_sum_product(std::uint64_t seed, int graphs = 200);
CheckResult check_bundled_symbols();

// ---- commands; each writes under cfg.out_dir and returns its report

nlohmann::json cmd_spectrum(const ExperimentConfig& cfg);
nlohmann::json cmd_regions(const ExperimentConfig& cfg);
nlohmann::json cmd_outliers(const ExperimentConfig& cfg);
nlohmann::json cmd_compare(const ExperimentConfig& cfg);
nlohmann::json cmd_clt(const ExperimentConfig& cfg);
nlohmann::json cmd_verify(const ExperimentConfig& cfg);
nlohmann::json cmd_instability_demo(const ExperimentConfig& cfg);
nlohmann::json cmd_zeros(const ExperimentConfig& cfg);

double model_sigma(const ExperimentConfig& cfg, int n);

}  // namespace tpz
