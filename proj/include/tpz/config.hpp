#pragma once

#include <cstdint>
#include <filesystem>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "tpz/matgen.hpp"

namespace tpz {

// Disk split into annular sectors for counts-in-cells.
struct CellSpec {
  Complex center{0.0, 0.0};
  double radius = 0.7;
  double reach = 0.75;          // phi base grid and tile radius, must stay in the same region
  std::vector<double> edges{0.0, 0.6, 0.7};  // radial edges, last equals radius
  int sectors = 2;
  double zero_tol = 1e-2;
  int zero_segments = 2;

  nlohmann::json to_json() const;
  static CellSpec from_json(const nlohmann::json& j);
};

struct CltSpec {
  std::vector<int> orders{2, 3};
  std::vector<int> sizes{100, 300};
  int trials = 10000;
  double moment_sigmas = 5.0;
  double kurtosis_sigmas = 6.0;

  nlohmann::json to_json() const;
  static CltSpec from_json(const nlohmann::json& j);
};

struct ExperimentConfig {
  LaurentSymbol sym = symbols::shift();
  NoiseModel noise{Distribution::complex_gaussian, Basis::identity, ConstantSigma{0.6}};
  int n = 400;
  int trials = 200;
  std::uint64_t seed = 1;
  Window window{-1.5, 1.5, -1.5, 1.5};
  int grid_nx = 200;
  int grid_ny = 200;
  std::optional<double> support_margin;  // default 0.05 * scale
  double curve_tol = 1e-6;
  double stable_radius = 1.25;           // outlier-free check |z| > stable_radius
  int n_cap = 4000;
  std::filesystem::path out_dir = "out";
  bool svg = false;
  CellSpec cells;
  CltSpec clt;

  double margin() const;
  void validate() const;

  nlohmann::json to_json() const;
  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig load(const std::filesystem::path& path);
};

nlohmann::json window_to_json(const Window& w);
Window window_from_json(const nlohmann::json& j);

}  // namespace tpz
