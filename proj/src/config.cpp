#include "tpz/config.hpp"

#include <fstream>

namespace tpz {

namespace {

LaurentSymbol symbol_from_json(const nlohmann::json& j) {
  if (!j.is_string()) return LaurentSymbol::from_json(j);
  const auto name = j.get<std::string>();
  for (auto& [key, sym] : symbols::bundled())
    if (key == name) return sym;
  if (name == "lambda+lambda^-1") return symbols::tridiagonal();
  if (name == "szego") return symbols::szego_example();
  throw DomainError("unknown bundled symbol: " + name);
}

}  // namespace

nlohmann::json window_to_json(const Window& w) { return {w.re0, w.re1, w.im0, w.im1}; }

Window window_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 4) throw DomainError("window must be [re0, re1, im0, im1]");
  Window w{j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
  if (!(w.re1 > w.re0) || !(w.im1 > w.im0)) throw DomainError("empty window");
  return w;
}

nlohmann::json CellSpec::to_json() const {
  return {{"center", {center.real(), center.imag()}},
          {"radius", radius},
          {"reach", reach},
          {"edges", edges},
          {"sectors", sectors},
          {"zero_tol", zero_tol},
          {"zero_segments", zero_segments}};
}

CellSpec CellSpec::from_json(const nlohmann::json& j) {
  CellSpec c;
  if (j.contains("center")) c.center = {j["center"].at(0).get<double>(), j["center"].at(1).get<double>()};
  c.radius = j.value("radius", c.radius);
  c.reach = j.value("reach", std::max(c.reach, c.radius * 1.05));
  if (j.contains("edges")) c.edges = j["edges"].get<std::vector<double>>();
  else c.edges = {0.0, c.radius};
  c.sectors = j.value("sectors", c.sectors);
  c.zero_tol = j.value("zero_tol", c.zero_tol);
  c.zero_segments = j.value("zero_segments", c.zero_segments);
  return c;
}

nlohmann::json CltSpec::to_json() const {
  return {{"orders", orders},
          {"sizes", sizes},
          {"trials", trials},
          {"moment_sigmas", moment_sigmas},
          {"kurtosis_sigmas", kurtosis_sigmas}};
}

CltSpec CltSpec::from_json(const nlohmann::json& j) {
  CltSpec c;
  if (j.contains("orders")) c.orders = j["orders"].get<std::vector<int>>();
  if (j.contains("sizes")) c.sizes = j["sizes"].get<std::vector<int>>();
  c.trials = j.value("trials", c.trials);
  c.moment_sigmas = j.value("moment_sigmas", c.moment_sigmas);
  c.kurtosis_sigmas = j.value("kurtosis_sigmas", c.kurtosis_sigmas);
  return c;
}

double ExperimentConfig::margin() const { return support_margin.value_or(0.05 * sym.scale()); }

void ExperimentConfig::validate() const {
  if (trials < 1) throw DomainError("trials must be >= 1");
  if (n <= sym.band()) throw SizeError("n must exceed r+s");
  if (!(margin() > 0.0)) throw DomainError("support margin must be > 0");
  if (grid_nx < 2 || grid_ny < 2) throw DomainError("grid needs at least 2 x 2 points");
  if (cells.edges.size() < 2 || cells.edges.front() != 0.0 || std::abs(cells.edges.back() - cells.radius) > 1e-12)
    throw DomainError("cell edges must run from 0 to the disk radius");
  for (std::size_t i = 1; i < cells.edges.size(); ++i)
    if (!(cells.edges[i] > cells.edges[i - 1])) throw DomainError("cell edges must increase");
  if (cells.sectors < 1) throw DomainError("sectors must be >= 1");
  if (!(cells.reach > cells.radius)) throw DomainError("reach must exceed the disk radius");
  if (clt.trials < 2) throw DomainError("clt trials must be >= 2");
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j{{"sym", sym.to_json()},
                   {"noise", noise.to_json()},
                   {"n", n},
                   {"trials", trials},
                   {"seed", seed},
                   {"window", window_to_json(window)},
                   {"grid", {grid_nx, grid_ny}},
                   {"curve_tol", curve_tol},
                   {"stable_radius", stable_radius},
                   {"n_cap", n_cap},
                   {"out", out_dir.string()},
                   {"svg", svg},
                   {"cells", cells.to_json()},
                   {"clt", clt.to_json()}};
  j["support_margin"] = margin();
  return j;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  if (j.contains("sym")) c.sym = symbol_from_json(j["sym"]);
  if (j.contains("noise")) c.noise = NoiseModel::from_json(j["noise"]);
  c.n = j.value("n", c.n);
  c.trials = j.value("trials", c.trials);
  c.seed = j.value("seed", c.seed);
  if (j.contains("window")) c.window = window_from_json(j["window"]);
  if (j.contains("grid")) {
    const auto& g = j["grid"];
    if (g.is_number()) c.grid_nx = c.grid_ny = g.get<int>();
    else {
      c.grid_nx = g.at(0).get<int>();
      c.grid_ny = g.at(1).get<int>();
    }
  }
  if (j.contains("support_margin")) c.support_margin = j["support_margin"].get<double>();
  c.curve_tol = j.value("curve_tol", c.curve_tol);
  c.stable_radius = j.value("stable_radius", c.stable_radius);
  c.n_cap = j.value("n_cap", c.n_cap);
  if (j.contains("out")) c.out_dir = j["out"].get<std::string>();
  c.svg = j.value("svg", c.svg);
  if (j.contains("cells")) c.cells = CellSpec::from_json(j["cells"]);
  if (j.contains("clt")) c.clt = CltSpec::from_json(j["clt"]);
  c.validate();
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error("bad config " + path.string() + ": " + e.what());
  }
  return from_json(j);
}

}  // namespace tpz
