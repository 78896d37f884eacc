#pragma once

#include <vector>

#include "tpz/symbol.hpp"

namespace tpz {

enum class RegionKind { support, outside };

struct RegionQuery {
  Complex z;
  RegionKind kind = RegionKind::support;
  int delta = 0;           // meaningful when kind == outside
  double I_value = 0.0;    // +inf on the curve
  double curve_dist = 0.0;
};

struct BrownPoint {
  Complex z;
  double omega = 0.0;
  double density = 0.0;
};

inline constexpr double kQuadTol = 1e-13;
inline constexpr double kCurveTol = 1e-6;

// (1/2pi) int dtheta / |a(e^{i theta}) - z|^2; +inf within kCurveTol * scale of the curve.
double point_integral(const LaurentSymbol& sym, Complex z, double tol = kQuadTol);
bool in_support(const LaurentSymbol& sym, double sigma, Complex z);
double subordination_omega(const LaurentSymbol& sym, double sigma, Complex z);
BrownPoint brown_density(const LaurentSymbol& sym, double sigma, Complex z);
RegionQuery classify(const LaurentSymbol& sym, double sigma, Complex z);

// Points whose disk of radius margin avoids the support, checked on a ring stencil.
bool outside_with_margin(const LaurentSymbol& sym, double sigma, Complex z, double margin);

using Polyline = std::vector<Complex>;
std::vector<Polyline> boundary_grid(const LaurentSymbol& sym, double sigma, const Window& window, int resolution);

// Row-major raster of classify over an nx x ny lattice (imag index outer).
std::vector<RegionQuery> region_raster(const LaurentSymbol& sym, double sigma, const Window& window, int nx, int ny);
std::vector<RegionQuery> region_raster_serial(const LaurentSymbol& sym, double sigma, const Window& window, int nx,
                                              int ny);
Complex lattice_point(const Window& window, int nx, int ny, int i, int j);

// Midpoint rule on a polar grid clipped to the support.
double brown_mass(const LaurentSymbol& sym, double sigma, double radius, int n_radial, int n_angular);

}  // namespace tpz
