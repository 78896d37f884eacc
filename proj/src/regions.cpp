#include "tpz/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "tpz/quadrature.hpp"

namespace tpz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Complex symbol_at(const LaurentSymbol& sym, double theta) { return eval_symbol(sym, std::polar(1.0, theta)); }

// Mean of 1/(|a - z|^2 + t) and of its t-derivative.
struct ResolventMoments {
  double first = 0.0;
  double second = 0.0;
};

ResolventMoments moments(const LaurentSymbol& sym, Complex z, double t) {
  const auto first = periodic_mean(
      [&](double th) { return 1.0 / (std::norm(symbol_at(sym, th) - z) + t); }, kQuadTol);
  const auto second = periodic_mean(
      [&](double th) {
        const double d = std::norm(symbol_at(sym, th) - z) + t;
        return 1.0 / (d * d);
      },
      kQuadTol);
  return {first.value, second.value};
}

bool on_curve(const LaurentSymbol& sym, double dist) { return dist < kCurveTol * std::max(1.0, sym.scale()); }

}  // namespace

double point_integral(const LaurentSymbol& sym, Complex z, double tol) {
  if (on_curve(sym, curve_distance(sym, z))) return kInf;
  return periodic_mean([&](double th) { return 1.0 / std::norm(symbol_at(sym, th) - z); }, tol).value;
}

bool in_support(const LaurentSymbol& sym, double sigma, Complex z) {
  if (sigma < 0.0) throw DomainError("sigma must be nonnegative");
  const double i_value = point_integral(sym, z);
  if (std::isinf(i_value)) return true;
  if (sigma == 0.0) return false;
  return i_value * sigma * sigma >= 1.0 - 1e-12;
}

double subordination_omega(const LaurentSymbol& sym, double sigma, Complex z) {
  if (sigma <= 0.0) throw DomainError("subordination requires sigma > 0");
  const double target = 1.0 / (sigma * sigma);
  const double i_value = point_integral(sym, z);
  if (!(i_value > target * (1.0 + 1e-12))) throw DomainError("point is not inside the support interior");
  // f(t) = E[1/(|a-z|^2 + t)] is convex decreasing in t = omega^2; root is bracketed by (0, sigma^2].
  double lo = 0.0, hi = sigma * sigma;
  double t = 0.5 * hi;
  for (int it = 0; it < 200; ++it) {
    const auto m = moments(sym, z, t);
    const double g = m.first - target;
    if (std::abs(g) <= 1e-13 * target) break;
    if (g > 0.0) lo = t;
    else hi = t;
    if (hi - lo <= 1e-16 * sigma * sigma) break;
    double next = t + g / m.second;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    t = next;
  }
  return std::sqrt(t);
}

BrownPoint brown_density(const LaurentSymbol& sym, double sigma, Complex z) {
  const double omega = subordination_omega(sym, sigma, z);
  const double w2 = omega * omega;
  const double e2 = periodic_mean(
                        [&](double th) {
                          const double d = std::norm(symbol_at(sym, th) - z) + w2;
                          return 1.0 / (d * d);
                        },
                        kQuadTol)
                        .value;
  auto component = [&](bool imag) {
    return periodic_mean(
               [&](double th) {
                 const Complex diff = symbol_at(sym, th) - z;
                 const double d = std::norm(diff) + w2;
                 return (imag ? diff.imag() : diff.real()) / (d * d);
               },
               kQuadTol)
        .value;
  };
  const Complex e1{component(false), component(true)};
  return {z, omega, (w2 * e2 + std::norm(e1) / e2) / kPi};
}

RegionQuery classify(const LaurentSymbol& sym, double sigma, Complex z) {
  RegionQuery q;
  q.z = z;
  q.curve_dist = curve_distance(sym, z);
  q.I_value = on_curve(sym, q.curve_dist)
                  ? kInf
                  : periodic_mean([&](double th) { return 1.0 / std::norm(symbol_at(sym, th) - z); }, kQuadTol).value;
  const bool support = std::isinf(q.I_value) || (sigma > 0.0 && q.I_value * sigma * sigma >= 1.0 - 1e-12);
  if (support) {
    q.kind = RegionKind::support;
    return q;
  }
  try {
    q.delta = winding(sym, z);
    q.kind = RegionKind::outside;
  } catch (const OnCriticalCurve&) {
    q.kind = RegionKind::support;
  }
  return q;
}

bool outside_with_margin(const LaurentSymbol& sym, double sigma, Complex z, double margin) {
  const auto centre = classify(sym, sigma, z);
  if (centre.kind == RegionKind::support) return false;
  constexpr int kRing = 16;
  for (double frac : {0.5, 1.0}) {
    for (int k = 0; k < kRing; ++k) {
      const auto q = classify(sym, sigma, z + frac * margin * unit_root(k, kRing));
      if (q.kind == RegionKind::support || q.delta != centre.delta) return false;
    }
  }
  return true;
}

Complex lattice_point(const Window& window, int nx, int ny, int i, int j) {
  const double x = nx > 1 ? window.re0 + window.width() * i / (nx - 1) : window.center().real();
  const double y = ny > 1 ? window.im0 + window.height() * j / (ny - 1) : window.center().imag();
  return {x, y};
}

std::vector<RegionQuery> region_raster(const LaurentSymbol& sym, double sigma, const Window& window, int nx, int ny) {
  std::vector<RegionQuery> out(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
#pragma omp parallel for schedule(dynamic, 16)
  for (int idx = 0; idx < nx * ny; ++idx)
    out[static_cast<std::size_t>(idx)] = classify(sym, sigma, lattice_point(window, nx, ny, idx % nx, idx / nx));
  return out;
}

std::vector<RegionQuery> region_raster_serial(const LaurentSymbol& sym, double sigma, const Window& window, int nx,
                                              int ny) {
  std::vector<RegionQuery> out;
  out.reserve(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) out.push_back(classify(sym, sigma, lattice_point(window, nx, ny, i, j)));
  return out;
}

std::vector<Polyline> boundary_grid(const LaurentSymbol& sym, double sigma, const Window& window, int resolution) {
  if (resolution < 16) throw DomainError("boundary_grid needs resolution >= 16");
  const int n = resolution + 1;
  const double level = sigma > 0.0 ? -2.0 * std::log(sigma) : kInf;
  if (std::isinf(level)) return {};
  // Level function log I - log sigma^{-2}; capped on the curve itself.
  std::vector<double> v(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic, 16)
  for (int idx = 0; idx < n * n; ++idx) {
    const double i_value = point_integral(sym, lattice_point(window, n, n, idx % n, idx / n));
    v[static_cast<std::size_t>(idx)] = std::isinf(i_value) ? 50.0 : std::log(i_value) - level;
  }
  auto val = [&](int i, int j) { return v[static_cast<std::size_t>(j) * n + i]; };
  // Edge ids: horizontal (i,j)-(i+1,j) -> 2*(j*n+i); vertical (i,j)-(i,j+1) -> 2*(j*n+i)+1.
  auto edge_point = [&](long id) {
    const long base = id / 2;
    const int i = static_cast<int>(base % n), j = static_cast<int>(base / n);
    const int i2 = (id % 2 == 0) ? i + 1 : i;
    const int j2 = (id % 2 == 0) ? j : j + 1;
    const double a = val(i, j), b = val(i2, j2);
    const double t = a / (a - b);
    return lattice_point(window, n, n, i, j) + t * (lattice_point(window, n, n, i2, j2) - lattice_point(window, n, n, i, j));
  };
  std::vector<std::pair<long, long>> segments;
  for (int j = 0; j + 1 < n; ++j) {
    for (int i = 0; i + 1 < n; ++i) {
      const bool c0 = val(i, j) >= 0, c1 = val(i + 1, j) >= 0, c2 = val(i + 1, j + 1) >= 0, c3 = val(i, j + 1) >= 0;
      const long bottom = 2L * (j * n + i), top = 2L * ((j + 1) * n + i);
      const long left = 2L * (j * n + i) + 1, right = 2L * (j * n + i + 1) + 1;
      std::vector<long> crossings;
      if (c0 != c1) crossings.push_back(bottom);
      if (c1 != c2) crossings.push_back(right);
      if (c2 != c3) crossings.push_back(top);
      if (c3 != c0) crossings.push_back(left);
      if (crossings.size() == 2) {
        segments.emplace_back(crossings[0], crossings[1]);
      } else if (crossings.size() == 4) {
        const double centre = 0.25 * (val(i, j) + val(i + 1, j) + val(i + 1, j + 1) + val(i, j + 1));
        if ((centre >= 0) == c0) {
          segments.emplace_back(bottom, right);
          segments.emplace_back(top, left);
        } else {
          segments.emplace_back(bottom, left);
          segments.emplace_back(right, top);
        }
      }
    }
  }
  std::multimap<long, std::size_t> by_edge;
  for (std::size_t k = 0; k < segments.size(); ++k) {
    by_edge.emplace(segments[k].first, k);
    by_edge.emplace(segments[k].second, k);
  }
  std::vector<bool> used(segments.size(), false);
  std::vector<Polyline> lines;
  auto next_segment = [&](long edge) -> std::ptrdiff_t {
    auto [lo, hi] = by_edge.equal_range(edge);
    for (auto it = lo; it != hi; ++it)
      if (!used[it->second]) return static_cast<std::ptrdiff_t>(it->second);
    return -1;
  };
  auto extend = [&](std::vector<long>& chain) {
    while (true) {
      const auto k = next_segment(chain.back());
      if (k < 0) break;
      used[static_cast<std::size_t>(k)] = true;
      const auto& s = segments[static_cast<std::size_t>(k)];
      chain.push_back(s.first == chain.back() ? s.second : s.first);
    }
  };
  for (std::size_t k = 0; k < segments.size(); ++k) {
    if (used[k]) continue;
    used[k] = true;
    std::vector<long> chain{segments[k].first, segments[k].second};
    extend(chain);
    if (chain.front() != chain.back()) {
      std::reverse(chain.begin(), chain.end());
      extend(chain);
    }
    Polyline line;
    line.reserve(chain.size());
    for (long e : chain) line.push_back(edge_point(e));
    lines.push_back(std::move(line));
  }
  return lines;
}

double brown_mass(const LaurentSymbol& sym, double sigma, double radius, int n_radial, int n_angular) {
  const double dr = radius / n_radial;
  const double dt = 2.0 * kPi / n_angular;
  std::vector<double> ring(static_cast<std::size_t>(n_radial) * static_cast<std::size_t>(n_angular), 0.0);
#pragma omp parallel for schedule(dynamic, 8)
  for (int idx = 0; idx < n_radial * n_angular; ++idx) {
    const int ir = idx / n_angular, it = idx % n_angular;
    const double rad = (ir + 0.5) * dr;
    const Complex z = std::polar(rad, (it + 0.5) * dt);
    const double i_value = point_integral(sym, z);
    if (std::isinf(i_value) || i_value <= 1.0 / (sigma * sigma) * (1.0 + 1e-12)) continue;
    ring[static_cast<std::size_t>(idx)] = brown_density(sym, sigma, z).density * rad * dr * dt;
  }
  double total = 0.0;
  for (double x : ring) total += x;
  return total;
}

}  // namespace tpz
