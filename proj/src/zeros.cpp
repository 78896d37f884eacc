#include "tpz/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>

namespace tpz {

namespace {

constexpr int kBits = 30;
constexpr std::int64_t kSpan = std::int64_t{1} << kBits;

struct Cell {
  std::int64_t x0, y0, x1, y1;
};

// Argument-principle engine on an integer lattice over one window; samples are cached.
class ArgumentCounter {
 public:
  ArgumentCounter(const ScalarField& f, const Window& w, ZeroOptions opt) : f_(f), w_(w), opt_(opt) {}

  Complex point(std::int64_t ix, std::int64_t iy) const {
    return {w_.re0 + w_.width() * static_cast<double>(ix) / static_cast<double>(kSpan),
            w_.im0 + w_.height() * static_cast<double>(iy) / static_cast<double>(kSpan)};
  }

  Complex value(std::int64_t ix, std::int64_t iy) {
    const auto key = (static_cast<std::uint64_t>(ix) << 32) | static_cast<std::uint64_t>(iy);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const Complex v = f_(point(ix, iy));
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw PrecisionError("field returned a non-finite value");
    if (v == Complex{}) throw BoundaryZeroError("zero on a cell boundary");
    cache_.emplace(key, v);
    return v;
  }

  // Arg increment along an axis-aligned lattice segment.
  double segment(std::int64_t ax, std::int64_t ay, std::int64_t bx, std::int64_t by) {
    const Complex fa = value(ax, ay), fb = value(bx, by);
    const double d = std::arg(fb / fa);
    const std::int64_t len = std::max(std::llabs(bx - ax), std::llabs(by - ay));
    if (std::abs(d) <= opt_.max_step) return d;
    if (len < 2) throw BoundaryZeroError("zero within lattice resolution of a cell boundary");
    const std::int64_t mx = ax + (bx - ax) / 2, my = ay + (by - ay) / 2;
    return segment(ax, ay, mx, my) + segment(mx, my, bx, by);
  }

  double edge(std::int64_t ax, std::int64_t ay, std::int64_t bx, std::int64_t by, int pieces) {
    const std::int64_t len = std::max(std::llabs(bx - ax), std::llabs(by - ay));
    pieces = static_cast<int>(std::min<std::int64_t>(pieces, len));
    double total = 0.0;
    std::int64_t px = ax, py = ay;
    for (int k = 1; k <= pieces; ++k) {
      const std::int64_t qx = ax + (bx - ax) * k / pieces, qy = ay + (by - ay) * k / pieces;
      total += segment(px, py, qx, qy);
      px = qx;
      py = qy;
    }
    return total;
  }

  int count(const Cell& c, int pieces) {
    const double total = edge(c.x0, c.y0, c.x1, c.y0, pieces) + edge(c.x1, c.y0, c.x1, c.y1, pieces) +
                         edge(c.x1, c.y1, c.x0, c.y1, pieces) + edge(c.x0, c.y1, c.x0, c.y0, pieces);
    const double w = total / (2.0 * kPi);
    const auto k = static_cast<int>(std::lround(w));
    if (std::abs(w - k) > 0.1) throw PrecisionError("winding sum is not an integer");
    return k;
  }

  // Count trusted only when a 2x finer boundary agrees.
  int stable_count(const Cell& c) {
    const int coarse = count(c, opt_.segments);
    const int fine = count(c, 2 * opt_.segments);
    if (coarse != fine) throw PrecisionError("zero count changed under boundary refinement");
    if (fine < 0) throw PrecisionError("negative zero count; field has poles in the cell");
    return fine;
  }

  double diameter(const Cell& c) const {
    return std::hypot(w_.width() * static_cast<double>(c.x1 - c.x0) / static_cast<double>(kSpan),
                      w_.height() * static_cast<double>(c.y1 - c.y0) / static_cast<double>(kSpan));
  }

  void isolate(const Cell& c, int total, double tol, PointSet& out) {
    if (total == 0) return;
    if (diameter(c) < tol || (c.x1 - c.x0 < 4 && c.y1 - c.y0 < 4)) {
      out.points.push_back(point((c.x0 + c.x1) / 2, (c.y0 + c.y1) / 2));
      out.multiplicity.push_back(total);
      return;
    }
    for (double ratio : {opt_.split_ratio, 1.0 - 0.8 * opt_.split_ratio, 0.5 * opt_.split_ratio + 0.25}) {
      const std::int64_t mx = c.x0 + static_cast<std::int64_t>(static_cast<double>(c.x1 - c.x0) * ratio);
      const std::int64_t my = c.y0 + static_cast<std::int64_t>(static_cast<double>(c.y1 - c.y0) * (1.0 - ratio));
      const Cell kids[4] = {{c.x0, c.y0, mx, my}, {mx, c.y0, c.x1, my}, {c.x0, my, mx, c.y1}, {mx, my, c.x1, c.y1}};
      int counts[4];
      try {
        int sum = 0;
        for (int k = 0; k < 4; ++k) sum += counts[k] = stable_count(kids[k]);
        if (sum != total) continue;
      } catch (const BoundaryZeroError&) {
        continue;
      } catch (const PrecisionError&) {
        continue;
      }
      for (int k = 0; k < 4; ++k) isolate(kids[k], counts[k], tol, out);
      return;
    }
    throw PrecisionError("child counts do not add up to the parent count");
  }

 private:
  const ScalarField& f_;
  Window w_;
  ZeroOptions opt_;
  std::unordered_map<std::uint64_t, Complex> cache_;
};

}  // namespace

int zero_count(const ScalarField& f, const Window& window, ZeroOptions options) {
  ArgumentCounter counter(f, window, options);
  return counter.stable_count({0, 0, kSpan, kSpan});
}

PointSet find_zeros(const ScalarField& f, const Window& window, double tol, ZeroOptions options) {
  if (!(window.width() > 0.0 && window.height() > 0.0)) throw DomainError("window must have positive area");
  ArgumentCounter counter(f, window, options);
  const Cell whole{0, 0, kSpan, kSpan};
  PointSet out;
  counter.isolate(whole, counter.stable_count(whole), tol, out);
  return out;
}

std::vector<Window> disk_cover(Complex center, double radius, double reach) {
  if (!(reach > radius && radius > 0.0)) throw DomainError("cover needs 0 < radius < reach");
  std::vector<Window> tiles;
  std::vector<Window> stack{{center.real() - 1.03 * radius, center.real() + 1.01 * radius,
                             center.imag() - 1.03 * radius, center.imag() + 1.01 * radius}};
  const double min_size = (reach - radius) / 4.0;
  while (!stack.empty()) {
    const Window w = stack.back();
    stack.pop_back();
    const double nx = std::clamp(center.real(), w.re0, w.re1), ny = std::clamp(center.imag(), w.im0, w.im1);
    if (std::abs(Complex{nx, ny} - center) >= radius) continue;
    double far = 0.0;
    for (double x : {w.re0, w.re1})
      for (double y : {w.im0, w.im1}) far = std::max(far, std::abs(Complex{x, y} - center));
    if (far <= reach) {
      tiles.push_back(w);
      continue;
    }
    if (w.width() < min_size) throw DomainError("disk cover did not resolve the rim");
    const double mx = 0.5 * (w.re0 + w.re1), my = 0.5 * (w.im0 + w.im1);
    stack.push_back({w.re0, mx, w.im0, my});
    stack.push_back({mx, w.re1, w.im0, my});
    stack.push_back({w.re0, mx, my, w.im1});
    stack.push_back({mx, w.re1, my, w.im1});
  }
  return tiles;
}

PointSet find_zeros_in_disk(const ScalarField& f, Complex center, double radius, double reach, double tol,
                            ZeroOptions options) {
  // One lattice over the bounding box so neighbouring tiles share cached edge samples.
  const Window box{center.real() - 1.03 * radius, center.real() + 1.01 * radius, center.imag() - 1.03 * radius,
                   center.imag() + 1.01 * radius};
  ArgumentCounter counter(f, box, options);
  auto to_lattice = [&](double v, double lo, double width) {
    return static_cast<std::int64_t>(std::llround((v - lo) / width * static_cast<double>(kSpan)));
  };
  PointSet found;
  for (const auto& t : disk_cover(center, radius, reach)) {
    const Cell c{to_lattice(t.re0, box.re0, box.width()), to_lattice(t.im0, box.im0, box.height()),
                 to_lattice(t.re1, box.re0, box.width()), to_lattice(t.im1, box.im0, box.height())};
    counter.isolate(c, counter.stable_count(c), tol, found);
  }
  PointSet out;
  for (std::size_t i = 0; i < found.points.size(); ++i) {
    if (std::abs(found.points[i] - center) < radius) {
      out.points.push_back(found.points[i]);
      out.multiplicity.push_back(found.multiplicity[i]);
    }
  }
  return out;
}

}  // namespace tpz
