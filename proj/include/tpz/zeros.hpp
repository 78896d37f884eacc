#pragma once

#include <functional>
#include <vector>

#include "tpz/fields.hpp"

namespace tpz {

struct ZeroOptions {
  int segments = 4;            // initial samples per cell edge
  double max_step = kPi / 4;   // largest accepted arg increment between samples
  double split_ratio = 0.4857;  // off-centre split avoids symmetric zero locations
};

// Zeros of an analytic f in the window, located to cells of diameter < tol.
PointSet find_zeros(const ScalarField& f, const Window& window, double tol, ZeroOptions options = {});

// Zeros in the disk |z - center| < radius using tiles kept inside |z - center| <= reach.
PointSet find_zeros_in_disk(const ScalarField& f, Complex center, double radius, double reach, double tol,
                            ZeroOptions options = {});

// Number of zeros inside the window by the argument principle.
int zero_count(const ScalarField& f, const Window& window, ZeroOptions options = {});

// Quadtree tiles covering the disk |z - c| < radius and contained in |z - c| <= reach.
std::vector<Window> disk_cover(Complex center, double radius, double reach);

}  // namespace tpz
