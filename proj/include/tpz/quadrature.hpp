#pragma once

#include <cmath>
#include <functional>

#include "tpz/types.hpp"

namespace tpz {

struct QuadratureResult {
  double value = 0.0;
  int samples = 0;
  bool converged = false;
};

// Mean of a smooth 2pi-periodic function by the trapezoid rule, doubling from n0 points
// until successive values differ by less than tol * max(1, |value|).
template <class F>
QuadratureResult periodic_mean(F&& f, double tol, int n0 = 64, int n_max = 1 << 22) {
  double sum = 0.0;
  for (int k = 0; k < n0; ++k) sum += f(2.0 * kPi * k / n0);
  int n = n0;
  double prev = sum / n;
  while (n < n_max) {
    double odd = 0.0;
    for (int k = 0; k < n; ++k) odd += f(2.0 * kPi * (2 * k + 1) / (2.0 * n));
    sum += odd;
    n *= 2;
    const double cur = sum / n;
    if (std::abs(cur - prev) < tol * std::max(1.0, std::abs(cur))) return {cur, n, true};
    prev = cur;
  }
  return {prev, n, false};
}

}  // namespace tpz
