#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace tpz {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : Error { using Error::Error; };
struct SizeError : Error { using Error::Error; };
struct SingularError : Error { using Error::Error; };
struct OnCriticalCurve : Error { using Error::Error; };
struct MultipleRootError : Error { using Error::Error; };
struct KernelError : Error { using Error::Error; };
struct RegionError : Error { using Error::Error; };
struct BoundaryZeroError : Error { using Error::Error; };
struct PrecisionError : Error { using Error::Error; };

// e^{2 pi i k / n} with k reduced mod n first.
inline Complex unit_root(long long k, long long n) {
  long long m = k % n;
  if (m < 0) m += n;
  const double t = 2.0 * kPi * static_cast<double>(m) / static_cast<double>(n);
  return {std::cos(t), std::sin(t)};
}

}  // namespace tpz

namespace tpz {

// Axis-aligned rectangle [re0, re1] x [im0, im1].
struct Window {
  double re0 = -1.0;
  double re1 = 1.0;
  double im0 = -1.0;
  double im1 = 1.0;
  double width() const { return re1 - re0; }
  double height() const { return im1 - im0; }
  Complex center() const { return {0.5 * (re0 + re1), 0.5 * (im0 + im1)}; }
  bool contains(Complex z) const {
    return z.real() >= re0 && z.real() <= re1 && z.imag() >= im0 && z.imag() <= im1;
  }
};

}  // namespace tpz
