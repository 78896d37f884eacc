#pragma once

#include <vector>

#include "tpz/matgen.hpp"
#include "tpz/multilinear.hpp"
#include "tpz/symbol.hpp"

namespace tpz {

// gamma(l) = (1/n) sum_k w^{lk} / (z - a(w^k)) over n-th roots of unity; n = 0 selects the
// limit (1/2pi) int e^{il theta} / (z - a(e^{i theta})) dtheta.
class ResolventCoefficients {
 public:
  ResolventCoefficients(const LaurentSymbol& sym, Complex z, int n = 0);
  Complex operator()(long long lag) const;
  std::vector<Complex> range(long long lo, long long hi) const;
  bool closed_form() const { return closed_form_; }
  // Geometric decay rate of |gamma(l)| in |l|.
  double kappa() const { return kappa_; }

 private:
  Complex direct(long long lag, int points) const;
  int limit_points(long long max_lag) const;

  LaurentSymbol sym_;
  Complex z_;
  int n_;
  bool closed_form_ = false;
  double kappa_ = 0.0;
  std::vector<Complex> roots_;
  std::vector<Complex> weights_;  // lambda^r / Q'(lambda)
};

// Row offsets of Q_n and column offsets of P_n (0-based, reduced to small integers).
int row_offset(const LaurentSymbol& sym, int p);
int col_offset(const LaurentSymbol& sym, int q);

CMatrix restricted_resolvent(const LaurentSymbol& sym, int n, Complex z);
// Same via the plain diagonal sum, without partial fractions.
CMatrix restricted_resolvent_spectral(const LaurentSymbol& sym, int n, Complex z);
double circulant_gap(const LaurentSymbol& sym, int n, Complex z);

struct LimitMatrices {
  Complex z;
  CMatrix H;
  int kernel_dim = 0;
  IndexedMatrix adj_delta;
};

inline constexpr double kSvdTol = 1e-7;

CMatrix h_quadrature(const LaurentSymbol& sym, Complex z, double tol = 1e-14);
LimitMatrices h_matrix(const LaurentSymbol& sym, Complex z, double tol = 1e-14);
// Residue path first, quadrature when roots repeat.
CMatrix h_matrix_fast(const LaurentSymbol& sym, Complex z);
CMatrix h_matrix_residue(const LaurentSymbol& sym, Complex z);
int kernel_dimension(const CMatrix& H);

struct ResidueVectors {
  std::vector<CVector> f;
  std::vector<CVector> f_tilde;
  std::vector<CVector> g;
  std::vector<Complex> q_prime;
  CMatrix T;  // Taylor block; empty when r = 0
  int inside = 0;
};
ResidueVectors residue_vectors(const LaurentSymbol& sym, Complex z);

enum class KernelKind { theta, A, B, theta_eps, A_eps, B_eps };

struct KernelSet {
  LaurentSymbol sym;
  double sigma = 0.0;
};

CMatrix kernel_eval(const KernelSet& ks, KernelKind which, Complex z, Complex zp, int eps = -1, double tol = 1e-14);
CMatrix finite_kernel_eval(const LaurentSymbol& sym, int n, KernelKind which, Complex z, Complex zp, int eps = -1);

struct SzegoConstants {
  Complex G;
  Complex E;
};
SzegoConstants szego_constants(const LaurentSymbol& sym, Complex z);

// det(C_n - z) in closed form.
Complex circulant_det(const LaurentSymbol& sym, Complex z, int n);
// Complex logarithm of det(A) from LU pivots.
Complex log_det(const CMatrix& a);
// det(z - T_n) / det(z - C_n) as det(I + Q R' P).
Complex det_ratio(const LaurentSymbol& sym, Complex z, int n);
// Same ratio from two LU factorizations.
Complex det_ratio_lu(const LaurentSymbol& sym, Complex z, int n);

struct RiemannSum {
  Complex sum;
  Complex target;
};
RiemannSum riemann_rational(const std::vector<Complex>& p, const std::vector<Complex>& q, int n);
double riemann_rate(const std::vector<Complex>& q, int n);

struct DecayProfile {
  std::vector<double> entries;  // index = circular lag
  double kappa_fit = 0.0;
  double r2 = 0.0;
};
DecayProfile resolvent_decay(const LaurentSymbol& sym, Complex z, int n);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace tpz
