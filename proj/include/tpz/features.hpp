#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tpz/limits.hpp"

namespace tpz {

// Fourier coefficients gamma(l) of 1/(z - a) on a lag window [lo, lo + size).
// period > 0 holds the n-periodic finite coefficients over one full period.
struct LagFeatures {
  Complex z;
  long long lo = 0;
  int period = 0;
  std::vector<Complex> values;

  Complex at(long long lag) const;
};

// Lag window half-width with sum of |gamma| beyond it below tol.
long long limit_half_width(const LaurentSymbol& sym, Complex z, double tol = 1e-16);
// Tail bound sum_{|l| > L} |gamma(l)| from the partial-fraction weights.
double gamma_tail_bound(const LaurentSymbol& sym, Complex z, long long half_width);
LagFeatures lag_features(const LaurentSymbol& sym, Complex z, int n = 0, double tol = 1e-16);

// conjugate: f conj(g); reflect: f(w) g(1/w); direct: f(w) g(w).
enum class Pairing { conjugate, reflect, direct };

// mean over the circle of w^d f(w) g'(w) in the chosen pairing.
Complex lag_pairing(const LagFeatures& f, const LagFeatures& g, long long d, Pairing mode);

struct KernelBlocks {
  Complex theta;
  CMatrix A;
  CMatrix B;
};
KernelBlocks kernel_blocks(const LaurentSymbol& sym, const LagFeatures& f, const LagFeatures& g, Pairing mode);

// Covariance law of a matrix field W on points, entries ordered (p, q) column-major.
// E[W_pq(z) conj W_p'q'(z')] = K and E[W_pq(z) W_p'q'(z')] = J.
struct FieldLaw {
  enum class Part { linear, gaussian, total };
  LaurentSymbol sym;
  double sigma = 0.0;
  double rho = 0.0;
  int n = 0;  // 0 selects the limit kernels
  Pairing pseudo = Pairing::reflect;
  Part part = Part::gaussian;

  // Complex blocks of size m^2 x m^2.
  void blocks(const LagFeatures& f, const LagFeatures& g, CMatrix& K, CMatrix& J) const;
  // Real 2m^2 x 2m^2 covariance of (Re W, Im W) stacked.
  RMatrix real_block(const LagFeatures& f, const LagFeatures& g) const;
  LagFeatures features(Complex z) const;
};

RMatrix real_covariance(const CMatrix& K, const CMatrix& J);

// Turns lag pairings Theta(d) into covariance blocks without per-call allocation.
class BlockAssembler {
 public:
  explicit BlockAssembler(const FieldLaw& law);
  // Distinct lags needed by the conjugate and pseudo pairings.
  const std::vector<long long>& conj_lags() const { return conj_lags_; }
  const std::vector<long long>& pseudo_lags() const { return pseudo_lags_; }
  bool has_pseudo() const { return law_.rho != 0.0; }
  int entries() const { return mm_; }
  void complex_blocks(const Complex* conj_vals, const Complex* pseudo_vals, CMatrix& K, CMatrix& J) const;
  // Real block written column-major at out with leading dimension ld.
  void real_block(const Complex* conj_vals, const Complex* pseudo_vals, double* out, Eigen::Index ld) const;

 private:
  struct Table {
    int zero = 0;
    std::vector<int> a;  // m x m lag indices, column-major
    std::vector<int> b;
  };
  Table table(Pairing mode, std::vector<long long>& lags) const;
  void side(const Table& t, const Complex* vals, bool conjugate, Complex* A, Complex* B, Complex& theta) const;

  FieldLaw law_;
  int m_;
  int mm_;
  std::vector<long long> conj_lags_;
  std::vector<long long> pseudo_lags_;
  Table conj_table_;
  Table pseudo_table_;
  CMatrix d_;
  CMatrix e_;
};

// Gaussian field on a base point set; draws are conditioned on for off-grid values.
class GaussianField {
 public:
  GaussianField(FieldLaw law, std::vector<Complex> base, double refine_threshold = 1e-6);

  class Draw {
   public:
    const std::vector<CMatrix>& base_values() const { return values_; }
    // Conditional mean, or a conditioned draw added to the set when the variance is not negligible.
    CMatrix operator()(Complex z);
    int added_points() const { return added_; }

   private:
    friend class GaussianField;
    const GaussianField* field_ = nullptr;
    std::vector<CMatrix> values_;
    std::vector<Complex> points_;
    std::vector<LagFeatures> features_;
    RMatrix chol_;
    RVector stacked_;
    RVector alpha_;
    std::uint64_t seed_ = 0;
    std::uint64_t counter_ = 0;
    int added_ = 0;
  };

  Draw draw(std::uint64_t seed) const;
  const std::vector<Complex>& base() const { return base_; }
  const FieldLaw& law() const { return law_; }
  double jitter() const { return jitter_; }
  int dim() const { return dim_; }
  // Largest conditional variance relative to prior variance over probe points.
  double max_conditional_variance(const std::vector<Complex>& probes) const;

 private:
  RMatrix cross(const std::vector<LagFeatures>& feats, const LagFeatures& f) const;
  // Base-point block column through the lag matrix; f must use the shared lag window.
  RMatrix cross_base(const LagFeatures& f) const;
  LagFeatures window_features(Complex z) const;

  FieldLaw law_;
  std::vector<Complex> base_;
  std::vector<LagFeatures> features_;
  BlockAssembler assembler_;
  CMatrix lag_matrix_;  // base features on the shared window, padded by pad_ on both sides
  long long window_lo_ = 0;
  long long window_size_ = 0;
  long long pad_ = 0;
  double threshold_;
  int dim_;
  double jitter_ = 0.0;
  RMatrix chol_;
};

// Rings of points in the disk |z - center| <= radius, outermost ring with `outer` points.
std::vector<Complex> polar_grid(Complex center, double radius, int rings, int outer);

}  // namespace tpz
