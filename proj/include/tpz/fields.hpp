#pragma once

#include <cstdint>
#include <functional>
#include <json.hpp>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "tpz/features.hpp"
#include "tpz/matgen.hpp"

namespace tpz {

struct GridSpec {
  Window window;
  int nx = 1;
  int ny = 1;
  // Row-major with the imaginary index outer.
  std::vector<Complex> points() const;
};

enum class Provenance { finite_n, limit_identity, gaussian, combined };
std::string to_string(Provenance p);

struct FieldSample {
  std::vector<Complex> points;
  std::vector<CMatrix> values;
  Provenance provenance = Provenance::combined;
  std::uint64_t seed = 0;
  double tail_bound = 0.0;  // truncation bound for lattice sums
};

struct PointSet {
  std::vector<Complex> points;
  std::vector<int> multiplicity;
  int total() const;
};

using MatrixField = std::function<CMatrix(Complex)>;
using ScalarField = std::function<Complex(Complex)>;

// Q R'(z) U X U^* R'(z) P for one stored draw of X; exact at any z off the circulant spectrum.
class LinearFieldFinite {
 public:
  LinearFieldFinite(const LaurentSymbol& sym, const NoiseModel& noise, int n, std::uint64_t seed);
  CMatrix operator()(Complex z) const;
  const CMatrix& conjugated_noise() const { return y_; }

 private:
  LaurentSymbol sym_;
  int n_;
  CMatrix y_;  // U X U^*, unit-variance entries
};

// D A E with A_pq = sum_{a,b} gamma(row_p - a) X_ab gamma(b - col_q) on |a|,|b| <= L.
class LinearFieldLimit {
 public:
  LinearFieldLimit(const LaurentSymbol& sym, Distribution dist, long long half_width, std::uint64_t seed);
  CMatrix operator()(Complex z) const;
  long long half_width() const { return L_; }
  // Bound on the neglected part of the lattice sum at z.
  double tail_bound(Complex z) const;

 private:
  LaurentSymbol sym_;
  long long L_;
  CMatrix x_;  // index (a + L, b + L)
};

// Smallest L keeping the lattice tail below tol at every point.
long long lattice_half_width(const LaurentSymbol& sym, std::span<const Complex> points, double tol = 1e-6);

FieldSample sample_w1_finite(const LaurentSymbol& sym, const NoiseModel& noise, int n, std::span<const Complex> points,
                             std::uint64_t seed);
FieldSample sample_w1_limit_identity(const LaurentSymbol& sym, Distribution dist, std::span<const Complex> points,
                                     long long half_width, std::uint64_t seed);
// sigma W2 on the points; rho and the pseudo pairing follow the noise model, n = 0 for the limit.
FieldLaw gaussian_law(const LaurentSymbol& sym, const NoiseModel& noise, double sigma, int n);
FieldSample sample_w2(const LaurentSymbol& sym, const NoiseModel& noise, double sigma, std::span<const Complex> points,
                      std::uint64_t seed, int n = 0);

struct PhiSource {
  enum class Kind { limit, finite } kind = Kind::limit;
  int n = 0;
};

struct PhiOptions {
  double base_radius = 0.0;  // > 0 overrides the base grid radius
  int rings = 12;
  int outer = 96;
  double refine_threshold = 1e-6;
  double lattice_tol = 1e-6;
};

// phi(z) = Tr(adj_|d|(I + H(z)) wedge^|d| W(z)) over a region R_{sigma, d}, d != 0.
class PhiSampler {
 public:
  // Base grid covers the disk |z - center| <= radius; every point must share one winding region.
  PhiSampler(LaurentSymbol sym, NoiseModel noise, Complex center, double radius, PhiSource source,
             PhiOptions options = {});

  class Realization {
   public:
    Complex operator()(Complex z);
    CMatrix field(Complex z);

   private:
    friend class PhiSampler;
    const PhiSampler* owner_ = nullptr;
    std::optional<LinearFieldFinite> finite_;
    std::optional<LinearFieldLimit> limit_;
    std::optional<GaussianField::Draw> gaussian_;
  };

  Realization draw(std::uint64_t seed) const;
  int delta() const { return delta_; }
  double sigma() const { return sigma_; }
  const GaussianField* gaussian() const { return gaussian_.get(); }
  long long lattice_half_width() const { return half_width_; }
  Complex weight(Complex z, const CMatrix& w) const;

 private:
  LaurentSymbol sym_;
  NoiseModel noise_;
  PhiSource source_;
  double sigma_;
  int delta_ = 0;
  long long half_width_ = 0;
  std::unique_ptr<GaussianField> gaussian_;
};

// Checks that all points lie outside the support in one winding region and returns it.
int common_region(const LaurentSymbol& sym, double sigma, std::span<const Complex> points);

// phi sampled on a point set (plus the realization for off-grid refinement).
FieldSample sample_phi(const PhiSampler& sampler, std::span<const Complex> points, std::uint64_t seed);

// Z_k = n^{-(k-1)/2} <v, X B_1 X ... B_{k-1} X u> with B_0 = u v^*.
Complex z_statistic(std::span<const CMatrix> B, const CMatrix& X, int k);
struct RankOne {
  CVector u;
  CVector v;
};
RankOne rank_one_factors(const CMatrix& b0);

struct SigmaPair {
  Complex sigma;
  Complex sigma_prime;
};
SigmaPair sigma_k(std::span<const CMatrix> B, std::span<const CMatrix> Bp, int k, int n, double rho);
// Scalar complex Gaussian with E|W|^2 = sigma and E W^2 = sigma'.
Complex gaussian_w_k(std::span<const CMatrix> B, int k, std::uint64_t seed, double rho, std::uint64_t index = 0);
Complex gaussian_from_moments(const SigmaPair& s, std::uint64_t seed, std::uint64_t index);

nlohmann::json field_to_json(const FieldSample& f);

}  // namespace tpz
