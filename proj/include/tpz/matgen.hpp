#pragma once

#include <cstdint>
#include <json.hpp>
#include <optional>
#include <utility>
#include <variant>

#include "tpz/symbol.hpp"

namespace tpz {

enum class Distribution { complex_gaussian, real_gaussian, rademacher, complex_rademacher };
enum class Basis { identity, fourier, explicit_unitary };

struct ConstantSigma {
  double value = 0.0;
};
struct PowerSigma {
  double c = 1.0;
  double gamma = 0.5;
};
using SigmaSchedule = std::variant<ConstantSigma, PowerSigma>;

class NoiseModel {
 public:
  NoiseModel() = default;
  NoiseModel(Distribution dist, Basis basis, SigmaSchedule sigma, std::optional<CMatrix> unitary = {});

  Distribution dist() const { return dist_; }
  Basis basis() const { return basis_; }
  const SigmaSchedule& schedule() const { return sigma_; }
  // E[X^2]; derived from the distribution.
  double rho() const;
  double sigma_at(int n) const;
  // Conjugation basis U_n.
  CMatrix basis_matrix(int n) const;

  nlohmann::json to_json() const;
  static NoiseModel from_json(const nlohmann::json& j);

 private:
  Distribution dist_ = Distribution::complex_gaussian;
  Basis basis_ = Basis::identity;
  SigmaSchedule sigma_ = ConstantSigma{0.0};
  std::optional<CMatrix> unitary_;
};

struct ModelInstance {
  LaurentSymbol sym;
  int n;
  NoiseModel noise;
  std::uint64_t seed;
};

struct PQFactors {
  CMatrix P;  // n x (r+s)
  CMatrix Q;  // (r+s) x n
};

CMatrix toeplitz_matrix(const LaurentSymbol& sym, int n);
CMatrix circulant_matrix(const LaurentSymbol& sym, int n);
// Upper triangular r x r block with a_{-r} on the diagonal.
CMatrix d_block(const LaurentSymbol& sym);
// Lower triangular s x s block with a_s on the diagonal.
CMatrix e_block(const LaurentSymbol& sym);
// diag(I_s, D_r) and diag(E_s, I_r).
CMatrix calligraphic_d(const LaurentSymbol& sym);
CMatrix calligraphic_e(const LaurentSymbol& sym);
PQFactors pq_factors(const LaurentSymbol& sym, int n);
CMatrix fourier_matrix(int n);

// Single entry X_{ij} of the iid array keyed by (seed, stream).
Complex noise_entry(Distribution dist, std::uint64_t seed, std::uint64_t stream, std::int64_t i,
                    std::int64_t j);
CMatrix sample_x(Distribution dist, int n, std::uint64_t seed);
// U X U^* / sqrt(n)
CMatrix sample_noise(const NoiseModel& noise, int n, std::uint64_t seed);
CMatrix conjugate_noise(const NoiseModel& noise, const CMatrix& x);

struct Assembled {
  CMatrix M;
  CMatrix S;
};
Assembled assemble(const ModelInstance& model);

std::string to_string(Distribution d);
std::string to_string(Basis b);

}  // namespace tpz
