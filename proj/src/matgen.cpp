#include "tpz/matgen.hpp"

#include <cmath>

#include "tpz/rng.hpp"

namespace tpz {

namespace {

void check_size(const LaurentSymbol& sym, int n) {
  if (n <= sym.band()) throw SizeError("matrix size must exceed r+s");
}

}  // namespace

NoiseModel::NoiseModel(Distribution dist, Basis basis, SigmaSchedule sigma, std::optional<CMatrix> unitary)
    : dist_(dist), basis_(basis), sigma_(sigma), unitary_(std::move(unitary)) {
  if (const auto* c = std::get_if<ConstantSigma>(&sigma_); c && c->value < 0.0)
    throw DomainError("sigma must be nonnegative");
  if (const auto* p = std::get_if<PowerSigma>(&sigma_); p && (p->c <= 0.0 || p->gamma <= 0.0))
    throw DomainError("power-law sigma needs c > 0 and gamma > 0");
  if (basis_ == Basis::explicit_unitary) {
    if (!unitary_) throw DomainError("explicit-unitary basis requires a matrix");
    const auto& u = *unitary_;
    if (u.rows() != u.cols() ||
        (u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols())).norm() > 1e-10)
      throw DomainError("explicit basis matrix is not unitary");
  }
}

double NoiseModel::rho() const {
  switch (dist_) {
    case Distribution::real_gaussian:
    case Distribution::rademacher:
      return 1.0;
    default:
      return 0.0;
  }
}

double NoiseModel::sigma_at(int n) const {
  if (const auto* c = std::get_if<ConstantSigma>(&sigma_)) return c->value;
  const auto& p = std::get<PowerSigma>(sigma_);
  return p.c * std::pow(static_cast<double>(n), -p.gamma);
}

CMatrix NoiseModel::basis_matrix(int n) const {
  switch (basis_) {
    case Basis::identity:
      return CMatrix::Identity(n, n);
    case Basis::fourier:
      return fourier_matrix(n);
    case Basis::explicit_unitary:
      if (unitary_->rows() != n) throw SizeError("explicit basis has the wrong dimension");
      return *unitary_;
  }
  return CMatrix::Identity(n, n);
}

std::string to_string(Distribution d) {
  switch (d) {
    case Distribution::complex_gaussian: return "complex-gaussian";
    case Distribution::real_gaussian: return "real-gaussian";
    case Distribution::rademacher: return "symmetric-rademacher";
    case Distribution::complex_rademacher: return "symmetric-complex-rademacher";
  }
  return "?";
}

std::string to_string(Basis b) {
  switch (b) {
    case Basis::identity: return "identity";
    case Basis::fourier: return "fourier";
    case Basis::explicit_unitary: return "explicit-unitary";
  }
  return "?";
}

nlohmann::json NoiseModel::to_json() const {
  nlohmann::json j{{"dist", to_string(dist_)}, {"basis", to_string(basis_)}};
  if (const auto* c = std::get_if<ConstantSigma>(&sigma_)) {
    j["sigma"] = {{"kind", "const"}, {"value", c->value}};
  } else {
    const auto& p = std::get<PowerSigma>(sigma_);
    j["sigma"] = {{"kind", "power"}, {"c", p.c}, {"gamma", p.gamma}};
  }
  if (unitary_) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < unitary_->rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index k = 0; k < unitary_->cols(); ++k) row.push_back({(*unitary_)(i, k).real(), (*unitary_)(i, k).imag()});
      rows.push_back(row);
    }
    j["unitary"] = rows;
  }
  return j;
}

NoiseModel NoiseModel::from_json(const nlohmann::json& j) {
  const auto ds = j.value("dist", std::string("complex-gaussian"));
  Distribution d;
  if (ds == "complex-gaussian") d = Distribution::complex_gaussian;
  else if (ds == "real-gaussian") d = Distribution::real_gaussian;
  else if (ds == "symmetric-rademacher" || ds == "rademacher") d = Distribution::rademacher;
  else if (ds == "symmetric-complex-rademacher" || ds == "complex-rademacher") d = Distribution::complex_rademacher;
  else throw DomainError("unknown noise distribution: " + ds);

  const auto bs = j.value("basis", std::string("identity"));
  Basis b;
  std::optional<CMatrix> u;
  if (bs == "identity") b = Basis::identity;
  else if (bs == "fourier") b = Basis::fourier;
  else if (bs == "explicit-unitary") {
    b = Basis::explicit_unitary;
    const auto& rows = j.at("unitary");
    const auto n = static_cast<Eigen::Index>(rows.size());
    CMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index k = 0; k < n; ++k) {
        const auto& e = rows.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(k));
        m(i, k) = {e.at(0).get<double>(), e.at(1).get<double>()};
      }
    u = std::move(m);
  } else throw DomainError("unknown basis: " + bs);

  SigmaSchedule sched = ConstantSigma{0.0};
  if (j.contains("sigma")) {
    const auto& sj = j.at("sigma");
    if (sj.is_number()) {
      sched = ConstantSigma{sj.get<double>()};
    } else if (sj.value("kind", std::string("const")) == "const") {
      sched = ConstantSigma{sj.at("value").get<double>()};
    } else if (sj.at("kind") == "power") {
      sched = PowerSigma{sj.at("c").get<double>(), sj.at("gamma").get<double>()};
    } else {
      throw DomainError("unknown sigma schedule");
    }
  }
  return {d, b, sched, std::move(u)};
}

CMatrix toeplitz_matrix(const LaurentSymbol& sym, int n) {
  check_size(sym, n);
  CMatrix t = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = -sym.r(); k <= sym.s(); ++k)
      if (const int j = i + k; j >= 0 && j < n) t(i, j) = sym.coeff(k);
  return t;
}

CMatrix circulant_matrix(const LaurentSymbol& sym, int n) {
  check_size(sym, n);
  CMatrix c = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = -sym.r(); k <= sym.s(); ++k) c(i, ((i + k) % n + n) % n) = sym.coeff(k);
  return c;
}

CMatrix d_block(const LaurentSymbol& sym) {
  const int r = sym.r();
  CMatrix d = CMatrix::Zero(r, r);
  for (int p = 0; p < r; ++p)
    for (int q = p; q < r; ++q) d(p, q) = sym.coeff(-r + q - p);
  return d;
}

CMatrix e_block(const LaurentSymbol& sym) {
  const int s = sym.s();
  CMatrix e = CMatrix::Zero(s, s);
  for (int p = 0; p < s; ++p)
    for (int q = 0; q <= p; ++q) e(p, q) = sym.coeff(s - p + q);
  return e;
}

CMatrix calligraphic_d(const LaurentSymbol& sym) {
  const int r = sym.r(), s = sym.s();
  CMatrix d = CMatrix::Identity(r + s, r + s);
  if (r > 0) d.bottomRightCorner(r, r) = d_block(sym);
  return d;
}

CMatrix calligraphic_e(const LaurentSymbol& sym) {
  const int r = sym.r(), s = sym.s();
  CMatrix e = CMatrix::Identity(r + s, r + s);
  e.topLeftCorner(s, s) = e_block(sym);
  return e;
}

PQFactors pq_factors(const LaurentSymbol& sym, int n) {
  check_size(sym, n);
  const int r = sym.r(), s = sym.s(), m = r + s;
  PQFactors f{CMatrix::Zero(n, m), CMatrix::Zero(m, n)};
  if (r > 0) {
    f.P.block(0, s, r, r).setIdentity();
    f.Q.block(s, n - r, r, r) = d_block(sym);
  }
  f.P.block(n - s, 0, s, s) = e_block(sym);
  f.Q.block(0, 0, s, s).setIdentity();
  return f;
}

CMatrix fourier_matrix(int n) {
  if (n < 1) throw DomainError("fourier_matrix needs n >= 1");
  CMatrix f(n, n);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) f(i, j) = norm * unit_root(static_cast<long long>(i) * j, n);
  return f;
}

Complex noise_entry(Distribution dist, std::uint64_t seed, std::uint64_t stream, std::int64_t i, std::int64_t j) {
  const auto ui = static_cast<std::uint64_t>(i);
  const auto uj = static_cast<std::uint64_t>(j);
  switch (dist) {
    case Distribution::complex_gaussian:
      return Complex{rng::gaussian(seed, stream, ui, uj, 0), rng::gaussian(seed, stream, ui, uj, 1)} /
             std::sqrt(2.0);
    case Distribution::real_gaussian:
      return rng::gaussian(seed, stream, ui, uj, 0);
    case Distribution::rademacher:
      return (rng::key(seed, stream, ui, uj, 7) >> 63) ? 1.0 : -1.0;
    case Distribution::complex_rademacher: {
      static constexpr Complex kUnits[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
      return kUnits[rng::key(seed, stream, ui, uj, 7) >> 62];
    }
  }
  return {};
}

CMatrix sample_x(Distribution dist, int n, std::uint64_t seed) {
  CMatrix x(n, n);
  const auto stream = tag(Stream::noise);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) x(i, j) = noise_entry(dist, seed, stream, i, j);
  return x;
}

CMatrix conjugate_noise(const NoiseModel& noise, const CMatrix& x) {
  const auto n = static_cast<int>(x.rows());
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  if (noise.basis() == Basis::identity) return scale * x;
  const CMatrix u = noise.basis_matrix(n);
  return scale * (u * x * u.adjoint());
}

CMatrix sample_noise(const NoiseModel& noise, int n, std::uint64_t seed) {
  return conjugate_noise(noise, sample_x(noise.dist(), n, seed));
}

Assembled assemble(const ModelInstance& model) {
  const CMatrix y = sample_noise(model.noise, model.n, model.seed);
  const double sigma = model.noise.sigma_at(model.n);
  Assembled a{toeplitz_matrix(model.sym, model.n), circulant_matrix(model.sym, model.n)};
  if (sigma != 0.0) {
    a.M += sigma * y;
    a.S += sigma * y;
  }
  return a;
}

}  // namespace tpz
