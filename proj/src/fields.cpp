#include "tpz/fields.hpp"

#include <algorithm>
#include <cmath>

#include "tpz/multilinear.hpp"
#include "tpz/regions.hpp"
#include "tpz/rng.hpp"

namespace tpz {

std::vector<Complex> GridSpec::points() const {
  if (nx < 1 || ny < 1) throw DomainError("grid needs positive dimensions");
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) out.push_back(lattice_point(window, nx, ny, i, j));
  return out;
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::finite_n: return "finite-n";
    case Provenance::limit_identity: return "limit-identity";
    case Provenance::gaussian: return "gaussian";
    case Provenance::combined: return "combined";
  }
  return "combined";
}

int PointSet::total() const {
  int t = 0;
  for (int m : multiplicity) t += m;
  return t;
}

namespace {

struct Entry {
  int row;
  int col;
  Complex value;
};

std::vector<Entry> nonzeros(const CMatrix& a) {
  std::vector<Entry> out;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (a(i, j) != Complex{}) out.push_back({static_cast<int>(i), static_cast<int>(j), a(i, j)});
  return out;
}

long long wrap(long long a, long long n) {
  const long long m = a % n;
  return m < 0 ? m + n : m;
}

double sigma_limit(const NoiseModel& noise) {
  if (const auto* c = std::get_if<ConstantSigma>(&noise.schedule())) return c->value;
  const auto& p = std::get<PowerSigma>(noise.schedule());
  return p.gamma > 0.0 ? 0.0 : p.c;
}

double lattice_tail(const LaurentSymbol& sym, Complex z, long long L) {
  const int m = sym.band();
  const double total = gamma_tail_bound(sym, z, 0) + 1.0;
  const double tail = gamma_tail_bound(sym, z, std::max<long long>(0, L - m));
  const double dn = calligraphic_d(sym).norm(), en = calligraphic_e(sym).norm();
  return std::sqrt(2.0) * tail * total * dn * en;
}

}  // namespace

LinearFieldFinite::LinearFieldFinite(const LaurentSymbol& sym, const NoiseModel& noise, int n, std::uint64_t seed)
    : sym_(sym), n_(n) {
  if (n <= sym.band()) throw SizeError("matrix size must exceed r+s");
  const CMatrix x = sample_x(noise.dist(), n, seed);
  if (noise.basis() == Basis::identity) {
    y_ = x;
  } else {
    const CMatrix u = noise.basis_matrix(n);
    y_ = u * x * u.adjoint();
  }
}

CMatrix LinearFieldFinite::operator()(Complex z) const {
  if (circulant_gap(sym_, n_, z) <= 1e-10) throw SingularError("z is a circulant eigenvalue");
  const auto gamma = ResolventCoefficients(sym_, z, n_).range(0, n_ - 1);
  auto g = [&](long long lag) { return gamma[static_cast<std::size_t>(wrap(lag, n_))]; };
  const auto pq = pq_factors(sym_, n_);
  const int m = sym_.band();
  CMatrix left = CMatrix::Zero(m, n_), right = CMatrix::Zero(n_, m);
  // (Q R')_{p a} = sum_i Q_{p i} gamma(i - a); (R' P)_{b q} = sum_j gamma(b - j) P_{j q}.
  for (const auto& e : nonzeros(pq.Q))
    for (int a = 0; a < n_; ++a) left(e.row, a) += e.value * g(e.col - a);
  for (const auto& e : nonzeros(pq.P))
    for (int b = 0; b < n_; ++b) right(b, e.col) += g(b - e.row) * e.value;
  return left * (y_ * right);
}

LinearFieldLimit::LinearFieldLimit(const LaurentSymbol& sym, Distribution dist, long long half_width,
                                   std::uint64_t seed)
    : sym_(sym), L_(half_width) {
  if (half_width < 1) throw DomainError("lattice half-width must be positive");
  const auto size = static_cast<Eigen::Index>(2 * L_ + 1);
  x_.resize(size, size);
  const auto stream = tag(Stream::lattice);
  for (Eigen::Index j = 0; j < size; ++j)
    for (Eigen::Index i = 0; i < size; ++i) x_(i, j) = noise_entry(dist, seed, stream, i - L_, j - L_);
}

CMatrix LinearFieldLimit::operator()(Complex z) const {
  const int m = sym_.band(), r = sym_.r(), s = sym_.s();
  const long long lo = -L_ - r, hi = L_ + s;
  const auto gamma = ResolventCoefficients(sym_, z, 0).range(lo, hi);
  auto g = [&](long long lag) { return gamma[static_cast<std::size_t>(lag - lo)]; };
  const auto size = x_.rows();
  CMatrix left(m, size), right(size, m);
  for (int i = 0; i < m; ++i) {
    for (Eigen::Index k = 0; k < size; ++k) {
      const long long lattice = k - L_;
      left(i, k) = g(row_offset(sym_, i) - lattice);
      right(k, i) = g(lattice - col_offset(sym_, i));
    }
  }
  return calligraphic_d(sym_) * (left * (x_ * right)) * calligraphic_e(sym_);
}

double LinearFieldLimit::tail_bound(Complex z) const { return lattice_tail(sym_, z, L_); }

long long lattice_half_width(const LaurentSymbol& sym, std::span<const Complex> points, double tol) {
  long long best = sym.band() + 1;
  for (const auto& z : points) {
    long long L = best;
    while (lattice_tail(sym, z, L) > tol && L < (1LL << 16)) L += std::max(1LL, L / 8);
    best = std::max(best, L);
  }
  return best;
}

FieldSample sample_w1_finite(const LaurentSymbol& sym, const NoiseModel& noise, int n, std::span<const Complex> points,
                             std::uint64_t seed) {
  const LinearFieldFinite field(sym, noise, n, seed);
  FieldSample out;
  out.provenance = Provenance::finite_n;
  out.seed = seed;
  out.points.assign(points.begin(), points.end());
  out.values.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) out.values[i] = field(points[i]);
  return out;
}

FieldSample sample_w1_limit_identity(const LaurentSymbol& sym, Distribution dist, std::span<const Complex> points,
                                     long long half_width, std::uint64_t seed) {
  const long long L = half_width > 0 ? half_width : lattice_half_width(sym, points);
  const LinearFieldLimit field(sym, dist, L, seed);
  FieldSample out;
  out.provenance = Provenance::limit_identity;
  out.seed = seed;
  out.points.assign(points.begin(), points.end());
  out.values.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    out.values[i] = field(points[i]);
    out.tail_bound = std::max(out.tail_bound, field.tail_bound(points[i]));
  }
  return out;
}

FieldLaw gaussian_law(const LaurentSymbol& sym, const NoiseModel& noise, double sigma, int n) {
  if (noise.basis() == Basis::explicit_unitary && noise.rho() != 0.0)
    throw DomainError("pseudo-covariance needs the identity or Fourier basis");
  FieldLaw law{sym, sigma, noise.rho(), n, noise.basis() == Basis::fourier ? Pairing::direct : Pairing::reflect,
               FieldLaw::Part::gaussian};
  return law;
}

FieldSample sample_w2(const LaurentSymbol& sym, const NoiseModel& noise, double sigma, std::span<const Complex> points,
                      std::uint64_t seed, int n) {
  const GaussianField field(gaussian_law(sym, noise, sigma, n), {points.begin(), points.end()}, 0.0);
  auto draw = field.draw(seed);
  FieldSample out;
  out.provenance = Provenance::gaussian;
  out.seed = seed;
  out.points.assign(points.begin(), points.end());
  out.values = draw.base_values();
  return out;
}

int common_region(const LaurentSymbol& sym, double sigma, std::span<const Complex> points) {
  std::vector<RegionQuery> q(points.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::size_t i = 0; i < points.size(); ++i) q[i] = classify(sym, sigma, points[i]);
  int delta = 0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i].kind == RegionKind::support) throw RegionError("point lies in the support");
    if (i == 0) delta = q[i].delta;
    else if (q[i].delta != delta) throw RegionError("points straddle winding regions");
  }
  if (delta == 0) throw RegionError("phi needs a region with nonzero winding");
  return delta;
}

PhiSampler::PhiSampler(LaurentSymbol sym, NoiseModel noise, Complex center, double radius, PhiSource source,
                       PhiOptions options)
    : sym_(std::move(sym)), noise_(std::move(noise)), source_(source) {
  const bool finite = source_.kind == PhiSource::Kind::finite;
  if (finite && source_.n <= sym_.band()) throw SizeError("matrix size must exceed r+s");
  sigma_ = finite ? noise_.sigma_at(source_.n) : sigma_limit(noise_);
  const auto base =
      polar_grid(center, options.base_radius > 0.0 ? options.base_radius : radius, options.rings, options.outer);
  delta_ = common_region(sym_, sigma_, base);
  const int n = finite ? source_.n : 0;
  if (!finite && noise_.basis() == Basis::explicit_unitary)
    throw DomainError("limit field is only identified for the identity and Fourier bases");
  if (!finite && noise_.basis() == Basis::fourier) {
    // Flat basis: the whole limit field is Gaussian.
    FieldLaw law = gaussian_law(sym_, noise_, sigma_, 0);
    law.part = FieldLaw::Part::total;
    gaussian_ = std::make_unique<GaussianField>(law, base, options.refine_threshold);
    return;
  }
  if (!finite) half_width_ = tpz::lattice_half_width(sym_, base, options.lattice_tol);
  if (sigma_ > 0.0)
    gaussian_ = std::make_unique<GaussianField>(gaussian_law(sym_, noise_, sigma_, n), base, options.refine_threshold);
}

PhiSampler::Realization PhiSampler::draw(std::uint64_t seed) const {
  Realization r;
  r.owner_ = this;
  if (source_.kind == PhiSource::Kind::finite)
    r.finite_.emplace(sym_, noise_, source_.n, rng::derive(seed, tag(Stream::noise)));
  else if (noise_.basis() == Basis::identity)
    r.limit_.emplace(sym_, noise_.dist(), half_width_, rng::derive(seed, tag(Stream::lattice)));
  if (gaussian_) r.gaussian_.emplace(gaussian_->draw(rng::derive(seed, tag(Stream::gaussian_field))));
  return r;
}

CMatrix PhiSampler::Realization::field(Complex z) {
  const int m = owner_->sym_.band();
  CMatrix w = CMatrix::Zero(m, m);
  if (finite_) w += (*finite_)(z);
  if (limit_) w += (*limit_)(z);
  if (gaussian_) w += (*gaussian_)(z);
  return w;
}

Complex PhiSampler::weight(Complex z, const CMatrix& w) const {
  const int k = std::abs(delta_);
  const auto m = w.rows();
  const CMatrix h = h_matrix_fast(sym_, z);
  const auto adj = adjugate_k(CMatrix::Identity(m, m) + h, k);
  const auto wedge = compound(w, k);
  return (adj.values * wedge.values).trace();
}

Complex PhiSampler::Realization::operator()(Complex z) { return owner_->weight(z, field(z)); }

FieldSample sample_phi(const PhiSampler& sampler, std::span<const Complex> points, std::uint64_t seed) {
  auto real = sampler.draw(seed);
  FieldSample out;
  out.provenance = Provenance::combined;
  out.seed = seed;
  out.points.assign(points.begin(), points.end());
  for (const auto& z : points) out.values.push_back(CMatrix::Constant(1, 1, real(z)));
  return out;
}

RankOne rank_one_factors(const CMatrix& b0) {
  Eigen::JacobiSVD<CMatrix> svd(b0, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return {CVector::Zero(b0.rows()), CVector::Zero(b0.cols())};
  if (sv.size() > 1 && sv(1) > 1e-10 * sv(0)) throw DomainError("B_0 must be rank one");
  return {sv(0) * svd.matrixU().col(0), svd.matrixV().col(0)};
}

Complex z_statistic(std::span<const CMatrix> B, const CMatrix& X, int k) {
  if (k < 1 || static_cast<int>(B.size()) < k) throw DomainError("need k >= 1 matrices");
  const auto [u, v] = rank_one_factors(B[0]);
  CVector w = X * u;
  for (int t = k - 1; t >= 1; --t) w = X * (B[static_cast<std::size_t>(t)] * w);
  const double n = static_cast<double>(X.rows());
  return v.dot(w) * std::pow(n, -0.5 * (k - 1));
}

SigmaPair sigma_k(std::span<const CMatrix> B, std::span<const CMatrix> Bp, int k, int n, double rho) {
  if (k < 1 || static_cast<int>(B.size()) < k || static_cast<int>(Bp.size()) < k)
    throw DomainError("need k >= 1 matrices");
  Complex herm{1.0, 0.0}, sym{1.0, 0.0};
  for (int t = 0; t < k; ++t) {
    const auto& a = B[static_cast<std::size_t>(t)];
    const auto& b = Bp[static_cast<std::size_t>(t)];
    herm *= a.cwiseProduct(b.conjugate()).sum();
    sym *= a.cwiseProduct(b).sum();
  }
  const double scale = std::pow(static_cast<double>(n), -(k - 1));
  return {scale * herm, std::pow(rho, k) * scale * sym};
}

Complex gaussian_from_moments(const SigmaPair& s, std::uint64_t seed, std::uint64_t index) {
  const double total = s.sigma.real();
  const double var_re = 0.5 * (total + s.sigma_prime.real());
  const double var_im = 0.5 * (total - s.sigma_prime.real());
  const double cov = 0.5 * s.sigma_prime.imag();
  const double l11 = std::sqrt(std::max(var_re, 0.0));
  const double l21 = l11 > 0.0 ? cov / l11 : 0.0;
  const double l22 = std::sqrt(std::max(var_im - l21 * l21, 0.0));
  const auto stream = tag(Stream::scalar_w);
  const double g1 = rng::gaussian(seed, stream, index, 0, 0);
  const double g2 = rng::gaussian(seed, stream, index, 0, 1);
  return {l11 * g1, l21 * g1 + l22 * g2};
}

Complex gaussian_w_k(std::span<const CMatrix> B, int k, std::uint64_t seed, double rho, std::uint64_t index) {
  const int n = static_cast<int>(B[0].rows());
  return gaussian_from_moments(sigma_k(B, B, k, n, rho), seed, index);
}

nlohmann::json field_to_json(const FieldSample& f) {
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t i = 0; i < f.points.size(); ++i) {
    nlohmann::json w = nlohmann::json::array();
    const auto& v = f.values[i];
    for (Eigen::Index p = 0; p < v.rows(); ++p)
      for (Eigen::Index q = 0; q < v.cols(); ++q) w.push_back({v(p, q).real(), v(p, q).imag()});
    arr.push_back({{"z", {f.points[i].real(), f.points[i].imag()}}, {"W", w}});
  }
  return arr;
}

}  // namespace tpz
