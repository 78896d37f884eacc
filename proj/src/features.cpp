#include "tpz/features.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <array>
#include <cmath>
#include <map>

#include "tpz/rng.hpp"

namespace tpz {

Complex LagFeatures::at(long long lag) const {
  const long long k = lag - lo;
  if (period > 0) {
    long long m = k % period;
    if (m < 0) m += period;
    return values[static_cast<std::size_t>(m)];
  }
  if (k < 0 || k >= static_cast<long long>(values.size())) return {};
  return values[static_cast<std::size_t>(k)];
}

double gamma_tail_bound(const LaurentSymbol& sym, Complex z, long long half_width) {
  const auto profile = symbol_roots(sym, z);
  if (profile.unit_gap < 1e-8) throw OnCriticalCurve("point too close to the symbol curve");
  const auto q = q_polynomial(sym, z);
  const auto L = static_cast<double>(half_width);
  double tail = 0.0;
  if (roots_simple(profile, 1e-6)) {
    for (const auto& l : profile.roots) {
      const double mu = std::abs(l);
      const double c = std::pow(mu, sym.r()) / std::abs(poly_derivative_eval(q, l));
      if (mu < 1.0) tail += c * std::pow(mu, L) / (1.0 - mu);
      else tail += c * std::pow(mu, -(L + 2.0)) / (1.0 - 1.0 / mu);
    }
    return tail;
  }
  // Confluent roots: polynomial factor of the multiplicity on top of the geometric rate.
  double kappa = 0.0;
  for (const auto& l : profile.roots) {
    const double mu = std::abs(l);
    kappa = std::max(kappa, mu < 1.0 ? mu : 1.0 / mu);
  }
  const double scale = 1.0 / (profile.unit_gap * std::max(1e-3, profile.unit_gap));
  return scale * std::pow(1.0 + L, sym.band()) * std::pow(kappa, L) / (1.0 - kappa);
}

long long limit_half_width(const LaurentSymbol& sym, Complex z, double tol) {
  const double ref = std::max(1.0, gamma_tail_bound(sym, z, 0));
  long long L = sym.band() + 1;
  while (gamma_tail_bound(sym, z, L) > tol * ref && L < (1LL << 20)) L += std::max(1LL, L / 8);
  return L + sym.band();
}

LagFeatures lag_features(const LaurentSymbol& sym, Complex z, int n, double tol) {
  LagFeatures f;
  f.z = z;
  if (n > 0) {
    if (circulant_gap(sym, n, z) <= 1e-10) throw SingularError("z is a circulant eigenvalue");
    const ResolventCoefficients gamma(sym, z, n);
    f.period = n;
    f.lo = 0;
    f.values = gamma.range(0, n - 1);
    return f;
  }
  const long long L = limit_half_width(sym, z, tol);
  const ResolventCoefficients gamma(sym, z, 0);
  f.lo = -L;
  f.values = gamma.range(-L, L);
  return f;
}

Complex lag_pairing(const LagFeatures& f, const LagFeatures& g, long long d, Pairing mode) {
  Complex acc{};
  const auto size = static_cast<long long>(g.values.size());
  for (long long k = 0; k < size; ++k) {
    const long long b = g.lo + k;
    const Complex gv = g.values[static_cast<std::size_t>(k)];
    switch (mode) {
      case Pairing::conjugate: acc += f.at(d + b) * std::conj(gv); break;
      case Pairing::reflect: acc += f.at(d + b) * gv; break;
      case Pairing::direct: acc += f.at(d - b) * gv; break;
    }
  }
  return acc;
}

KernelBlocks kernel_blocks(const LaurentSymbol& sym, const LagFeatures& f, const LagFeatures& g, Pairing mode) {
  const int m = sym.band();
  std::map<long long, Complex> cache;
  auto theta_at = [&](long long d) {
    auto it = cache.find(d);
    if (it != cache.end()) return it->second;
    const Complex v = lag_pairing(f, g, d, mode);
    cache.emplace(d, v);
    return v;
  };
  const bool sum_lags = mode == Pairing::direct;
  CMatrix core_a(m, m), core_b(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const long long ri = row_offset(sym, i), rj = row_offset(sym, j);
      const long long ci = col_offset(sym, i), cj = col_offset(sym, j);
      core_a(i, j) = theta_at(sum_lags ? ri + rj : ri - rj);
      core_b(i, j) = theta_at(sum_lags ? -ci - cj : ci - cj);
    }
  }
  const CMatrix d = calligraphic_d(sym), e = calligraphic_e(sym);
  KernelBlocks kb;
  kb.theta = theta_at(0);
  if (mode == Pairing::conjugate) {
    kb.A = d * core_a * d.adjoint();
    kb.B = e.adjoint() * core_b * e;
  } else {
    kb.A = d * core_a * d.transpose();
    kb.B = e.transpose() * core_b * e;
  }
  return kb;
}

LagFeatures FieldLaw::features(Complex z) const { return lag_features(sym, z, n); }

BlockAssembler::BlockAssembler(const FieldLaw& law)
    : law_(law), m_(law.sym.band()), mm_(law.sym.band() * law.sym.band()) {
  if (m_ > 8) throw DomainError("field blocks support r+s <= 8");
  conj_table_ = table(Pairing::conjugate, conj_lags_);
  pseudo_table_ = table(law_.pseudo, pseudo_lags_);
  d_ = calligraphic_d(law_.sym);
  e_ = calligraphic_e(law_.sym);
}

BlockAssembler::Table BlockAssembler::table(Pairing mode, std::vector<long long>& lags) const {
  const auto& sym = law_.sym;
  const bool sum_lags = mode == Pairing::direct;
  std::vector<long long> la, lb;
  for (int j = 0; j < m_; ++j) {
    for (int i = 0; i < m_; ++i) {
      const long long ri = row_offset(sym, i), rj = row_offset(sym, j);
      const long long ci = col_offset(sym, i), cj = col_offset(sym, j);
      la.push_back(sum_lags ? ri + rj : ri - rj);
      lb.push_back(sum_lags ? -ci - cj : ci - cj);
    }
  }
  lags = la;
  lags.insert(lags.end(), lb.begin(), lb.end());
  lags.push_back(0);
  std::sort(lags.begin(), lags.end());
  lags.erase(std::unique(lags.begin(), lags.end()), lags.end());
  auto index = [&](long long d) {
    return static_cast<int>(std::lower_bound(lags.begin(), lags.end(), d) - lags.begin());
  };
  Table t;
  t.zero = index(0);
  for (auto d : la) t.a.push_back(index(d));
  for (auto d : lb) t.b.push_back(index(d));
  return t;
}

void BlockAssembler::side(const Table& t, const Complex* vals, bool conjugate, Complex* A, Complex* B,
                          Complex& theta) const {
  const int m = m_;
  theta = vals[t.zero];
  for (int pp = 0; pp < m; ++pp) {
    for (int p = 0; p < m; ++p) {
      Complex acc{};
      for (int j = 0; j < m; ++j) {
        const Complex right = conjugate ? std::conj(d_(pp, j)) : d_(pp, j);
        if (right == Complex{}) continue;
        Complex row{};
        for (int i = 0; i < m; ++i) row += d_(p, i) * vals[t.a[static_cast<std::size_t>(i + m * j)]];
        acc += row * right;
      }
      A[p + m * pp] = acc;
    }
  }
  for (int y = 0; y < m; ++y) {
    for (int x = 0; x < m; ++x) {
      Complex acc{};
      for (int j = 0; j < m; ++j) {
        const Complex right = e_(j, y);
        if (right == Complex{}) continue;
        Complex row{};
        for (int i = 0; i < m; ++i) {
          const Complex left = conjugate ? std::conj(e_(i, x)) : e_(i, x);
          row += left * vals[t.b[static_cast<std::size_t>(i + m * j)]];
        }
        acc += row * right;
      }
      B[x + m * y] = acc;
    }
  }
}

namespace {

Complex conj_weight(FieldLaw::Part part, double s2, Complex theta) {
  switch (part) {
    case FieldLaw::Part::linear: return 1.0;
    case FieldLaw::Part::gaussian: return s2 * theta / (1.0 - s2 * theta);
    case FieldLaw::Part::total: return 1.0 / (1.0 - s2 * theta);
  }
  return 1.0;
}

Complex pseudo_weight(FieldLaw::Part part, double s2, double rho, Complex theta) {
  switch (part) {
    case FieldLaw::Part::linear: return rho;
    case FieldLaw::Part::gaussian: return rho * rho * s2 * theta / (1.0 - rho * s2 * theta);
    case FieldLaw::Part::total: return rho / (1.0 - rho * s2 * theta);
  }
  return rho;
}

}  // namespace

void BlockAssembler::complex_blocks(const Complex* conj_vals, const Complex* pseudo_vals, CMatrix& K,
                                    CMatrix& J) const {
  const int m = m_;
  const double s2 = law_.sigma * law_.sigma;
  std::array<Complex, 64> A{}, B{};
  Complex theta;
  K.resize(mm_, mm_);
  J = CMatrix::Zero(mm_, mm_);
  side(conj_table_, conj_vals, true, A.data(), B.data(), theta);
  const Complex ck = conj_weight(law_.part, s2, theta);
  for (int qq = 0; qq < m; ++qq)
    for (int pp = 0; pp < m; ++pp)
      for (int q = 0; q < m; ++q)
        for (int p = 0; p < m; ++p) K(p + m * q, pp + m * qq) = ck * A[p + m * pp] * B[qq + m * q];
  if (!has_pseudo()) return;
  side(pseudo_table_, pseudo_vals, false, A.data(), B.data(), theta);
  const Complex cj = pseudo_weight(law_.part, s2, law_.rho, theta);
  for (int qq = 0; qq < m; ++qq)
    for (int pp = 0; pp < m; ++pp)
      for (int q = 0; q < m; ++q)
        for (int p = 0; p < m; ++p) J(p + m * q, pp + m * qq) = cj * A[p + m * pp] * B[qq + m * q];
}

void BlockAssembler::real_block(const Complex* conj_vals, const Complex* pseudo_vals, double* out,
                                Eigen::Index ld) const {
  const int m = m_, M = mm_;
  const double s2 = law_.sigma * law_.sigma;
  std::array<Complex, 64> A{}, B{}, Ap{}, Bp{};
  Complex theta, theta_p;
  side(conj_table_, conj_vals, true, A.data(), B.data(), theta);
  const Complex ck = conj_weight(law_.part, s2, theta);
  Complex cj{};
  if (has_pseudo()) {
    side(pseudo_table_, pseudo_vals, false, Ap.data(), Bp.data(), theta_p);
    cj = pseudo_weight(law_.part, s2, law_.rho, theta_p);
  }
  for (int qq = 0; qq < m; ++qq) {
    for (int pp = 0; pp < m; ++pp) {
      const int c = pp + m * qq;
      for (int q = 0; q < m; ++q) {
        for (int p = 0; p < m; ++p) {
          const int r = p + m * q;
          const Complex k = ck * A[p + m * pp] * B[qq + m * q];
          const Complex j = cj * Ap[p + m * pp] * Bp[qq + m * q];
          out[r + ld * c] = 0.5 * (k + j).real();
          out[r + ld * (M + c)] = 0.5 * (j - k).imag();
          out[M + r + ld * c] = 0.5 * (k + j).imag();
          out[M + r + ld * (M + c)] = 0.5 * (k - j).real();
        }
      }
    }
  }
}

void FieldLaw::blocks(const LagFeatures& f, const LagFeatures& g, CMatrix& K, CMatrix& J) const {
  const BlockAssembler assembler(*this);
  std::vector<Complex> cv, pv;
  for (auto d : assembler.conj_lags()) cv.push_back(lag_pairing(f, g, d, Pairing::conjugate));
  if (assembler.has_pseudo())
    for (auto d : assembler.pseudo_lags()) pv.push_back(lag_pairing(f, g, d, pseudo));
  assembler.complex_blocks(cv.data(), pv.data(), K, J);
}

RMatrix real_covariance(const CMatrix& K, const CMatrix& J) {
  const auto r = K.rows(), c = K.cols();
  RMatrix out(2 * r, 2 * c);
  out.topLeftCorner(r, c) = 0.5 * (K + J).real();
  out.topRightCorner(r, c) = 0.5 * (J - K).imag();
  out.bottomLeftCorner(r, c) = 0.5 * (K + J).imag();
  out.bottomRightCorner(r, c) = 0.5 * (K - J).real();
  return out;
}

RMatrix FieldLaw::real_block(const LagFeatures& f, const LagFeatures& g) const {
  CMatrix K, J;
  blocks(f, g, K, J);
  return real_covariance(K, J);
}

LagFeatures GaussianField::window_features(Complex z) const {
  if (law_.n > 0) return lag_features(law_.sym, z, law_.n);
  LagFeatures f;
  f.z = z;
  f.lo = window_lo_;
  f.values = ResolventCoefficients(law_.sym, z, 0).range(window_lo_, window_lo_ + window_size_ - 1);
  return f;
}

GaussianField::GaussianField(FieldLaw law, std::vector<Complex> base, double refine_threshold)
    : law_(std::move(law)), base_(std::move(base)), assembler_(law_), threshold_(refine_threshold) {
  const int m = law_.sym.band();
  dim_ = 2 * m * m;
  const auto g = static_cast<Eigen::Index>(base_.size());
  if (law_.n > 0) {
    window_lo_ = 0;
    window_size_ = law_.n;
  } else {
    long long half = 0;
    for (const auto& z : base_) half = std::max(half, limit_half_width(law_.sym, z, 1e-13));
    window_lo_ = -half;
    window_size_ = 2 * half + 1;
  }
  features_.resize(base_.size());
#pragma omp parallel for schedule(dynamic)
  for (Eigen::Index i = 0; i < g; ++i)
    features_[static_cast<std::size_t>(i)] = window_features(base_[static_cast<std::size_t>(i)]);
  for (auto d : assembler_.conj_lags()) pad_ = std::max(pad_, std::llabs(d));
  for (auto d : assembler_.pseudo_lags()) pad_ = std::max(pad_, std::llabs(d));
  lag_matrix_.resize(g, window_size_ + 2 * pad_);
  for (Eigen::Index i = 0; i < g; ++i)
    for (Eigen::Index k = 0; k < lag_matrix_.cols(); ++k)
      lag_matrix_(i, k) = features_[static_cast<std::size_t>(i)].at(window_lo_ - pad_ + k);
  const Eigen::Index N = g * dim_;
  RMatrix cov(N, N);
#pragma omp parallel for schedule(dynamic)
  for (Eigen::Index j = 0; j < g; ++j) cov.middleCols(j * dim_, dim_) = cross_base(features_[static_cast<std::size_t>(j)]);
  cov = 0.5 * (cov + cov.transpose()).eval();
  const double trace = cov.trace();
  if (trace == 0.0) {
    chol_ = RMatrix::Zero(N, N);
    return;
  }
  for (double eps : {0.0, 1e-16, 1e-15, 1e-14, 1e-13, 1e-12, 1e-11, 1e-10}) {
    RMatrix trial = cov;
    trial.diagonal().array() += eps * trace;
    Eigen::LLT<RMatrix> llt(trial);
    if (llt.info() == Eigen::Success && llt.matrixLLT().diagonal().minCoeff() > 0.0) {
      jitter_ = eps * trace;
      chol_ = llt.matrixL();
      return;
    }
  }
  throw KernelError("field covariance is not positive semidefinite within jitter");
}

RMatrix GaussianField::cross_base(const LagFeatures& f) const {
  const auto g = lag_matrix_.rows();
  auto pairings = [&](const std::vector<long long>& lags, Pairing mode) {
    CVector gv(window_size_);
    for (Eigen::Index k = 0; k < window_size_; ++k) {
      switch (mode) {
        case Pairing::conjugate: gv(k) = std::conj(f.at(window_lo_ + k)); break;
        case Pairing::reflect: gv(k) = f.at(window_lo_ + k); break;
        case Pairing::direct: gv(k) = f.at(-window_lo_ - k); break;
      }
    }
    CMatrix t(g, static_cast<Eigen::Index>(lags.size()));
    for (std::size_t c = 0; c < lags.size(); ++c)
      t.col(static_cast<Eigen::Index>(c)).noalias() = lag_matrix_.middleCols(pad_ + lags[c], window_size_) * gv;
    return t;
  };
  const CMatrix tc = pairings(assembler_.conj_lags(), Pairing::conjugate);
  const CMatrix tp = assembler_.has_pseudo() ? pairings(assembler_.pseudo_lags(), law_.pseudo) : CMatrix();
  RMatrix out(g * dim_, dim_);
  std::vector<Complex> cv(static_cast<std::size_t>(tc.cols())), pv(static_cast<std::size_t>(tp.cols()));
  for (Eigen::Index i = 0; i < g; ++i) {
    for (Eigen::Index c = 0; c < tc.cols(); ++c) cv[static_cast<std::size_t>(c)] = tc(i, c);
    for (Eigen::Index c = 0; c < tp.cols(); ++c) pv[static_cast<std::size_t>(c)] = tp(i, c);
    assembler_.real_block(cv.data(), pv.data(), out.data() + i * dim_, out.rows());
  }
  return out;
}

RMatrix GaussianField::cross(const std::vector<LagFeatures>& feats, const LagFeatures& f) const {
  RMatrix out(static_cast<Eigen::Index>(feats.size()) * dim_, dim_);
  for (std::size_t i = 0; i < feats.size(); ++i)
    out.block(static_cast<Eigen::Index>(i) * dim_, 0, dim_, dim_) = law_.real_block(feats[i], f);
  return out;
}

namespace {

CMatrix unstack(const RVector& x, Eigen::Index offset, int m) {
  const int mm = m * m;
  CMatrix w(m, m);
  for (int e = 0; e < mm; ++e) w(e % m, e / m) = Complex{x(offset + e), x(offset + mm + e)};
  return w;
}

}  // namespace

GaussianField::Draw GaussianField::draw(std::uint64_t seed) const {
  Draw d;
  d.field_ = this;
  d.seed_ = seed;
  const Eigen::Index N = chol_.rows();
  NormalStream stream(seed, Stream::gaussian_field);
  RVector xi(N);
  for (Eigen::Index i = 0; i < N; ++i) xi(i) = stream.next();
  d.stacked_ = chol_.triangularView<Eigen::Lower>() * xi;
  if (chol_.size() > 0 && chol_.diagonal().minCoeff() > 0.0)
    d.alpha_ = chol_.transpose().triangularView<Eigen::Upper>().solve(xi);
  else
    d.alpha_ = RVector::Zero(N);
  const int m = law_.sym.band();
  for (std::size_t i = 0; i < base_.size(); ++i)
    d.values_.push_back(unstack(d.stacked_, static_cast<Eigen::Index>(i) * dim_, m));
  return d;
}

CMatrix GaussianField::Draw::operator()(Complex z) {
  const GaussianField& fld = *field_;
  const int m = fld.law_.sym.band();
  const LagFeatures f = fld.window_features(z);
  RMatrix C = fld.cross_base(f);
  if (!features_.empty()) {
    const RMatrix extra = fld.cross(features_, f);
    RMatrix both(C.rows() + extra.rows(), C.cols());
    both << C, extra;
    C = std::move(both);
  }
  RVector x = C.transpose() * alpha_;
  if (fld.threshold_ > 0.0 && fld.jitter_ >= 0.0 && alpha_.size() > 0 && alpha_.cwiseAbs().maxCoeff() > 0.0) {
    const RMatrix& L = chol_.size() ? chol_ : fld.chol_;
    RMatrix prior(fld.dim_, fld.dim_);
    {
      const RMatrix own = fld.law_.real_block(f, f);
      prior = own;
    }
    const RMatrix v = L.triangularView<Eigen::Lower>().solve(C);
    RMatrix cond = prior - v.transpose() * v;
    const double scale = prior.diagonal().maxCoeff();
    if (cond.diagonal().maxCoeff() > fld.threshold_ * scale) {
      cond = 0.5 * (cond + cond.transpose()).eval();
      cond.diagonal().array() += fld.jitter_ + 1e-14 * scale;
      Eigen::LLT<RMatrix> llt(cond);
      if (llt.info() != Eigen::Success) throw KernelError("conditional covariance is not positive");
      const RMatrix l22 = llt.matrixL();
      RVector eta(fld.dim_);
      for (int i = 0; i < fld.dim_; ++i) eta(i) = rng::gaussian(seed_, tag(Stream::conditioning), counter_++, 0);
      x += l22 * eta;
      const Eigen::Index N = L.rows();
      RMatrix grown = RMatrix::Zero(N + fld.dim_, N + fld.dim_);
      grown.topLeftCorner(N, N) = L;
      grown.bottomLeftCorner(fld.dim_, N) = v.transpose();
      grown.bottomRightCorner(fld.dim_, fld.dim_) = l22;
      chol_ = std::move(grown);
      RVector s(N + fld.dim_);
      s << stacked_, x;
      stacked_ = std::move(s);
      const RVector y = chol_.triangularView<Eigen::Lower>().solve(stacked_);
      alpha_ = chol_.transpose().triangularView<Eigen::Upper>().solve(y);
      points_.push_back(z);
      features_.push_back(f);
      ++added_;
    }
  }
  return unstack(x, 0, m);
}

double GaussianField::max_conditional_variance(const std::vector<Complex>& probes) const {
  double worst = 0.0;
  for (const auto& z : probes) {
    const LagFeatures f = window_features(z);
    const RMatrix C = cross_base(f);
    const RMatrix prior = law_.real_block(f, f);
    const RMatrix v = chol_.triangularView<Eigen::Lower>().solve(C);
    const RMatrix cond = prior - v.transpose() * v;
    worst = std::max(worst, cond.diagonal().maxCoeff() / prior.diagonal().maxCoeff());
  }
  return worst;
}

std::vector<Complex> polar_grid(Complex center, double radius, int rings, int outer) {
  std::vector<Complex> pts{center};
  for (int j = 1; j <= rings; ++j) {
    const double rad = radius * j / rings;
    const int count = std::max(6, static_cast<int>(std::lround(static_cast<double>(outer) * j / rings)));
    const double shift = (j % 2) * kPi / count;
    for (int k = 0; k < count; ++k) pts.push_back(center + std::polar(rad, shift + 2.0 * kPi * k / count));
  }
  return pts;
}

}  // namespace tpz
