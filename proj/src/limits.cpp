#include "tpz/limits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tpz {

namespace {

Complex ipow(Complex x, long long e) {
  if (e < 0) return 1.0 / ipow(x, -e);
  Complex result{1.0, 0.0};
  while (e > 0) {
    if (e & 1) result *= x;
    x *= x;
    e >>= 1;
  }
  return result;
}

long long mod(long long a, long long n) {
  const long long m = a % n;
  return m < 0 ? m + n : m;
}

void check_off_curve(const RootProfile& p) {
  if (p.unit_gap < 1e-8) throw OnCriticalCurve("point too close to the symbol curve");
}

// (1/N) sum_k w^{l k} h_k for each lag, with h sampled at the N-th roots of unity.
CMatrix lag_sums(const std::vector<Complex>& h, const std::vector<std::vector<long long>>& lags) {
  const auto n = static_cast<long long>(h.size());
  std::vector<Complex> roots(static_cast<std::size_t>(n));
  for (long long k = 0; k < n; ++k) roots[static_cast<std::size_t>(k)] = unit_root(k, n);
  const auto rows = static_cast<Eigen::Index>(lags.size());
  const auto cols = static_cast<Eigen::Index>(lags.empty() ? 0 : lags.front().size());
  CMatrix out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      const long long l = mod(lags[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], n);
      Complex acc{};
      long long idx = 0;
      for (long long k = 0; k < n; ++k) {
        acc += roots[static_cast<std::size_t>(idx)] * h[static_cast<std::size_t>(k)];
        idx += l;
        if (idx >= n) idx -= n;
      }
      out(i, j) = acc / static_cast<double>(n);
    }
  }
  return out;
}

template <class H>
std::vector<Complex> sample_circle(H&& h, int n) {
  std::vector<Complex> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = h(unit_root(k, n));
  return out;
}

// Doubles N until the lag sums settle.
template <class H>
CMatrix adaptive_lag_sums(H&& h, const std::vector<std::vector<long long>>& lags, double tol) {
  int n = 64;
  CMatrix prev = lag_sums(sample_circle(h, n), lags);
  while (n < (1 << 22)) {
    n *= 2;
    CMatrix cur = lag_sums(sample_circle(h, n), lags);
    const double scale = std::max(1.0, cur.cwiseAbs().maxCoeff());
    if ((cur - prev).cwiseAbs().maxCoeff() < tol * scale) return cur;
    prev = std::move(cur);
  }
  return prev;
}

}  // namespace

int row_offset(const LaurentSymbol& sym, int p) { return p < sym.s() ? p : p - sym.band(); }
int col_offset(const LaurentSymbol& sym, int q) { return q - sym.s(); }

ResolventCoefficients::ResolventCoefficients(const LaurentSymbol& sym, Complex z, int n)
    : sym_(sym), z_(z), n_(n) {
  const auto profile = symbol_roots(sym, z);
  roots_ = profile.roots;
  for (const auto& l : roots_) {
    const double m = std::abs(l);
    kappa_ = std::max(kappa_, m < 1.0 ? m : 1.0 / m);
  }
  double scale = 1.0;
  for (const auto& l : roots_) scale = std::max(scale, std::abs(l));
  double sep = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < roots_.size(); ++i)
    for (std::size_t j = i + 1; j < roots_.size(); ++j) sep = std::min(sep, std::abs(roots_[i] - roots_[j]));
  closed_form_ = sep > 1e-4 * scale && profile.unit_gap > 1e-8;
  if (closed_form_) {
    const auto q = q_polynomial(sym, z);
    for (const auto& l : roots_) weights_.push_back(ipow(l, sym.r()) / poly_derivative_eval(q, l));
  }
}

Complex ResolventCoefficients::direct(long long lag, int points) const {
  Complex acc{};
  for (int k = 0; k < points; ++k) {
    const Complex w = unit_root(k, points);
    acc += unit_root(lag * k, points) / (z_ - eval_symbol(sym_, w));
  }
  return acc / static_cast<double>(points);
}

int ResolventCoefficients::limit_points(long long max_lag) const {
  if (kappa_ >= 1.0 - 1e-12) throw OnCriticalCurve("resolvent coefficients need z off the curve");
  const double need = 2.0 * static_cast<double>(max_lag) + 40.0 / std::abs(std::log(kappa_)) + 64.0;
  int n = 64;
  while (n < need && n < (1 << 22)) n *= 2;
  return n;
}

Complex ResolventCoefficients::operator()(long long lag) const {
  if (!closed_form_) return direct(lag, n_ > 0 ? n_ : limit_points(std::llabs(lag)));
  Complex acc{};
  for (std::size_t j = 0; j < roots_.size(); ++j) {
    const Complex l = roots_[j];
    const bool inner = std::abs(l) < 1.0;
    Complex term{};
    if (n_ > 0) {
      const long long t = mod(mod(lag, n_) - 1, n_);
      if (inner) term = ipow(l, t) / (1.0 - ipow(l, n_));
      else term = -ipow(l, t - n_) / (1.0 - ipow(l, -n_));
    } else if (inner && lag >= 1) {
      term = ipow(l, lag - 1);
    } else if (!inner && lag <= 0) {
      term = -ipow(l, lag - 1);
    }
    acc -= weights_[j] * term;
  }
  return acc;
}

std::vector<Complex> ResolventCoefficients::range(long long lo, long long hi) const {
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(hi - lo + 1));
  if (closed_form_) {
    for (long long l = lo; l <= hi; ++l) out.push_back((*this)(l));
    return out;
  }
  const int points = n_ > 0 ? n_ : limit_points(std::max(std::llabs(lo), std::llabs(hi)));
  const auto h = sample_circle([&](Complex w) { return 1.0 / (z_ - eval_symbol(sym_, w)); }, points);
  std::vector<std::vector<long long>> lags(1);
  for (long long l = lo; l <= hi; ++l) lags[0].push_back(l);
  const CMatrix v = lag_sums(h, lags);
  for (Eigen::Index k = 0; k < v.cols(); ++k) out.push_back(v(0, k));
  return out;
}

double circulant_gap(const LaurentSymbol& sym, int n, Complex z) {
  double gap = std::numeric_limits<double>::infinity();
  for (int k = 0; k < n; ++k) gap = std::min(gap, std::abs(z - eval_symbol(sym, unit_root(k, n))));
  return gap;
}

namespace {

CMatrix restricted_from(const LaurentSymbol& sym, const std::function<Complex(long long)>& gamma) {
  const int m = sym.band();
  CMatrix core(m, m);
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q) core(p, q) = gamma(row_offset(sym, p) - col_offset(sym, q));
  return calligraphic_d(sym) * core * calligraphic_e(sym);
}

void check_resolvent(const LaurentSymbol& sym, int n, Complex z) {
  if (n <= sym.band()) throw SizeError("matrix size must exceed r+s");
  if (circulant_gap(sym, n, z) <= 1e-10) throw SingularError("z is a circulant eigenvalue");
}

}  // namespace

CMatrix restricted_resolvent(const LaurentSymbol& sym, int n, Complex z) {
  check_resolvent(sym, n, z);
  const ResolventCoefficients gamma(sym, z, n);
  return restricted_from(sym, [&](long long l) { return gamma(l); });
}

CMatrix restricted_resolvent_spectral(const LaurentSymbol& sym, int n, Complex z) {
  check_resolvent(sym, n, z);
  const auto h = sample_circle([&](Complex w) { return 1.0 / (z - eval_symbol(sym, w)); }, n);
  const int m = sym.band();
  std::vector<std::vector<long long>> lags(static_cast<std::size_t>(m), std::vector<long long>(static_cast<std::size_t>(m)));
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q) lags[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] = row_offset(sym, p) - col_offset(sym, q);
  return calligraphic_d(sym) * lag_sums(h, lags) * calligraphic_e(sym);
}

CMatrix h_quadrature(const LaurentSymbol& sym, Complex z, double tol) {
  check_off_curve(symbol_roots(sym, z));
  const int m = sym.band();
  std::vector<std::vector<long long>> lags(static_cast<std::size_t>(m), std::vector<long long>(static_cast<std::size_t>(m)));
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q) lags[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] = row_offset(sym, p) - col_offset(sym, q);
  const CMatrix core = adaptive_lag_sums([&](Complex w) { return 1.0 / (z - eval_symbol(sym, w)); }, lags, tol);
  return calligraphic_d(sym) * core * calligraphic_e(sym);
}

int kernel_dimension(const CMatrix& H) {
  const auto m = H.rows();
  Eigen::JacobiSVD<CMatrix> svd(CMatrix::Identity(m, m) + H);
  const double h_norm = m > 0 ? Eigen::JacobiSVD<CMatrix>(H).singularValues()(0) : 0.0;
  const double thr = kSvdTol * (1.0 + h_norm);
  int count = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) < thr) ++count;
  return count;
}

LimitMatrices h_matrix(const LaurentSymbol& sym, Complex z, double tol) {
  LimitMatrices lm;
  lm.z = z;
  lm.H = h_quadrature(sym, z, tol);
  lm.kernel_dim = kernel_dimension(lm.H);
  const auto m = lm.H.rows();
  lm.adj_delta = adjugate_k(CMatrix::Identity(m, m) + lm.H, lm.kernel_dim);
  return lm;
}

ResidueVectors residue_vectors(const LaurentSymbol& sym, Complex z) {
  const auto profile = symbol_roots(sym, z);
  check_off_curve(profile);
  if (!roots_simple(profile)) throw MultipleRootError("residue formula needs simple roots");
  const int r = sym.r(), s = sym.s(), m = r + s;
  const auto q = q_polynomial(sym, z);
  const CMatrix dr = d_block(sym);
  ResidueVectors rv;
  rv.inside = profile.inside();
  for (const auto& l : profile.roots) {
    CVector phi(s), psi(r), g(m);
    for (int p = 0; p < s; ++p) phi(p) = ipow(l, r + p);
    for (int p = 0; p < r; ++p) psi(p) = ipow(l, p);
    for (int p = 0; p < m; ++p) g(p) = ipow(l, s - 1 - p);
    CVector f(m), ft(m);
    f.head(s) = phi;
    ft.head(s) = phi;
    if (r > 0) {
      f.tail(r) = dr * psi;
      ft.tail(r) = -(dr * psi);
    }
    rv.f.push_back(f);
    rv.f_tilde.push_back(ft);
    rv.g.push_back(g);
    rv.q_prime.push_back(poly_derivative_eval(q, l));
  }
  if (r > 0) {
    std::vector<Complex> c(static_cast<std::size_t>(r));
    c[0] = 1.0 / q[0];
    for (int k = 1; k < r; ++k) {
      Complex acc{};
      for (int i = 1; i <= k && i < static_cast<int>(q.size()); ++i) acc += q[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(k - i)];
      c[static_cast<std::size_t>(k)] = -acc / q[0];
    }
    rv.T = CMatrix::Zero(r, r);
    for (int p = 0; p < r; ++p)
      for (int qq = p; qq < r; ++qq) rv.T(p, qq) = c[static_cast<std::size_t>(qq - p)];
  }
  return rv;
}

CMatrix h_matrix_residue(const LaurentSymbol& sym, Complex z) {
  const auto rv = residue_vectors(sym, z);
  const int r = sym.r(), m = sym.band();
  const CMatrix e = calligraphic_e(sym);
  CMatrix h = CMatrix::Zero(m, m);
  for (int j = 0; j < rv.inside; ++j) {
    const auto js = static_cast<std::size_t>(j);
    h -= (rv.f[js] * (rv.g[js].transpose() * e)) / rv.q_prime[js];
  }
  if (r > 0) h.bottomRightCorner(r, r) -= d_block(sym) * rv.T;
  return h;
}

CMatrix h_matrix_fast(const LaurentSymbol& sym, Complex z) {
  try {
    return h_matrix_residue(sym, z);
  } catch (const MultipleRootError&) {
    return h_quadrature(sym, z);
  }
}

namespace {

struct KernelPlan {
  std::vector<std::vector<long long>> lags;
  CMatrix left;
  CMatrix right;
  bool scalar = false;
};

KernelPlan plan_kernel(const LaurentSymbol& sym, KernelKind which, int eps) {
  const int m = sym.band();
  KernelPlan plan;
  auto grid = [&](auto lag) {
    std::vector<std::vector<long long>> out(static_cast<std::size_t>(m), std::vector<long long>(static_cast<std::size_t>(m)));
    for (int p = 0; p < m; ++p)
      for (int q = 0; q < m; ++q) out[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] = lag(p, q);
    return out;
  };
  const CMatrix d = calligraphic_d(sym), e = calligraphic_e(sym);
  switch (which) {
    case KernelKind::theta:
    case KernelKind::theta_eps:
      plan.lags = {{0}};
      plan.scalar = true;
      plan.left = CMatrix::Identity(1, 1);
      plan.right = CMatrix::Identity(1, 1);
      break;
    case KernelKind::A:
      plan.lags = grid([&](int p, int q) { return row_offset(sym, p) - row_offset(sym, q); });
      plan.left = d;
      plan.right = d.adjoint();
      break;
    case KernelKind::B:
      plan.lags = grid([&](int p, int q) { return col_offset(sym, p) - col_offset(sym, q); });
      plan.left = e.adjoint();
      plan.right = e;
      break;
    case KernelKind::A_eps:
      plan.lags = eps < 0 ? grid([&](int p, int q) { return row_offset(sym, p) - row_offset(sym, q); })
                          : grid([&](int p, int q) { return row_offset(sym, p) + row_offset(sym, q); });
      plan.left = d;
      plan.right = d.transpose();
      break;
    case KernelKind::B_eps:
      plan.lags = eps < 0 ? grid([&](int p, int q) { return col_offset(sym, p) - col_offset(sym, q); })
                          : grid([&](int p, int q) { return -col_offset(sym, p) - col_offset(sym, q); });
      plan.left = e.transpose();
      plan.right = e;
      break;
  }
  return plan;
}

std::function<Complex(Complex)> kernel_weight(const LaurentSymbol& sym, KernelKind which, int eps, Complex z, Complex zp) {
  const bool pseudo = which == KernelKind::theta_eps || which == KernelKind::A_eps || which == KernelKind::B_eps;
  if (!pseudo)
    return [=](Complex w) { return 1.0 / ((z - eval_symbol(sym, w)) * std::conj(zp - eval_symbol(sym, w))); };
  if (eps < 0)
    return [=](Complex w) { return 1.0 / ((z - eval_symbol(sym, w)) * (zp - eval_symbol(sym, std::conj(w)))); };
  return [=](Complex w) { return 1.0 / ((z - eval_symbol(sym, w)) * (zp - eval_symbol(sym, w))); };
}

void check_eps(int eps) {
  if (eps != 1 && eps != -1) throw DomainError("eps must be +1 or -1");
}

}  // namespace

CMatrix kernel_eval(const KernelSet& ks, KernelKind which, Complex z, Complex zp, int eps, double tol) {
  check_eps(eps);
  check_off_curve(symbol_roots(ks.sym, z));
  check_off_curve(symbol_roots(ks.sym, zp));
  const auto plan = plan_kernel(ks.sym, which, eps);
  const CMatrix core = adaptive_lag_sums(kernel_weight(ks.sym, which, eps, z, zp), plan.lags, tol);
  return plan.left * core * plan.right;
}

CMatrix finite_kernel_eval(const LaurentSymbol& sym, int n, KernelKind which, Complex z, Complex zp, int eps) {
  check_eps(eps);
  check_resolvent(sym, n, z);
  check_resolvent(sym, n, zp);
  const auto plan = plan_kernel(sym, which, eps);
  const CMatrix core = lag_sums(sample_circle(kernel_weight(sym, which, eps, z, zp), n), plan.lags);
  return plan.left * core * plan.right;
}

SzegoConstants szego_constants(const LaurentSymbol& sym, Complex z) {
  const auto profile = symbol_roots(sym, z);
  check_off_curve(profile);
  if (profile.inside() != sym.r()) throw DomainError("Szego constants need zero winding");
  const int r = sym.r(), m = sym.band();
  Complex g = sym.coeff(sym.s()) * ((sym.s() % 2 == 0) ? 1.0 : -1.0);
  for (int k = r; k < m; ++k) g *= profile.roots[static_cast<std::size_t>(k)];
  Complex e{1.0, 0.0};
  for (int i = 0; i < r; ++i)
    for (int j = r; j < m; ++j) e /= 1.0 - profile.roots[static_cast<std::size_t>(i)] / profile.roots[static_cast<std::size_t>(j)];
  return {g, e};
}

Complex circulant_det(const LaurentSymbol& sym, Complex z, int n) {
  if (n <= sym.band()) throw SizeError("matrix size must exceed r+s");
  const auto profile = symbol_roots(sym, z);
  const int s = sym.s();
  Complex d = ipow(sym.coeff(s), n) * (((static_cast<long long>(s) * (n - 1)) % 2 == 0) ? 1.0 : -1.0);
  for (const auto& l : profile.roots) d *= 1.0 - ipow(l, n);
  return d;
}

Complex log_det(const CMatrix& a) {
  const Eigen::PartialPivLU<CMatrix> lu(a);
  Complex acc{};
  const CMatrix& u = lu.matrixLU();
  for (Eigen::Index i = 0; i < u.rows(); ++i) acc += std::log(u(i, i));
  if (lu.permutationP().determinant() < 0) acc += Complex{0.0, kPi};
  return acc;
}

Complex det_ratio(const LaurentSymbol& sym, Complex z, int n) {
  const CMatrix rr = restricted_resolvent(sym, n, z);
  return determinant(CMatrix::Identity(rr.rows(), rr.cols()) + rr);
}

Complex det_ratio_lu(const LaurentSymbol& sym, Complex z, int n) {
  const CMatrix id = CMatrix::Identity(n, n);
  return std::exp(log_det(z * id - toeplitz_matrix(sym, n)) - log_det(z * id - circulant_matrix(sym, n)));
}

namespace {

struct Pole {
  Complex at;
  int multiplicity;
};

std::vector<Pole> cluster(const std::vector<Complex>& roots) {
  std::vector<Pole> poles;
  std::vector<int> counts;
  std::vector<Complex> sums;
  for (const auto& x : roots) {
    bool merged = false;
    for (std::size_t i = 0; i < poles.size(); ++i) {
      if (std::abs(poles[i].at - x) < 1e-6 * std::max(1.0, std::abs(x))) {
        sums[i] += x;
        ++counts[i];
        poles[i] = {sums[i] / static_cast<double>(counts[i]), counts[i]};
        merged = true;
        break;
      }
    }
    if (!merged) {
      poles.push_back({x, 1});
      counts.push_back(1);
      sums.push_back(x);
    }
  }
  return poles;
}

std::vector<Complex> trimmed(std::vector<Complex> c) {
  while (c.size() > 1 && c.back() == Complex{}) c.pop_back();
  return c;
}

// Taylor coefficients of P(x0 + t) up to order k.
std::vector<Complex> taylor_shift(std::vector<Complex> a, Complex x0, int k) {
  const auto deg = static_cast<int>(a.size()) - 1;
  for (int i = 0; i < deg; ++i)
    for (int j = deg - 1; j >= i; --j) a[static_cast<std::size_t>(j)] += x0 * a[static_cast<std::size_t>(j + 1)];
  a.resize(static_cast<std::size_t>(std::max(k + 1, deg + 1)), Complex{});
  a.resize(static_cast<std::size_t>(k + 1));
  return a;
}

}  // namespace

RiemannSum riemann_rational(const std::vector<Complex>& p_in, const std::vector<Complex>& q_in, int n) {
  const auto p = trimmed(p_in), q = trimmed(q_in);
  if (q.size() == 1 && q[0] == Complex{}) throw DomainError("Q must be nonzero");
  auto q_roots = poly_roots(q);
  for (const auto& x : q_roots)
    if (std::abs(std::abs(x) - 1.0) < 1e-10) throw DomainError("Q has a root on the unit circle");
  RiemannSum out;
  for (int k = 0; k < n; ++k) {
    const Complex w = unit_root(k, n);
    out.sum += poly_eval(p, w) / poly_eval(q, w);
  }
  out.sum /= static_cast<double>(n);
  // Residues of P / (w Q) inside the disk.
  auto all = q_roots;
  all.emplace_back(0.0, 0.0);
  const auto poles = cluster(all);
  const Complex lead = q.back();
  for (const auto& pole : poles) {
    if (std::abs(pole.at) >= 1.0) continue;
    const int k = pole.multiplicity - 1;
    std::vector<Complex> den(static_cast<std::size_t>(k + 1), Complex{});
    den[0] = lead;
    for (const auto& other : poles) {
      if (&other == &pole) continue;
      for (int rep = 0; rep < other.multiplicity; ++rep) {
        // multiply by (pole - other + t)
        const Complex c0 = pole.at - other.at;
        for (int i = k; i >= 0; --i)
          den[static_cast<std::size_t>(i)] = den[static_cast<std::size_t>(i)] * c0 + (i > 0 ? den[static_cast<std::size_t>(i - 1)] : Complex{});
      }
    }
    const auto num = taylor_shift(p, pole.at, k);
    std::vector<Complex> ser(static_cast<std::size_t>(k + 1));
    for (int i = 0; i <= k; ++i) {
      Complex acc = num[static_cast<std::size_t>(i)];
      for (int j = 1; j <= i; ++j) acc -= den[static_cast<std::size_t>(j)] * ser[static_cast<std::size_t>(i - j)];
      ser[static_cast<std::size_t>(i)] = acc / den[0];
    }
    out.target += ser[static_cast<std::size_t>(k)];
  }
  return out;
}

double riemann_rate(const std::vector<Complex>& q_in, int n) {
  const auto q = trimmed(q_in);
  double worst = 0.0;
  for (const auto& pole : cluster(poly_roots(q))) {
    const double mod_z = std::abs(pole.at);
    if (mod_z == 0.0) continue;
    const double delta = std::min(mod_z, 1.0 / mod_z);
    const double denom = std::min(mod_z, std::pow(mod_z, pole.multiplicity)) * (1.0 - delta);
    worst = std::max(worst, std::pow(static_cast<double>(n), pole.multiplicity - 1) * std::pow(delta, n) / denom);
  }
  return worst;
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
    syy += y[i] * y[i];
  }
  LinearFit f;
  const double vx = sxx - sx * sx / n, vy = syy - sy * sy / n, cxy = sxy - sx * sy / n;
  f.slope = cxy / vx;
  f.intercept = (sy - f.slope * sx) / n;
  f.r2 = vy > 0 ? cxy * cxy / (vx * vy) : 1.0;
  return f;
}

DecayProfile resolvent_decay(const LaurentSymbol& sym, Complex z, int n) {
  check_resolvent(sym, n, z);
  const ResolventCoefficients gamma(sym, z, n);
  DecayProfile d;
  for (int lag = 0; lag <= n / 2; ++lag)
    d.entries.push_back(std::max(std::abs(gamma(lag)), std::abs(gamma(-lag))));
  const double top = *std::max_element(d.entries.begin(), d.entries.end());
  std::vector<double> xs, ys;
  for (int lag = 1; lag <= n / 2; ++lag) {
    const double v = d.entries[static_cast<std::size_t>(lag)];
    if (v > 1e-13 * top) {
      xs.push_back(lag);
      ys.push_back(std::log(v));
    }
  }
  if (xs.size() >= 2) {
    const auto fit = fit_line(xs, ys);
    d.kappa_fit = std::exp(fit.slope);
    d.r2 = fit.r2;
  }
  return d;
}

}  // namespace tpz
