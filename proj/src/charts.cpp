#include "nullfoliate/charts.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <tuple>

#include <Eigen/Eigenvalues>

namespace nf {

ChartLayout::ChartLayout(int m_) : m(m_), pairs(subsets_of_size(m_, 2)) {}

int ChartLayout::pair_index(int a, int b) const {
  const std::uint32_t mask = (1u << a) | (1u << b);
  auto it = std::find(pairs.begin(), pairs.end(), mask);
  if (a >= b || it == pairs.end()) throw std::out_of_range("pair index");
  return static_cast<int>(it - pairs.begin());
}

namespace {

Scalar antisym(const ChartLayout& L, const Vec<Scalar>& pi_ab, int a, int b) {
  if (a == b) return Scalar();
  return a < b ? pi_ab[L.pair_index(a, b)] : -pi_ab[L.pair_index(b, a)];
}

const Scalar& half() {
  static const Scalar h = Scalar::rational(1, 2);
  return h;
}

}  // namespace

ChartPointF random_chart_point(const ChartLayout& L, Rng& rng, long bound) {
  ChartPointF p;
  p.z_up = rng.integer_vec(L.m, bound);
  p.z_dn = rng.integer_vec(L.m, bound);
  p.u = rng.rational(bound);
  p.pi_A = Vec<Scalar>(L.m);
  for (auto& e : p.pi_A) e = rng.rational(bound);
  p.pi_AB = rng.gaussian_vec(static_cast<int>(L.pairs.size()), bound);
  return p;
}

Vec<Scalar> chart_x(const ChartPointF& p) {
  Vec<Scalar> x = p.z_up;
  x.insert(x.end(), p.z_dn.begin(), p.z_dn.end());
  x.push_back(p.u);
  return x;
}

Vec<Scalar> pi_spinor_from_chart(const CliffordModel& v0, const Vec<Scalar>& pi_A, const Vec<Scalar>& pi_AB) {
  const int m = v0.m;
  const std::size_t size = std::size_t{1} << m;
  FormVec z1(size), z2(size);
  for (int a = 0; a < m; ++a) z1[1u << a] = pi_A[a];
  auto pairs = subsets_of_size(m, 2);
  for (std::size_t p = 0; p < pairs.size(); ++p) z2[pairs[p]] = pi_AB[p];
  return fock_reconstruct(vacuum_frame(v0), complete_pure(m, z1, z2));
}

Vec<Scalar> pi_spinor_exp(const CliffordModel& v0, const Vec<Scalar>& pi_A, const Vec<Scalar>& pi_AB) {
  const int m = v0.m, d = v0.spinor_dim;
  // sum over ordered pairs of -1/4 pi^{ab} gamma_ab = -1/2 sum over a < b
  Mat<Scalar> x(d, d);
  const Scalar c = Scalar::rational(-1, 2);
  auto pairs = subsets_of_size(m, 2);
  for (std::size_t p = 0; p < pairs.size(); ++p)
    if (!pi_AB[p].is_zero()) x += (c * pi_AB[p]) * v0.product<Scalar>(pairs[p]);
  for (int a = 0; a < m; ++a)
    if (!pi_A[a].is_zero()) x += (c * pi_A[a]) * v0.product<Scalar>((1u << a) | (1u << (2 * m)));
  Vec<Scalar> term = v0_vacuum(v0), out = term;
  for (int k = 1; k <= d && !is_zero(term); ++k) {
    term = Scalar::rational(1, k) * (x * term);
    out += term;
  }
  return out;
}

ChartPointPT mu_project(const ChartLayout& L, const ChartPointF& p) {
  ChartPointPT q;
  q.pi_A = p.pi_A;
  q.pi_AB = p.pi_AB;
  q.omega_0 = p.u;
  q.omega_A = Vec<Scalar>(L.m);
  for (int a = 0; a < L.m; ++a) {
    q.omega_0 -= p.pi_A[a] * p.z_dn[a];
    Scalar w = p.z_up[a] + half() * p.pi_A[a] * p.u;
    for (int b = 0; b < L.m; ++b) w += antisym(L, p.pi_AB, a, b) * p.z_dn[b];
    q.omega_A[a] = w;
  }
  return q;
}

MiniTwistorPoint tau_project(const ChartPointPT& p) {
  MiniTwistorPoint t{p.omega_A, p.pi_A, p.pi_AB};
  for (std::size_t a = 0; a < p.omega_A.size(); ++a) t.omega_bar_A[a] += half() * p.pi_A[a] * p.omega_0;
  return t;
}

ChartPointPT y_flow(const ChartPointPT& p, const Scalar& t) {
  ChartPointPT q = p;
  q.omega_0 += t;
  for (std::size_t a = 0; a < q.omega_A.size(); ++a) q.omega_A[a] -= half() * p.pi_A[a] * t;
  return q;
}

Vec<Scalar> lift_twistor(const ConformalFrame& fr, const ChartPointPT& p) {
  const int m = fr.m;
  Vec<Scalar> pi = pi_spinor_from_chart(fr.v0, p.pi_A, p.pi_AB);
  Vec<Scalar> w(fr.v0.N);
  for (int a = 0; a < m; ++a) w[a] = p.omega_A[a] - half() * p.omega_0 * p.pi_A[a];
  w[2 * m] = p.omega_0;
  Vec<Scalar> omega = Scalar::inv_sqrt2() * (fr.v0.gamma(w) * pi);
  return join({omega, pi});
}

ChartPointPT read_chart(const ConformalFrame& fr, const Vec<Scalar>& z) {
  const int m = fr.m;
  OmegaPi s = split(z);
  if (s.pi[0].is_zero()) throw std::domain_error("pi^0 = 0: outside the dense chart");
  const Scalar inv = s.pi[0].inv();
  s.omega = inv * s.omega;
  s.pi = inv * s.pi;
  FockComponents c = fock_decompose(vacuum_frame(fr.v0), s.pi);
  ChartLayout L(m);
  ChartPointPT q;
  for (int a = 0; a < m; ++a) q.pi_A.push_back(c.comps[1u << a]);
  for (std::uint32_t p : L.pairs) q.pi_AB.push_back(c.comps[p]);
  q.omega_0 = Scalar::sqrt2() * s.omega[0] / Scalar::i();
  for (int a = 0; a < m; ++a) q.omega_A.push_back(Scalar::sqrt2() * s.omega[fock_index(m, 1u << a)]);
  return q;
}

bool incident(const ConformalFrame& fr, const Vec<Scalar>& x, const Vec<Scalar>& z) {
  return is_zero(fr.tractor.gamma(embed_point(fr, x)) * z);
}

namespace {

struct Vars {
  int n;
  Poly v(int i) const { return Poly::var(n, i); }
  Poly c(const Scalar& s) const { return Poly(n, s); }
  PolyVec zero() const { return PolyVec(n, Poly(n)); }
};

// pi^{AB} as an antisymmetric polynomial tensor, given the variable offset function.
template <class Idx>
Poly pi2_poly(const ChartLayout& L, const Vars& V, Idx idx, int a, int b) {
  if (a == b) return V.c(Scalar());
  return a < b ? V.v(idx(L.pair_index(a, b))) : -V.v(idx(L.pair_index(b, a)));
}

// add coef * d/dpi^{AB} (unit weight) to a field
template <class Idx>
void add_pi2_derivative(const ChartLayout& L, PolyVec& field, Idx idx, int a, int b, const Poly& coef) {
  if (a == b) return;
  const Scalar h = a < b ? half() : -half();
  field[idx(a < b ? L.pair_index(a, b) : L.pair_index(b, a))] += h * coef;
}

}  // namespace

FFrames chart_frames(const ChartLayout& L) {
  const int m = L.m;
  const Vars V{L.nF()};
  auto p2 = [&](int p) { return L.pi2(p); };
  auto pi2 = [&](int a, int b) { return pi2_poly(L, V, p2, a, b); };
  FFrames f;
  f.U = V.zero();
  f.U[L.u()] = V.c(1);
  f.theta0 = V.zero();
  f.theta0[L.u()] = V.c(1);
  for (int a = 0; a < m; ++a) {
    PolyVec d = V.zero();
    d[L.z_up(a)] = V.c(1);
    f.d_up.push_back(d);
    f.U[L.z_up(a)] = -V.v(L.pi(a));
    f.theta0[L.z_dn(a)] = -V.v(L.pi(a));

    PolyVec z = V.zero(), th = V.zero();
    z[L.z_dn(a)] = V.c(1);
    th[L.z_up(a)] = V.c(1);
    for (int b = 0; b < m; ++b) {
      Poly q = pi2(a, b) - half() * (V.v(L.pi(a)) * V.v(L.pi(b)));
      z[L.z_up(b)] += q;
      th[L.z_dn(b)] += q;
    }
    z[L.u()] = V.v(L.pi(a));
    th[L.u()] = V.v(L.pi(a));
    f.Z.push_back(z);
    f.theta.push_back(th);

    PolyVec w = V.zero();
    w[L.pi(a)] = V.c(1);
    for (int b = 0; b < m; ++b) add_pi2_derivative(L, w, p2, a, b, -V.v(L.pi(b)));
    f.W.push_back(w);

    PolyVec dz = V.zero(), dp = V.zero();
    dz[L.z_dn(a)] = V.c(1);
    dp[L.pi(a)] = V.c(1);
    f.dz_dn.push_back(dz);
    f.dpi.push_back(dp);
  }
  for (std::size_t p = 0; p < L.pairs.size(); ++p) {
    const int a = std::countr_zero(L.pairs[p]), b = 31 - std::countl_zero(L.pairs[p]);
    PolyVec x = V.zero(), al = V.zero();
    x[L.pi2(static_cast<int>(p))] = V.c(half());
    al[L.pi2(static_cast<int>(p))] = V.c(1);
    al[L.pi(b)] -= half() * V.v(L.pi(a));
    al[L.pi(a)] += half() * V.v(L.pi(b));
    f.X2.push_back(x);
    f.alpha2.push_back(al);
  }
  return f;
}

PTFrames pt_frames(const ChartLayout& L) {
  const int m = L.m;
  const Vars V{L.nPT()};
  auto p2 = [&](int p) { return L.pt_pi2(p); };
  PTFrames f;
  f.Y = V.zero();
  f.Y[L.w0()] = V.c(1);
  for (int a = 0; a < m; ++a) {
    f.Y[L.w(a)] = -half() * V.v(L.pt_pi(a));
    PolyVec x = V.zero();
    x[L.w(a)] = V.c(1);
    f.X.push_back(x);

    PolyVec ya = V.zero();
    ya[L.pt_pi(a)] = V.c(1);
    for (int b = 0; b < m; ++b) add_pi2_derivative(L, ya, p2, a, b, -V.v(L.pt_pi(b)));
    ya[L.w(a)] = half() * V.v(L.w0());
    f.Y_A.push_back(ya);

    PolyVec al = V.zero();
    al[L.w(a)] = V.c(1);
    al[L.w0()] = half() * V.v(L.pt_pi(a));
    al[L.pt_pi(a)] = -half() * V.v(L.w0());
    f.alpha.push_back(al);
  }
  for (std::size_t p = 0; p < L.pairs.size(); ++p) {
    const int a = std::countr_zero(L.pairs[p]), b = 31 - std::countl_zero(L.pairs[p]);
    PolyVec x = V.zero(), al = V.zero();
    x[L.pt_pi2(static_cast<int>(p))] = V.c(half());
    al[L.pt_pi2(static_cast<int>(p))] = V.c(1);
    al[L.pt_pi(b)] -= half() * V.v(L.pt_pi(a));
    al[L.pt_pi(a)] += half() * V.v(L.pt_pi(b));
    f.X2.push_back(x);
    f.alpha2.push_back(al);
  }
  return f;
}

PolyVec mu_map(const ChartLayout& L) {
  const int m = L.m;
  const Vars V{L.nF()};
  auto p2 = [&](int p) { return L.pi2(p); };
  PolyVec out(L.nPT(), Poly(V.n));
  out[L.w0()] = V.v(L.u());
  for (int a = 0; a < m; ++a) {
    out[L.w0()] -= V.v(L.pi(a)) * V.v(L.z_dn(a));
    Poly w = V.v(L.z_up(a)) + half() * (V.v(L.pi(a)) * V.v(L.u()));
    for (int b = 0; b < m; ++b) w += pi2_poly(L, V, p2, a, b) * V.v(L.z_dn(b));
    out[L.w(a)] = w;
    out[L.pt_pi(a)] = V.v(L.pi(a));
  }
  for (std::size_t p = 0; p < L.pairs.size(); ++p) out[L.pt_pi2(static_cast<int>(p))] = V.v(L.pi2(static_cast<int>(p)));
  return out;
}

PolyVec omega_bar_pt(const ChartLayout& L) {
  const Vars V{L.nPT()};
  PolyVec out;
  for (int a = 0; a < L.m; ++a) out.push_back(V.v(L.w(a)) + half() * (V.v(L.pt_pi(a)) * V.v(L.w0())));
  return out;
}

Poly apply_field(const PolyVec& field, const Poly& f) {
  Poly out(f.nvars());
  for (std::size_t i = 0; i < field.size(); ++i)
    if (!field[i].is_zero()) out += field[i] * f.derivative(static_cast<int>(i));
  return out;
}

Poly pairing(const PolyVec& form, const PolyVec& field) {
  Poly out;
  for (std::size_t i = 0; i < form.size(); ++i)
    if (!form[i].is_zero() && !field[i].is_zero()) out += form[i] * field[i];
  return out;
}

PolyVec pullback(const PolyVec& form, const PolyVec& map, int source_vars) {
  PolyVec out(source_vars, Poly(source_vars));
  for (std::size_t j = 0; j < form.size(); ++j) {
    if (form[j].is_zero()) continue;
    Poly c = form[j].compose(map);
    for (int i = 0; i < source_vars; ++i) {
      Poly d = map[j].derivative(i);
      if (!d.is_zero()) out[i] += c * d;
    }
  }
  return out;
}

Mat<Scalar> frame_pairings(const FFrames& f, const Vec<Scalar>& point) {
  std::vector<const PolyVec*> forms, fields;
  for (const auto& v : f.dz_dn) forms.push_back(&v);
  for (const auto& v : f.dpi) forms.push_back(&v);
  forms.push_back(&f.theta0);
  for (const auto& v : f.alpha2) forms.push_back(&v);
  for (const auto& v : f.theta) forms.push_back(&v);
  for (const auto& v : f.Z) fields.push_back(&v);
  for (const auto& v : f.W) fields.push_back(&v);
  fields.push_back(&f.U);
  for (const auto& v : f.X2) fields.push_back(&v);
  for (const auto& v : f.d_up) fields.push_back(&v);
  const int n = static_cast<int>(forms.size());
  Mat<Scalar> out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = pairing(*forms[i], *fields[j]).eval(point);
  return out;
}

std::vector<PolyVec> pullback_residual(const ChartLayout& L) {
  const FFrames ff = chart_frames(L);
  const PTFrames pf = pt_frames(L);
  const PolyVec mu = mu_map(L);
  const int n = L.nF();
  std::vector<PolyVec> out;
  for (int a = 0; a < L.m; ++a) {
    PolyVec r = pullback(pf.alpha[a], mu, n);
    r -= ff.theta[a];
    for (int b = 0; b < L.m; ++b) {
      if (a == b) continue;
      const PolyVec& al = ff.alpha2[a < b ? L.pair_index(a, b) : L.pair_index(b, a)];
      const Poly zb = Poly::var(n, L.z_dn(b));
      for (int i = 0; i < n; ++i) {
        if (al[i].is_zero()) continue;
        if (a < b) r[i] -= al[i] * zb;
        else r[i] += al[i] * zb;
      }
    }
    out.push_back(r);
  }
  return out;
}

std::vector<Scalar> char_poly(const Mat<Scalar>& a) {
  const int n = a.rows;
  std::vector<Scalar> c(n + 1);
  c[n] = Scalar(1);
  Mat<Scalar> m(n, n);
  const Mat<Scalar> id = Mat<Scalar>::identity(n);
  for (int k = 1; k <= n; ++k) {
    m = a * m + c[n - k + 1] * id;
    Mat<Scalar> am = a * m;
    Scalar tr;
    for (int i = 0; i < n; ++i) tr += am(i, i);
    c[n - k] = -tr / Scalar(k);
  }
  return c;
}

namespace {

// Multiplicity of lambda as a root, by repeated synthetic division.
int root_multiplicity(std::vector<Scalar> c, const Scalar& lambda) {
  int mult = 0;
  while (c.size() > 1) {
    const int n = static_cast<int>(c.size()) - 1;
    std::vector<Scalar> q(n);
    Scalar acc = c[n];
    for (int k = n - 1; k >= 0; --k) {
      q[k] = acc;
      acc = c[k] + lambda * acc;
    }
    if (!acc.is_zero()) break;
    ++mult;
    c = q;
  }
  return mult;
}

bool lex_less(cplx a, cplx b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); }

// Distinct exact roots when they are all reachable: even polynomials of
// degree <= 4 in t^2 after removing powers of t^2.
std::optional<std::vector<Scalar>> exact_roots(const std::vector<Scalar>& c) {
  const int n = static_cast<int>(c.size()) - 1;
  for (int k = 1; k <= n; k += 2)
    if (!c[k].is_zero()) return std::nullopt;
  std::vector<Scalar> q;
  for (int k = 0; k <= n; k += 2) q.push_back(c[k]);
  std::vector<Scalar> roots;
  std::size_t lead = 0;
  while (lead + 1 < q.size() && q[lead].is_zero()) ++lead;
  if (lead > 0) roots.push_back(Scalar());
  q.erase(q.begin(), q.begin() + static_cast<long>(lead));
  std::vector<Scalar> s_roots;
  try {
    if (q.size() == 2) {
      s_roots.push_back(-q[0] / q[1]);
    } else if (q.size() == 3) {
      Scalar disc = q[1] * q[1] - Scalar(4) * q[0] * q[2];
      Scalar r = sqrt(disc), den = (Scalar(2) * q[2]).inv();
      s_roots.push_back((-q[1] + r) * den);
      if (!r.is_zero()) s_roots.push_back((-q[1] - r) * den);
    } else if (q.size() > 3) {
      return std::nullopt;
    }
    for (const Scalar& s : s_roots) {
      Scalar t = sqrt(s);
      roots.push_back(t);
      if (!t.is_zero()) roots.push_back(-t);
    }
  } catch (const IrrationalOutsideField&) {
    return std::nullopt;
  }
  std::sort(roots.begin(), roots.end(), [](const Scalar& a, const Scalar& b) { return compare(a, b) < 0; });
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

Mat<Scalar> shifted(const Mat<Scalar>& a, const Scalar& lambda) {
  Mat<Scalar> m = a;
  for (int i = 0; i < a.rows; ++i) m(i, i) -= lambda;
  return m;
}

Mat<cplx> shifted(const Mat<cplx>& a, cplx lambda) {
  Mat<cplx> m = a;
  for (int i = 0; i < a.rows; ++i) m(i, i) -= lambda;
  return m;
}

constexpr double kEigenTol = 1e-7;

}  // namespace

EigenReport float_eigen(const Mat<cplx>& a, double gap) {
  const int n = a.rows;
  Eigen::MatrixXcd e(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) e(i, j) = a(i, j);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(e, false);
  std::vector<cplx> vals(solver.eigenvalues().begin(), solver.eigenvalues().end());
  std::sort(vals.begin(), vals.end(), lex_less);
  EigenReport r;
  std::vector<bool> used(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (used[i]) continue;
    EigenBranch b;
    cplx sum = 0;
    for (std::size_t j = i; j < vals.size(); ++j)
      if (!used[j] && std::abs(vals[j] - vals[i]) < gap) {
        used[j] = true;
        sum += vals[j];
        ++b.algebraic;
      }
    b.value = sum / static_cast<double>(b.algebraic);
    b.geometric = kernel(shifted(a, b.value), kEigenTol).dim();
    r.branches.push_back(b);
  }
  std::sort(r.branches.begin(), r.branches.end(), [](const auto& x, const auto& y) { return lex_less(x.value, y.value); });
  return r;
}

EigenReport spin_endo_eigen(const CliffordModel& v0, const Vec<Scalar>& v) {
  const Mat<Scalar> m = v0.gamma(v);
  const Scalar s = bilinear(v, v0.gram, v);
  if (!has_sqrt(s)) return float_eigen(to_float(m));
  EigenReport r;
  r.exact = true;
  const std::vector<Scalar> c = char_poly(m);
  std::vector<Scalar> roots;
  if (s.is_zero()) {
    roots.push_back(Scalar());
  } else {
    Scalar l = Scalar::i() * sqrt(s);
    roots = {l, -l};
    std::sort(roots.begin(), roots.end(), [](const Scalar& a, const Scalar& b) { return compare(a, b) < 0; });
  }
  for (const Scalar& l : roots) {
    EigenBranch b;
    b.value = l.to_complex();
    b.exact = l;
    b.algebraic = root_multiplicity(c, l);
    b.geometric = kernel(shifted(m, l)).dim();
    r.branches.push_back(b);
  }
  return r;
}

namespace {

template <class T>
std::pair<int, int> pure_locus_bounds(const CliffordModel& v0, const Mat<T>& endo, const T& lambda,
                                      const Vec<T>& z, const Vec<T>& v, double tol) {
  const int d = v0.spinor_dim, n = v0.N;
  Subspace<T> eig = kernel(shifted(endo, lambda), tol);
  std::vector<Vec<T>> tangent{z}, orbit{z};
  for (std::uint32_t s : subsets_of_size(n, 2)) tangent.push_back(v0.product<T>(s) * z);
  Mat<T> hv(1, n);
  Vec<T> gv = v0.metric<T>() * v;
  for (int a = 0; a < n; ++a) hv(0, a) = gv[a];
  Subspace<T> perp = kernel(hv, tol);
  std::vector<Mat<T>> gp;
  for (int i = 0; i < perp.dim(); ++i) gp.push_back(v0.gamma(perp.basis.row(i)));
  for (std::size_t i = 0; i < gp.size(); ++i)
    for (std::size_t j = i + 1; j < gp.size(); ++j) orbit.push_back((gp[i] * gp[j] - gp[j] * gp[i]) * z);
  auto rows = [&](const std::vector<Vec<T>>& vs) { return transpose(from_columns(vs, d)); };
  const int lower = span(rows(orbit), tol).dim() - 1;
  const int upper = intersect(span(rows(tangent), tol), eig, tol).dim() - 1;
  return {lower, upper};
}

template <class T>
Vec<T> basis_spinor(const CliffordModel& v0, std::uint32_t mask) {
  Vec<T> e(v0.spinor_dim);
  e[fock_index(v0.m, mask)] = T(1);
  return e;
}

}  // namespace

ZeroSetReport normal_section_zeros(const CliffordModel& v0, const Vec<Scalar>& v) {
  if (!v0.odd() || v0.tag != BasisTag::witt) throw std::invalid_argument("normal sections need the odd V0 model");
  const int m = v0.m;
  ZeroSetReport r;
  const Scalar s = bilinear(v, v0.gram, v);
  r.null = s.is_zero();
  EigenReport eig = spin_endo_eigen(v0, v);
  r.exact = eig.exact;
  if (m == 1) {
    Mat<Scalar> q = v0.gamma0 * v0.gamma(v);
    Scalar b = half() * (q(0, 1) + q(1, 0));
    r.discriminant = Scalar(4) * (b * b - q(0, 0) * q(1, 1));
  }
  // pure eigenspinors: gamma(V) delta_S for null V; reflections of delta_S
  // taking u to the direction of V otherwise
  std::vector<Vec<Scalar>> zs;
  std::vector<Vec<cplx>> zf;
  Vec<Scalar> uvec(v0.N);
  uvec[2 * m] = Scalar(1);
  if (r.null) {
    const Mat<Scalar> g = v0.gamma(v);
    for (std::uint32_t mask : fock_basis(m)) {
      Vec<Scalar> z = g * basis_spinor<Scalar>(v0, mask);
      if (!is_zero(z)) {
        zs.push_back(z);
        break;
      }
    }
  } else if (r.exact) {
    const Vec<Scalar> rv = sqrt(s).inv() * v;
    Vec<Scalar> w = uvec - rv;
    if (bilinear(w, v0.gram, w).is_zero()) w = uvec + rv;
    const Mat<Scalar> g = v0.gamma(w);
    zs.push_back(g * basis_spinor<Scalar>(v0, 0));
    zs.push_back(g * basis_spinor<Scalar>(v0, 1));
  } else {
    const Vec<cplx> vf = to_float(v);
    const Vec<cplx> rv = (1.0 / std::sqrt(s.to_complex())) * vf;
    Vec<cplx> w = to_float(uvec) - rv;
    if (std::abs(bilinear(w, v0.metric<cplx>(), w)) < 1e-6) w = to_float(uvec) + rv;
    const Mat<cplx> g = v0.gamma(w);
    zf.push_back(g * basis_spinor<cplx>(v0, 0));
    zf.push_back(g * basis_spinor<cplx>(v0, 1));
  }
  for (const EigenBranch& b : eig.branches) {
    ZeroBranch zb;
    zb.value = b.value;
    zb.multiplicity = b.algebraic;
    if (r.exact) {
      const Mat<Scalar> endo = v0.gamma(v);
      for (const auto& z : zs)
        if (is_zero(endo * z - *b.exact * z)) {
          std::tie(zb.lower, zb.upper) = pure_locus_bounds(v0, endo, *b.exact, z, v, 0);
          break;
        }
    } else {
      const Mat<cplx> endo = v0.gamma(to_float(v));
      for (const auto& z : zf)
        if (is_zero(endo * z - b.value * z, 1e-8)) {
          std::tie(zb.lower, zb.upper) = pure_locus_bounds(v0, endo, b.value, z, to_float(v), kEigenTol);
          break;
        }
    }
    r.branches.push_back(zb);
  }
  return r;
}

Mat<Scalar> cky_endomorphism(const CliffordModel& v0, const Vec<Scalar>& sigma) {
  const int n = v0.N, d = v0.spinor_dim;
  Mat<Scalar> s(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) s(a, b) = sigma[a * n + b];
  const Mat<Scalar> up = v0.gram_inv * s * v0.gram_inv;
  Mat<Scalar> out(d, d);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (!up(a, b).is_zero()) out += up(a, b) * (v0.gens[b] * v0.gens[a]);
  return out;
}

CkyEigenReport cky_eigenspinors(const CliffordModel& v0, const Mat<cplx>& endo) {
  CkyEigenReport r;
  for (const EigenBranch& b : float_eigen(endo).branches) {
    CkyBranch cb;
    cb.value = b.value;
    cb.multiplicity = b.algebraic;
    Subspace<cplx> k = kernel(shifted(endo, b.value), kEigenTol);
    if (k.dim() == 1) {
      cb.spinor_f = k.basis.row(0);
      cb.pure = is_pure_rank(v0, *cb.spinor_f, 1e-6);
    }
    r.branches.push_back(cb);
  }
  return r;
}

CkyEigenReport cky_eigenspinors(const CliffordModel& v0, const Vec<Scalar>& sigma) {
  const Mat<Scalar> endo = cky_endomorphism(v0, sigma);
  const std::vector<Scalar> c = char_poly(endo);
  auto roots = exact_roots(c);
  if (!roots) return cky_eigenspinors(v0, to_float(endo));
  CkyEigenReport r;
  r.exact = true;
  for (const Scalar& l : *roots) {
    CkyBranch cb;
    cb.value = l.to_complex();
    cb.exact = l;
    cb.multiplicity = root_multiplicity(c, l);
    Subspace<Scalar> k = kernel(shifted(endo, l));
    if (k.dim() == 1) {
      cb.spinor = k.basis.row(0);
      cb.pure = is_pure_rank(v0, *cb.spinor);
    }
    r.branches.push_back(cb);
  }
  return r;
}

}  // namespace nf
