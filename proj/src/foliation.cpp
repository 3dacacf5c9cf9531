#include "nullfoliate/foliation.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace nf {

RationalOver::RationalOver(Poly q) : q_(std::move(q)) {
  if (q_.is_zero()) throw DegenerateSection("zero denominator");
  for (int i = 0; i < q_.nvars(); ++i) dq_.push_back(q_.derivative(i));
}

QRational RationalOver::raise(const QRational& a, int k) const {
  if (a.k == k) return a;
  return {a.num * q_.pow(k - a.k), k};
}

QRational RationalOver::add(const QRational& a, const QRational& b) const {
  if (a.num.is_zero()) return b;
  if (b.num.is_zero()) return a;
  const int k = std::max(a.k, b.k);
  return {raise(a, k).num + raise(b, k).num, k};
}

QRational RationalOver::sub(const QRational& a, const QRational& b) const {
  return add(a, scale(Scalar(-1), b));
}

QRational RationalOver::mul(const QRational& a, const QRational& b) const {
  if (a.num.is_zero() || b.num.is_zero()) return {Poly(nvars()), 0};
  return {a.num * b.num, a.k + b.k};
}

QRational RationalOver::scale(const Scalar& s, QRational a) const {
  a.num *= s;
  if (a.num.is_zero()) a.k = 0;
  return a;
}

// d(N / q^k) = (q dN - k N dq) / q^(k+1)
QRational RationalOver::derivative(const QRational& a, int i) const {
  if (a.k == 0 || dq_[i].is_zero()) return {a.num.derivative(i), a.k};
  Poly n = q_ * a.num.derivative(i) - (Scalar(a.k) * a.num) * dq_[i];
  if (n.is_zero()) return {n, 0};
  return {n, a.k + 1};
}

Poly NullSection::xi_AB(int a, int b) const {
  if (a == b) return Poly(nvars);
  const Poly& p = comps[(1u << a) | (1u << b)];
  return a < b ? p : -p;
}

namespace {

using PolyForm = std::vector<Poly>;

long factorial(int k) {
  long f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Unit-weight wedge of the degree-p part of a and the degree-q part of b.
PolyForm wedge(const PolyForm& a, int p, const PolyForm& b, int q, int dim, int nvars) {
  PolyForm out(std::size_t{1} << dim, Poly(nvars));
  if (p + q > dim) return out;
  const Scalar w = Scalar::rational(factorial(p) * factorial(q), factorial(p + q));
  for (std::uint32_t s : subsets_of_size(dim, p + q)) {
    Poly acc(nvars);
    for (std::uint32_t sub = s;; sub = (sub - 1) & s) {
      if (std::popcount(sub) == p) {
        const std::uint32_t rest = s & ~sub;
        if (!a[sub].is_zero() && !b[rest].is_zero()) {
          if (merge_sign(sub, rest) < 0) acc -= a[sub] * b[rest];
          else acc += a[sub] * b[rest];
        }
      }
      if (sub == 0) break;
    }
    out[s] = w * acc;
  }
  return out;
}

PolyForm degree_part(const PolyForm& a, int k, int nvars) {
  PolyForm out(a.size(), Poly(nvars));
  for (std::size_t s = 0; s < a.size(); ++s)
    if (std::popcount(static_cast<std::uint32_t>(s)) == k) out[s] = a[s];
  return out;
}

// denominator power of the degree-j component of the completion
int completion_power(int j) { return (j + 1) / 2; }

Vec<Scalar> zeros(int n) { return Vec<Scalar>(n); }

}  // namespace

NullSection section_from_chart(int m, Parity parity, const PolyVec& xi_A, const PolyVec& xi_AB, const Poly& q) {
  const bool odd = parity == Parity::odd;
  const int nv = q.nvars();
  const auto pairs = subsets_of_size(m, 2);
  if (xi_AB.size() != pairs.size() || (odd && static_cast<int>(xi_A.size()) != m) || (!odd && !xi_A.empty()))
    throw std::invalid_argument("section component count");
  if (q.is_zero()) throw DegenerateSection("zero denominator");
  const std::size_t size = std::size_t{1} << m;
  PolyForm n1(size, Poly(nv)), n2(size, Poly(nv));
  if (odd)
    for (int a = 0; a < m; ++a) n1[1u << a] = xi_A[a];
  for (std::size_t p = 0; p < pairs.size(); ++p) n2[pairs[p]] = xi_AB[p];
  // numerators of the completion before clearing, per degree
  std::vector<PolyForm> num(m + 1, PolyForm(size, Poly(nv)));
  num[0][0] = Poly(nv, Scalar(1));
  if (m >= 1) num[1] = n1;
  if (m >= 2) num[2] = n2;
  PolyForm even = n2;
  for (int k = 1; 2 * k + 1 <= m; ++k) {
    num[2 * k + 1] = wedge(n1, 1, even, 2 * k, m, nv);
    if (2 * k + 2 <= m) {
      even = wedge(n2, 2, even, 2 * k, m, nv);
      num[2 * k + 2] = even;
    }
  }
  int top = 0;
  for (int j = 0; j <= m; ++j)
    if (odd || j % 2 == 0) top = std::max(top, completion_power(j));
  NullSection s{m, parity, nv, PolyVec(size, Poly(nv))};
  for (int j = 0; j <= m; ++j) {
    if (!odd && j % 2) continue;
    const Poly f = q.pow(top - completion_power(j));
    for (std::size_t mask = 0; mask < size; ++mask)
      if (std::popcount(static_cast<std::uint32_t>(mask)) == j && !num[j][mask].is_zero())
        s.comps[mask] = f * num[j][mask];
  }
  return s;
}

NullSection constant_section(int m, Parity parity, const Vec<Scalar>& pi_A, const Vec<Scalar>& pi_AB) {
  const int nv = parity == Parity::odd ? 2 * m + 1 : 2 * m;
  PolyVec a, ab;
  for (const auto& c : pi_A) a.emplace_back(nv, c);
  for (const auto& c : pi_AB) ab.emplace_back(nv, c);
  return section_from_chart(m, parity, a, ab, Poly(nv, Scalar(1)));
}

bool section_pure(const NullSection& s) {
  const int n = s.m, nv = s.nvars;
  const Poly& z0 = s.comps[0];
  for (int k = 1; 2 * k + 1 <= n; ++k) {
    PolyForm rhs = wedge(s.comps, 1, s.comps, 2 * k, n, nv);
    PolyForm lhs = degree_part(s.comps, 2 * k + 1, nv);
    for (std::size_t i = 0; i < lhs.size(); ++i)
      if (!(z0 * lhs[i] - rhs[i]).is_zero()) return false;
  }
  for (int k = 2; 2 * k <= n; ++k) {
    PolyForm rhs = wedge(s.comps, 2, s.comps, 2 * k - 2, n, nv);
    PolyForm lhs = degree_part(s.comps, 2 * k, nv);
    for (std::size_t i = 0; i < lhs.size(); ++i)
      if (!(z0 * lhs[i] - rhs[i]).is_zero()) return false;
  }
  if (s.parity == Parity::even)
    for (std::size_t mask = 0; mask < s.comps.size(); ++mask)
      if (std::popcount(static_cast<std::uint32_t>(mask)) % 2 && !s.comps[mask].is_zero()) return false;
  return true;
}

namespace {

struct SectionVars {
  const NullSection& s;
  const RationalOver& R;
  int z_up(int a) const { return a; }
  int z_dn(int a) const { return s.m + a; }
  int u() const { return 2 * s.m; }
  QRational xi(int a) const { return R.ratio(s.xi_A(a)); }
  QRational xi2(int a, int b) const { return R.ratio(s.xi_AB(a, b)); }
};

QRational apply_field(const RationalOver& R, const RationalField& v, const QRational& f) {
  QRational out{Poly(R.nvars()), 0};
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].num.is_zero()) out = R.add(out, R.mul(v[i], R.derivative(f, static_cast<int>(i))));
  return out;
}

}  // namespace

NullFrame frame(const NullSection& s, const RationalOver& R) {
  const SectionVars V{s, R};
  const int m = s.m, nv = s.nvars;
  const bool odd = s.parity == Parity::odd;
  const QRational zero{Poly(nv), 0};
  const Scalar h = Scalar::rational(-1, 2);
  NullFrame f;
  for (int a = 0; a < m; ++a) {
    RationalField z(nv, zero);
    z[V.z_dn(a)] = R.constant(Scalar(1));
    for (int d = 0; d < m; ++d) {
      QRational c = V.xi2(a, d);
      if (odd) c = R.add(c, R.scale(h, R.mul(V.xi(a), V.xi(d))));
      z[V.z_up(d)] = c;
    }
    if (odd) z[V.u()] = V.xi(a);
    f.Z.push_back(std::move(z));
  }
  if (odd) {
    f.U = RationalField(nv, zero);
    f.U[V.u()] = R.constant(Scalar(1));
    for (int d = 0; d < m; ++d) f.U[V.z_up(d)] = R.scale(Scalar(-1), V.xi(d));
  }
  return f;
}

NullFrame frame(const NullSection& s) { return frame(s, RationalOver(s.denominator())); }

bool frame_orthogonality_holds(const NullSection& s, const Mat<Scalar>& gram) {
  const RationalOver R(s.denominator());
  const NullFrame f = frame(s, R);
  auto g = [&](const RationalField& x, const RationalField& y) {
    QRational acc{Poly(s.nvars), 0};
    for (int i = 0; i < gram.rows; ++i)
      for (int j = 0; j < gram.cols; ++j)
        if (!gram(i, j).is_zero()) acc = R.add(acc, R.scale(gram(i, j), R.mul(x[i], y[j])));
    return acc;
  };
  for (std::size_t a = 0; a < f.Z.size(); ++a) {
    for (std::size_t b = 0; b < f.Z.size(); ++b)
      if (!g(f.Z[a], f.Z[b]).num.is_zero()) return false;
    if (!f.U.empty() && !g(f.Z[a], f.U).num.is_zero()) return false;
  }
  if (!f.U.empty()) {
    QRational uu = R.sub(g(f.U, f.U), R.constant(Scalar(1)));
    if (!uu.num.is_zero()) return false;
  }
  return true;
}

PdeResiduals pde_residuals(const NullSection& s) {
  const RationalOver R(s.denominator());
  const SectionVars V{s, R};
  const NullFrame f = frame(s, R);
  const int m = s.m;
  const bool odd = s.parity == Parity::odd;
  const auto pairs = subsets_of_size(m, 2);
  auto pair_ab = [](std::uint32_t p) {
    const int b = std::countr_zero(p);
    return std::pair{b, std::countr_zero(p & ~(1u << b))};
  };
  PdeResiduals r;
  auto keep = [](std::vector<Poly>& out, const QRational& x) {
    if (!x.num.is_zero()) out.push_back(x.num);
  };
  for (int a = 0; a < m; ++a) {
    for (std::uint32_t p : pairs) {
      auto [b, c] = pair_ab(p);
      keep(r.geodetic, apply_field(R, f.Z[a], V.xi2(b, c)));
    }
    if (odd)
      for (int b = 0; b < m; ++b) keep(r.geodetic, apply_field(R, f.Z[a], V.xi(b)));
  }
  if (!odd) return r;
  std::vector<QRational> u_xi;
  for (int b = 0; b < m; ++b) {
    u_xi.push_back(apply_field(R, f.U, V.xi(b)));
    keep(r.cogeodetic, u_xi.back());
  }
  const Scalar h = Scalar::rational(1, 2);
  for (std::uint32_t p : pairs) {
    auto [b, c] = pair_ab(p);
    QRational u2 = apply_field(R, f.U, V.xi2(b, c));
    keep(r.cogeodetic, u2);
    QRational corr = R.sub(R.mul(u_xi[b], V.xi(c)), R.mul(u_xi[c], V.xi(b)));
    keep(r.cointegrable, R.add(u2, R.scale(h, corr)));
  }
  return r;
}

bool check_geodetic(const NullSection& s) { return pde_residuals(s).geodetic.empty(); }

bool check_cointegrable(const NullSection& s) {
  PdeResiduals r = pde_residuals(s);
  return r.geodetic.empty() && r.cointegrable.empty();
}

bool check_cogeodetic(const NullSection& s) {
  PdeResiduals r = pde_residuals(s);
  return r.geodetic.empty() && r.cogeodetic.empty();
}

bool check_even_kerr(const NullSection& s) {
  if (s.parity != Parity::even) throw std::invalid_argument("even chart required");
  return check_geodetic(s);
}

ChartPointF section_point(const NullSection& s, const Vec<Scalar>& x) {
  const Scalar q = s.denominator().eval(x);
  if (q.is_zero()) throw DegenerateSection("denominator vanishes at the point");
  const Scalar inv = q.inv();
  const int m = s.m;
  ChartPointF p;
  p.z_up.assign(x.begin(), x.begin() + m);
  p.z_dn.assign(x.begin() + m, x.begin() + 2 * m);
  p.u = s.parity == Parity::odd ? x[2 * m] : Scalar();
  for (int a = 0; a < m; ++a) p.pi_A.push_back(s.parity == Parity::odd ? inv * s.xi_A(a).eval(x) : Scalar());
  for (std::uint32_t pr : subsets_of_size(m, 2)) p.pi_AB.push_back(inv * s.comps[pr].eval(x));
  return p;
}

bool leaf_span_constant(const NullSection& s, const Vec<Scalar>& x, Rng& rng) {
  const RationalOver R(s.denominator());
  const NullFrame f = frame(s, R);
  auto at = [&](const Vec<Scalar>& p) {
    Mat<Scalar> rows(s.m, s.nvars);
    for (int a = 0; a < s.m; ++a)
      for (int i = 0; i < s.nvars; ++i) rows(a, i) = R.eval(f.Z[a][i], p);
    return rows;
  };
  const Mat<Scalar> zx = at(x);
  for (int attempt = 0; attempt < 8; ++attempt) {
    Vec<Scalar> y = x;
    for (int a = 0; a < s.m; ++a) y += rng.integer(3) * zx.row(a);
    if (s.denominator().eval(y).is_zero()) continue;
    const Mat<Scalar> zy = at(y);
    return rank(zx) == s.m && rank(zy) == s.m && rank(vstack(zx, zy)) == s.m;
  }
  throw DegenerateSection("no leaf point off the singular set");
}

namespace {

PolyVec cks_components(const ConformalFrame& fr, const TractorSpinorPair& p) {
  const CksFields f = cks_field(fr, p);
  return nf::apply(vacuum_frame(fr.v0).basis_inv, f.xi);
}

bool proportional(const Vec<Scalar>& a, const Vec<Scalar>& b) {
  return rank(from_rows(std::vector<Vec<Scalar>>{a, b}, static_cast<int>(a.size()))) <= 1;
}

}  // namespace

NullSection robinson_section(const ConformalFrame& fr, const TractorSpinorPair& p) {
  if (!is_pure_rank(fr.tractor, tractor_spinor(p))) throw NotPure();
  NullSection s{fr.m, fr.v0.parity, fr.n(), cks_components(fr, p)};
  if (s.denominator().is_zero()) throw DegenerateSection("xi^0 vanishes identically");
  return s;
}

NullSection even_section(const ConformalFrame& fr, const TractorSpinorPair& p) {
  if (fr.v0.odd()) throw std::invalid_argument("even frame required");
  NullSection s = robinson_section(fr, p);
  for (std::size_t mask = 0; mask < s.comps.size(); ++mask)
    if (std::popcount(static_cast<std::uint32_t>(mask)) % 2 && !s.comps[mask].is_zero())
      throw std::invalid_argument("conformal Killing spinor of the wrong chirality");
  return s;
}

bool RobinsonVariety::holds() const {
  return is_zero(omega_xi) && is_zero(pi_zeta) && is_zero(omega_zeta) && is_zero(pi_xi);
}

RobinsonVariety robinson_variety(const CliffordModel& v0, const OmegaPi& z, const TractorSpinorPair& p) {
  const Vec<Scalar>&w = z.omega, &pi = z.pi, &xi = p.xi0, &ze = p.zeta0;
  const Scalar two(2);
  RobinsonVariety r;
  r.omega_xi = contact_form_eval(v0, w, xi);
  r.pi_zeta = contact_form_eval(v0, pi, ze);
  r.omega_zeta = pair_contraction(v0, w, ze) + outer(w, ze) + two * (outer(pi, xi) - outer(xi, pi));
  r.pi_xi = pair_contraction(v0, pi, xi) + outer(pi, xi) + two * (outer(w, ze) - outer(ze, w));
  return r;
}

RobinsonReport verify_robinson_twistor_variety(const ConformalFrame& fr, const TractorSpinorPair& p,
                                               const std::vector<Vec<Scalar>>& samples, Rng& rng) {
  const NullSection s = robinson_section(fr, p);
  const Vec<Scalar> Xi = tractor_spinor(p);
  const ChartLayout L(fr.m);
  const FockFrame xf = fock_frame(fr.tractor, Xi);
  auto twistor_at = [&](const Vec<Scalar>& x) { return lift_twistor(fr, mu_project(L, section_point(s, x))); };
  RobinsonReport r;
  for (const Vec<Scalar>& x : samples) {
    if (s.denominator().eval(x).is_zero()) {
      ++r.skipped;
      continue;
    }
    const Vec<Scalar> Z = twistor_at(x);
    // Xi itself is excluded: the leaves through it all meet in its gamma-plane
    if (proportional(Z, Xi)) {
      ++r.skipped;
      continue;
    }
    ++r.samples;
    const bool ok = incident(fr, x, Z) && robinson_variety(fr.v0, split(Z), p).holds() &&
                    in_canonical_distribution(fr.tractor, Z, Xi);
    if (ok) ++r.passed;

    // second point on the same N-perp leaf: move along the distinguished curve
    const FockComponents c = fock_decompose(xf, Z);
    if (c.comps[0].is_zero()) continue;
    FockComponents w1{c.dim, FormVec(c.comps.size())};
    w1.comps[0] = Scalar(1);
    bool curve_form = true;
    for (std::size_t mask = 1; mask < c.comps.size(); ++mask) {
      if (std::popcount(static_cast<std::uint32_t>(mask)) == 1) w1.comps[mask] = c.comps[mask] / c.comps[0];
      else if (!c.comps[mask].is_zero()) curve_form = false;
    }
    ++r.leaf_checked;
    if (!curve_form) continue;
    Scalar t;
    do {
      t = rng.rational(4);
    } while (t.is_zero() || t == Scalar(1));
    for (std::size_t mask = 1; mask < w1.comps.size(); ++mask) w1.comps[mask] = t * w1.comps[mask];
    const Vec<Scalar> Zt = fock_reconstruct(xf, w1);
    const Subspace<Scalar> plane = kernel_plane(fr.tractor, Zt);
    bool found = false, leaf_ok = false;
    for (int attempt = 0; attempt < 16 && !found; ++attempt) {
      Vec<Scalar> k(fr.tractor.N);
      for (int i = 0; i < plane.dim(); ++i) k += rng.integer(3) * plane.basis.row(i);
      if (k[0].is_zero()) continue;
      k = k[0].inv() * k;
      Vec<Scalar> y(k.begin() + 1, k.begin() + 1 + fr.n());
      if (s.denominator().eval(y).is_zero()) continue;
      const Vec<Scalar> Zy = twistor_at(y);
      if (proportional(Zy, Xi)) continue;
      found = true;
      leaf_ok = proportional(Zy, Zt) && intersection_dim(fr.tractor, Z, Zy) >= fr.m - 1;
    }
    if (leaf_ok) ++r.leaf_passed;
  }
  return r;
}

TractorSpinorPair random_robinson_pair(const ConformalFrame& fr, Rng& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    const OmegaPi s = split(random_pure_spinor(fr.tractor, rng));
    TractorSpinorPair p{s.omega, s.pi};
    if (is_zero(p.zeta0)) continue;
    if (!cks_components(fr, p)[0].is_zero()) return p;
  }
  throw DegenerateSection("no pure tractor spinor with xi^0 != 0");
}

TractorSpinorPair random_even_pair(const ConformalFrame& fr, Rng& rng) {
  if (fr.v0.odd()) throw std::invalid_argument("even frame required");
  for (int attempt = 0; attempt < 64; ++attempt) {
    // the reflection flips chirality and keeps purity
    const Vec<Scalar> v = random_nonnull_vector(fr.tractor, rng);
    const Vec<Scalar> z = fr.tractor.gamma(v) * random_pure_spinor(fr.tractor, rng);
    const OmegaPi s = split(z);
    TractorSpinorPair p{s.omega, s.pi};
    if (is_zero(p.zeta0)) continue;
    const PolyVec c = cks_components(fr, p);
    bool chiral = !c[0].is_zero();
    for (std::size_t mask = 0; mask < c.size(); ++mask)
      if (std::popcount(static_cast<std::uint32_t>(mask)) % 2 && !c[mask].is_zero()) chiral = false;
    if (chiral) return p;
  }
  throw DegenerateSection("no even pure tractor spinor of the required chirality");
}

namespace {

// T^{S} Gamma^(k)_{S u E}(z, w) over sorted S of size r, one value per extra set E of size k - r.
template <class T>
std::vector<T> contract(const CliffordModel& md, const std::map<std::uint32_t, T>& tensor, int k,
                        const Vec<T>& z, const Vec<T>& w) {
  std::map<std::uint32_t, T> g;
  const auto masks = subsets_of_size(md.N, k);
  const std::vector<T> vals = gamma_k_values(md, k, z, w);
  for (std::size_t i = 0; i < masks.size(); ++i) g.emplace(masks[i], vals[i]);
  const int r = tensor.empty() ? 0 : std::popcount(tensor.begin()->first);
  std::vector<T> out;
  for (std::uint32_t e : subsets_of_size(md.N, k - r)) {
    T acc(0);
    for (const auto& [s, t] : tensor) {
      if (s & e) continue;
      const T v = t * g.at(s | e);
      if (merge_sign(s, e) < 0) acc -= v;
      else acc += v;
    }
    out.push_back(acc);
  }
  return out;
}

// Upper-index components on sorted index sets of an antisymmetric lower tensor.
template <class T>
std::map<std::uint32_t, T> raised(const Mat<Scalar>& gi, const Vec<Scalar>& t, int n, int r) {
  std::map<std::uint32_t, T> out;
  for (std::uint32_t s : subsets_of_size(n, r)) {
    int idx[3], j = 0;
    for (int i = 0; i < n; ++i)
      if (s & (1u << i)) idx[j++] = i;
    // gi is a permutation-like matrix in the Witt basis; contract in full
    Scalar acc;
    if (r == 2) {
      for (int a = 0; a < n; ++a) {
        if (gi(idx[0], a).is_zero()) continue;
        for (int b = 0; b < n; ++b)
          if (!gi(idx[1], b).is_zero()) acc += gi(idx[0], a) * gi(idx[1], b) * t[a * n + b];
      }
    } else {
      for (int a = 0; a < n; ++a) {
        if (gi(idx[0], a).is_zero()) continue;
        for (int b = 0; b < n; ++b) {
          if (gi(idx[1], b).is_zero()) continue;
          for (int c = 0; c < n; ++c)
            if (!gi(idx[2], c).is_zero()) acc += gi(idx[0], a) * gi(idx[1], b) * gi(idx[2], c) * t[(a * n + b) * n + c];
        }
      }
    }
    if (!acc.is_zero()) out.emplace(s, from_scalar<T>(acc));
  }
  return out;
}

template <class T>
double worst(const std::vector<T>& v) {
  double r = 0;
  for (const T& x : v) r = std::max(r, magnitude(x));
  return r;
}

template <class T>
KerrSample kerr_checks(const ConformalFrame& fr, const std::map<std::uint32_t, T>& sigma,
                       const std::map<std::uint32_t, T>& mu, const std::map<std::uint32_t, T>& Sigma,
                       const Vec<T>& x, Vec<T> pi, double tol) {
  const int m = fr.m;
  constexpr bool exact = std::is_same_v<T, Scalar>;
  if constexpr (!exact) {
    double nrm = 0;
    for (const T& e : pi) nrm += std::norm(e);
    pi = T(1.0 / std::sqrt(nrm)) * pi;
  }
  const Vec<T> omega = from_scalar<T>(Scalar::inv_sqrt2()) * (fr.v0.gamma(x) * pi);
  Vec<T> Z = omega;
  Z.insert(Z.end(), pi.begin(), pi.end());
  auto scale = [](const std::map<std::uint32_t, T>& t) {
    double s = 1;
    for (const auto& [k, v] : t) s = std::max(s, magnitude(v));
    return s;
  };
  auto vanish = [&](const std::vector<T>& v, double s, double& res) {
    res = std::max(res, worst(v) / s);
    if constexpr (exact) return worst(v) == 0;
    else return worst(v) <= tol * s;
  };
  KerrSample k;
  k.sigma_graph = vanish(contract(fr.v0, sigma, m + 1, pi, pi), scale(sigma), k.residual);
  k.mu_graph = m < 2 || mu.empty() || vanish(contract(fr.v0, mu, m + 1, pi, pi), scale(mu), k.residual);
  k.tractor = Sigma.empty() || vanish(contract(fr.tractor, Sigma, m + 2, Z, Z), scale(Sigma), k.residual);
  return k;
}

}  // namespace

bool KerrReport::all() const {
  if (samples.empty()) return false;
  return std::all_of(samples.begin(), samples.end(), [](const KerrSample& s) { return s.ok(); });
}

KerrReport kerr_section(const ConformalFrame& fr, const CKYQuadruple& q, int branch,
                        const std::vector<Vec<Scalar>>& points, double tol) {
  const int n = fr.n(), N = fr.tractor.N;
  const CkyFields f = cky_field(fr, q);
  const Vec<Scalar> Sig = eval(assemble_sigma(fr, f), zeros(n));
  std::map<std::uint32_t, Scalar> Se;
  std::map<std::uint32_t, cplx> Sf;
  for (std::uint32_t s : subsets_of_size(N, 3)) {
    int idx[3], j = 0;
    for (int i = 0; i < N; ++i)
      if (s & (1u << i)) idx[j++] = i;
    const Scalar& v = Sig[(idx[0] * N + idx[1]) * N + idx[2]];
    if (v.is_zero()) continue;
    Se.emplace(s, v);
    Sf.emplace(s, v.to_complex());
  }
  const Mat<Scalar>& gi = fr.v0.gram_inv;
  KerrReport r;
  r.branch = branch;
  for (const Vec<Scalar>& x : points) {
    const Vec<Scalar> sx = eval(f.sigma, x), mx = eval(f.mu, x);
    const CkyEigenReport er = cky_eigenspinors(fr.v0, sx);
    if (static_cast<int>(er.branches.size()) != (1 << fr.m)) throw EigenvalueCollision();
    for (const CkyBranch& b : er.branches)
      if (b.multiplicity != 1) throw EigenvalueCollision();
    if (branch < 0 || branch >= static_cast<int>(er.branches.size())) throw std::out_of_range("branch");
    const CkyBranch& b = er.branches[branch];
    r.values.push_back(b.value);
    if (er.exact && b.spinor) {
      r.samples.push_back(kerr_checks<Scalar>(fr, raised<Scalar>(gi, sx, n, 2), raised<Scalar>(gi, mx, n, 3), Se, x,
                                              *b.spinor, tol));
    } else {
      r.exact = false;
      if (!b.spinor_f) throw EigenvalueCollision();
      r.samples.push_back(kerr_checks<cplx>(fr, raised<cplx>(gi, sx, n, 2), raised<cplx>(gi, mx, n, 3), Sf,
                                            to_float(x), *b.spinor_f, tol));
    }
  }
  return r;
}

namespace {

void set2(Vec<Scalar>& t, int n, int a, int b, const Scalar& v) {
  t[a * n + b] = v;
  t[b * n + a] = -v;
}

void set3(Vec<Scalar>& t, int n, int a, int b, int c, const Scalar& v) {
  const int p[6][4] = {{a, b, c, 1}, {b, c, a, 1}, {c, a, b, 1}, {b, a, c, -1}, {a, c, b, -1}, {c, b, a, -1}};
  for (const auto& e : p) t[(e[0] * n + e[1]) * n + e[2]] = e[3] > 0 ? v : -v;
}

}  // namespace

CKYQuadruple curated_kerr_quadruple(const ConformalFrame& fr) {
  if (fr.m != 2 || !fr.v0.odd()) throw std::invalid_argument("curated example is m = 2, odd");
  const int n = fr.n();
  // basis e1 e2 f1 f2 u
  CKYQuadruple q{n, Vec<Scalar>(n * n), Vec<Scalar>(n * n * n), Vec<Scalar>(n), Vec<Scalar>(n * n)};
  set2(q.sigma0, n, 0, 2, Scalar(1));
  set2(q.sigma0, n, 1, 3, Scalar(3));
  q.phi0[2] = Scalar(1);
  q.phi0[3] = Scalar(2);
  set3(q.mu0, n, 2, 3, 4, Scalar(1));
  set2(q.rho0, n, 2, 3, Scalar(1));
  return q;
}

std::vector<Vec<Scalar>> curated_kerr_points(const ConformalFrame& fr, Rng& rng, int count) {
  std::vector<Vec<Scalar>> pts;
  const int m = fr.m;
  for (int i = 0; i < count; ++i) {
    Vec<Scalar> x(fr.n());
    for (int a = 0; a < m; ++a) x[a] = rng.rational(3);
    x[2 * m] = rng.rational(3);
    pts.push_back(x);
  }
  return pts;
}

std::vector<Vec<Scalar>> generic_kerr_points(const ConformalFrame& fr, const CKYQuadruple& q, Rng& rng, int count) {
  const CkyFields f = cky_field(fr, q);
  std::vector<Vec<Scalar>> pts;
  for (int attempt = 0; attempt < 50 * count && static_cast<int>(pts.size()) < count; ++attempt) {
    Vec<Scalar> x(fr.n());
    for (auto& e : x) e = rng.rational(3);
    const CkyEigenReport er = cky_eigenspinors(fr.v0, eval(f.sigma, x));
    const bool simple = static_cast<int>(er.branches.size()) == (1 << fr.m) &&
                        std::all_of(er.branches.begin(), er.branches.end(), [](const CkyBranch& b) {
                          return b.multiplicity == 1 && (b.spinor || b.spinor_f);
                        });
    if (simple) pts.push_back(x);
  }
  if (static_cast<int>(pts.size()) < count) throw EigenvalueCollision();
  return pts;
}

CKYQuadruple random_closed_cky(const ConformalFrame& fr, Rng& rng, long bound) {
  const int n = fr.n();
  CKYQuadruple q{n, Vec<Scalar>(n * n), Vec<Scalar>(n * n * n), rng.integer_vec(n, bound), Vec<Scalar>(n * n)};
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) set2(q.sigma0, n, a, b, rng.integer(bound));
  return q;
}

}  // namespace nf
