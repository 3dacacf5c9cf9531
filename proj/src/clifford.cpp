#include "nullfoliate/clifford.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <stdexcept>

namespace nf {

struct ModelCache {
  std::once_flag exact_once, float_once;
  std::vector<Mat<Scalar>> w;
  std::vector<Mat<cplx>> wf, gens_f;
  Mat<cplx> c0_f, gram_f, gram_inv_f;
};

int popcount(std::uint32_t x) { return std::popcount(x); }

std::vector<std::uint32_t> fock_basis(int m) {
  std::vector<std::uint32_t> out;
  for (int p = 0; p <= m; ++p) {
    auto s = subsets_of_size(m, p);
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

int fock_index(int m, std::uint32_t mask) {
  static thread_local std::map<int, std::map<std::uint32_t, int>> memo;
  auto& idx = memo[m];
  if (idx.empty()) {
    auto b = fock_basis(m);
    for (int i = 0; i < static_cast<int>(b.size()); ++i) idx[b[i]] = i;
  }
  return idx.at(mask);
}

// Lexicographic order on strictly increasing tuples.
std::vector<std::uint32_t> subsets_of_size(int n, int k) {
  std::vector<std::uint32_t> out;
  std::vector<int> c(k);
  for (int i = 0; i < k; ++i) c[i] = i;
  if (k > n) return out;
  while (true) {
    std::uint32_t mask = 0;
    for (int v : c) mask |= 1u << v;
    out.push_back(mask);
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

int merge_sign(std::uint32_t s, std::uint32_t t) {
  if (s & t) return 0;
  // inversions: pairs (a in s, b in t) with a > b
  int inv = 0;
  for (std::uint32_t x = s; x; x &= x - 1) {
    int a = std::countr_zero(x);
    inv += std::popcount(t & ((1u << a) - 1));
  }
  return inv % 2 ? -1 : 1;
}

template <class T>
std::vector<Mat<T>> subset_products(const std::vector<Mat<T>>& g) {
  const int n = static_cast<int>(g.size());
  const int d = n ? g[0].rows : 0;
  std::vector<Mat<T>> w(std::size_t{1} << n);
  w[0] = Mat<T>::identity(d);
  const T half = from_scalar<T>(Scalar::rational(1, 2));
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    int a = std::countr_zero(mask);
    std::uint32_t r = mask & (mask - 1);
    const Mat<T>& wr = w[r];
    Mat<T> sum = wr * g[a];
    Mat<T> other = g[a] * wr;
    if (std::popcount(r) % 2) sum -= other;
    else sum += other;
    w[mask] = half * sum;
  }
  return w;
}

template std::vector<Mat<Scalar>> subset_products(const std::vector<Mat<Scalar>>&);
template std::vector<Mat<cplx>> subset_products(const std::vector<Mat<cplx>>&);

namespace {

void fill_exact(const CliffordModel& md) {
  std::call_once(md.cache->exact_once, [&] { md.cache->w = subset_products(md.gens); });
}

void fill_float(const CliffordModel& md) {
  fill_exact(md);
  std::call_once(md.cache->float_once, [&] {
    auto& c = *md.cache;
    for (const auto& g : md.gens) c.gens_f.push_back(to_float(g));
    for (const auto& w : c.w) c.wf.push_back(to_float(w));
    c.c0_f = to_float(md.gamma0);
    c.gram_f = to_float(md.gram);
    c.gram_inv_f = to_float(md.gram_inv);
  });
}

Mat<Scalar> inverse(const Mat<Scalar>& m) {
  Echelon<Scalar> e = rref(hstack(m, Mat<Scalar>::identity(m.rows)));
  if (static_cast<int>(e.pivots.size()) < m.rows || e.pivots[m.rows - 1] >= m.cols)
    throw std::invalid_argument("singular metric");
  Mat<Scalar> inv(m.rows, m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.rows; ++j) inv(i, j) = e.r(i, m.cols + j);
  return inv;
}

Mat<Scalar> v0_form(int m) {
  auto basis = fock_basis(m);
  const int d = static_cast<int>(basis.size());
  const std::uint32_t full = (1u << m) - 1;
  Mat<Scalar> c(d, d);
  for (std::uint32_t s : basis) {
    std::uint32_t sc = full & ~s;
    int inv = 0;
    for (std::uint32_t x = s; x; x &= x - 1) {
      int a = std::countr_zero(x);
      inv += std::popcount(sc & ((1u << a) - 1));
    }
    int p = std::popcount(s);
    int e = inv + p * (p + 1) / 2;
    c(fock_index(m, s), fock_index(m, sc)) = Scalar(e % 2 ? -1 : 1);
  }
  return c;
}

// Solve G^T C = eps C G for a nonzero C.
Mat<Scalar> solve_invariant_form(const std::vector<Mat<Scalar>>& gens, int& sign) {
  const int d = gens[0].rows;
  for (int eps : {1, -1}) {
    Mat<Scalar> sys(static_cast<int>(gens.size()) * d * d, d * d);
    int row = 0;
    for (const auto& g : gens)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j, ++row) {
          // (G^T C)_{ij} = sum_k G_{ki} C_{kj};  (C G)_{ij} = sum_k C_{ik} G_{kj}
          for (int k = 0; k < d; ++k) {
            if (!g(k, i).is_zero()) sys(row, k * d + j) += g(k, i);
            if (!g(k, j).is_zero()) sys(row, i * d + k) -= Scalar(eps) * g(k, j);
          }
        }
    Subspace<Scalar> k = kernel(sys);
    if (k.dim() == 0) continue;
    Mat<Scalar> c(d, d);
    for (int i = 0; i < d * d; ++i) c.a[i] = k.basis(0, i);
    if (rank(c) == d) {
      sign = eps;
      return c;
    }
  }
  throw std::runtime_error("no invariant spinor form");
}

void attach_form(CliffordModel& md, std::vector<Mat<Scalar>> candidates) {
  for (auto& c : candidates) {
    if (auto s = invariance_sign(md.gens, c); s && rank(c) == c.rows) {
      md.gamma0 = std::move(c);
      md.gamma0_sign = *s;
      return;
    }
  }
  md.gamma0 = solve_invariant_form(md.gens, md.gamma0_sign);
}

}  // namespace

std::optional<int> invariance_sign(const std::vector<Mat<Scalar>>& gens, const Mat<Scalar>& c) {
  for (int eps : {1, -1}) {
    bool ok = true;
    for (const auto& g : gens) {
      Mat<Scalar> lhs = transpose(g) * c;
      Mat<Scalar> rhs = Scalar(eps) * (c * g);
      if (!is_zero(lhs - rhs)) {
        ok = false;
        break;
      }
    }
    if (ok) return eps;
  }
  return std::nullopt;
}

template <>
const Mat<Scalar>& CliffordModel::product<Scalar>(std::uint32_t mask) const {
  fill_exact(*this);
  return cache->w.at(mask);
}
template <>
const Mat<cplx>& CliffordModel::product<cplx>(std::uint32_t mask) const {
  fill_float(*this);
  return cache->wf.at(mask);
}
template <>
const std::vector<Mat<Scalar>>& CliffordModel::generators<Scalar>() const { return gens; }
template <>
const std::vector<Mat<cplx>>& CliffordModel::generators<cplx>() const {
  fill_float(*this);
  return cache->gens_f;
}
template <>
const Mat<Scalar>& CliffordModel::form0<Scalar>() const { return gamma0; }
template <>
const Mat<cplx>& CliffordModel::form0<cplx>() const {
  fill_float(*this);
  return cache->c0_f;
}
template <>
const Mat<Scalar>& CliffordModel::metric<Scalar>() const { return gram; }
template <>
const Mat<cplx>& CliffordModel::metric<cplx>() const {
  fill_float(*this);
  return cache->gram_f;
}
template <>
const Mat<Scalar>& CliffordModel::metric_inv<Scalar>() const { return gram_inv; }
template <>
const Mat<cplx>& CliffordModel::metric_inv<cplx>() const {
  fill_float(*this);
  return cache->gram_inv_f;
}

Mat<Scalar> CliffordModel::gamma(const Vec<Scalar>& v) const {
  Mat<Scalar> out(spinor_dim, spinor_dim);
  for (int a = 0; a < N; ++a)
    if (!v[a].is_zero()) out += v[a] * gens[a];
  return out;
}

Mat<cplx> CliffordModel::gamma(const Vec<cplx>& v) const {
  const auto& g = generators<cplx>();
  Mat<cplx> out(spinor_dim, spinor_dim);
  for (int a = 0; a < N; ++a)
    if (v[a] != cplx(0)) out += v[a] * g[a];
  return out;
}

CliffordModel build_v0_model(int m, Parity parity) {
  if (m < 1 || m > 4) throw std::out_of_range("m out of range");
  CliffordModel md;
  md.m = m;
  md.parity = parity;
  md.tag = BasisTag::witt;
  md.N = 2 * m + (parity == Parity::odd ? 1 : 0);
  auto basis = fock_basis(m);
  const int d = static_cast<int>(basis.size());
  md.spinor_dim = d;
  md.gram = Mat<Scalar>(md.N, md.N);
  for (int a = 0; a < m; ++a) md.gram(a, m + a) = md.gram(m + a, a) = Scalar(1);
  if (parity == Parity::odd) md.gram(2 * m, 2 * m) = Scalar(1);
  md.gram_inv = inverse(md.gram);

  for (int a = 0; a < m; ++a) {
    Mat<Scalar> e(d, d);
    for (std::uint32_t s : basis) {
      if (s & (1u << a)) continue;
      int above = std::popcount(s >> (a + 1));
      e(fock_index(m, s | (1u << a)), fock_index(m, s)) = Scalar(above % 2 ? -1 : 1);
    }
    md.gens.push_back(std::move(e));
  }
  for (int a = 0; a < m; ++a) {
    Mat<Scalar> f(d, d);
    for (std::uint32_t s : basis) {
      if (!(s & (1u << a))) continue;
      int above = std::popcount(s >> (a + 1));
      f(fock_index(m, s & ~(1u << a)), fock_index(m, s)) = Scalar(above % 2 ? 2 : -2);
    }
    md.gens.push_back(std::move(f));
  }
  if (parity == Parity::odd) {
    Mat<Scalar> u(d, d);
    for (std::uint32_t s : basis) u(fock_index(m, s), fock_index(m, s)) = Scalar::gaussian(0, std::popcount(s) % 2 ? -1 : 1);
    md.gens.push_back(std::move(u));
  } else {
    for (std::uint32_t s : basis) md.chirality.push_back(std::popcount(s) % 2 ? -1 : 1);
  }
  md.cache = std::make_shared<ModelCache>();
  attach_form(md, {v0_form(m)});
  return md;
}

CliffordModel build_tractor_model(int m, Parity parity) {
  CliffordModel v0 = build_v0_model(m, parity);
  CliffordModel md;
  md.m = m;
  md.parity = parity;
  md.tag = BasisTag::tractor;
  md.N = v0.N + 2;
  const int d = v0.spinor_dim;
  md.spinor_dim = 2 * d;
  md.gram = Mat<Scalar>(md.N, md.N);
  md.gram(0, md.N - 1) = md.gram(md.N - 1, 0) = Scalar(1);
  for (int a = 0; a < v0.N; ++a)
    for (int b = 0; b < v0.N; ++b) md.gram(1 + a, 1 + b) = v0.gram(a, b);
  md.gram_inv = inverse(md.gram);

  // Gamma(x X0 + Z0 v + y Y0) = [[gamma(v), -sqrt2 y], [sqrt2 x, -gamma(v)]]
  Mat<Scalar> gx(2 * d, 2 * d), gy(2 * d, 2 * d);
  for (int i = 0; i < d; ++i) {
    gx(d + i, i) = Scalar::sqrt2();
    gy(i, d + i) = -Scalar::sqrt2();
  }
  md.gens.push_back(gx);
  for (const auto& g : v0.gens) {
    Mat<Scalar> t(2 * d, 2 * d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        if (g(i, j).is_zero()) continue;
        t(i, j) = g(i, j);
        t(d + i, d + j) = -g(i, j);
      }
    md.gens.push_back(std::move(t));
  }
  md.gens.push_back(gy);
  if (parity == Parity::even) {
    // omega block odd grade and pi block even grade are positive
    for (int i = 0; i < d; ++i) md.chirality.push_back(-v0.chirality[i]);
    for (int i = 0; i < d; ++i) md.chirality.push_back(v0.chirality[i]);
  }
  Mat<Scalar> c(2 * d, 2 * d);
  Scalar lower((m + 1) % 2 ? -1 : 1);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (v0.gamma0(i, j).is_zero()) continue;
      c(i, d + j) = v0.gamma0(i, j);
      c(d + i, j) = lower * v0.gamma0(i, j);
    }
  Mat<Scalar> c_alt = c;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) c_alt(d + i, j) = -c(d + i, j);
  md.cache = std::make_shared<ModelCache>();
  attach_form(md, {c, c_alt});
  return md;
}

KForm<Scalar> gamma_k(const CliffordModel& model, int k) {
  if (k < 0 || k > model.N) throw std::out_of_range("k out of range");
  KForm<Scalar> f;
  f.k = k;
  for (std::uint32_t s : subsets_of_size(model.N, k))
    f.table.emplace(s, transpose(model.product<Scalar>(s)) * model.gamma0);
  return f;
}

template <class T>
T gamma_k_value(const CliffordModel& model, std::uint32_t mask, const Vec<T>& z, const Vec<T>& w) {
  return dot(model.product<T>(mask) * z, model.form0<T>() * w);
}

template Scalar gamma_k_value(const CliffordModel&, std::uint32_t, const Vec<Scalar>&, const Vec<Scalar>&);
template cplx gamma_k_value(const CliffordModel&, std::uint32_t, const Vec<cplx>&, const Vec<cplx>&);

template <class T>
std::vector<T> gamma_k_values(const CliffordModel& model, int k, const Vec<T>& z, const Vec<T>& w) {
  Vec<T> cw = model.form0<T>() * w;
  std::vector<T> out;
  for (std::uint32_t s : subsets_of_size(model.N, k)) out.push_back(dot(model.product<T>(s) * z, cw));
  return out;
}

template std::vector<Scalar> gamma_k_values(const CliffordModel&, int, const Vec<Scalar>&, const Vec<Scalar>&);
template std::vector<cplx> gamma_k_values(const CliffordModel&, int, const Vec<cplx>&, const Vec<cplx>&);

bool clifford_identity_holds(const CliffordModel& model) {
  const int d = model.spinor_dim;
  for (int a = 0; a < model.N; ++a)
    for (int b = a; b < model.N; ++b) {
      Mat<Scalar> s = model.gens[a] * model.gens[b] + model.gens[b] * model.gens[a];
      s += Scalar(2) * model.gram(a, b) * Mat<Scalar>::identity(d);
      if (!is_zero(s)) return false;
    }
  return true;
}

int symmetry_class(const KForm<Scalar>& f) {
  bool sym = true, anti = true;
  for (const auto& [mask, m] : f.table) {
    Mat<Scalar> t = transpose(m);
    if (!is_zero(t - m)) sym = false;
    if (!is_zero(t + m)) anti = false;
  }
  if (sym && !anti) return 1;
  if (anti && !sym) return -1;
  return 0;
}

int predicted_symmetry(const CliffordModel& model, int k) {
  int r = ((k - model.max_null()) % 4 + 4) % 4;
  return (r == 0 || r == 1) ? 1 : -1;
}

Reduction even_to_odd_reduce(const CliffordModel& ev, const Vec<Scalar>& unit) {
  if (ev.parity != Parity::even) throw std::invalid_argument("reduction needs an even model");
  if (!(bilinear(unit, ev.gram, unit) == Scalar(1))) throw std::invalid_argument("U is not a unit vector");
  Reduction red;
  red.unit = unit;
  Mat<Scalar> row(1, ev.N);
  Vec<Scalar> hu = ev.gram * unit;
  for (int j = 0; j < ev.N; ++j) row(0, j) = hu[j];
  red.basis = kernel(row).basis;
  for (int i = 0; i < ev.spinor_dim; ++i)
    if (ev.chirality[i] > 0) red.spinor_indices.push_back(i);
  const auto& keep = red.spinor_indices;
  const int d = static_cast<int>(keep.size());
  auto restrict = [&](const Mat<Scalar>& m) {
    Mat<Scalar> r(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) r(i, j) = m(keep[i], keep[j]);
    return r;
  };
  Mat<Scalar> gu = ev.gamma(unit);
  CliffordModel& md = red.model;
  md.parity = Parity::odd;
  md.tag = BasisTag::reduced;
  md.N = ev.N - 1;
  md.m = (md.N - 3) / 2;
  md.spinor_dim = d;
  md.gram = Mat<Scalar>(md.N, md.N);
  for (int i = 0; i < md.N; ++i)
    for (int j = 0; j < md.N; ++j) md.gram(i, j) = bilinear(red.basis.row(i), ev.gram, red.basis.row(j));
  md.gram_inv = inverse(md.gram);
  for (int i = 0; i < md.N; ++i) md.gens.push_back(restrict(gu * ev.gamma(red.basis.row(i))));
  md.cache = std::make_shared<ModelCache>();
  attach_form(md, {restrict(ev.gamma0), restrict(transpose(gu) * ev.gamma0), restrict(ev.gamma0 * gu)});
  return red;
}

ReductionCheck check_reduction(const CliffordModel& ev, const Reduction& red) {
  ReductionCheck rc;
  rc.clifford = clifford_identity_holds(red.model);
  const auto& keep = red.spinor_indices;
  const int d = static_cast<int>(keep.size());
  auto restrict = [&](const Mat<Scalar>& m) {
    Mat<Scalar> r(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) r(i, j) = m(keep[i], keep[j]);
    return r;
  };
  std::vector<Mat<Scalar>> lifted;
  for (int i = 0; i < red.model.N; ++i) lifted.push_back(ev.gamma(red.basis.row(i)));
  lifted.push_back(ev.gamma(red.unit));
  const std::vector<Mat<Scalar>> ambient = subset_products(lifted);
  // Proportionality constant per k between reduced and ambient forms.
  rc.forms = true;
  for (int k = 0; k <= red.model.N && rc.forms; ++k) {
    std::optional<Scalar> ratio;
    for (std::uint32_t s : subsets_of_size(red.model.N, k)) {
      bool same_parity = (k % 2) == (red.model.m % 2);
      std::uint32_t key = same_parity ? s : (s | (1u << red.model.N));
      Mat<Scalar> amb = restrict(transpose(ambient[key]) * ev.gamma0);
      Mat<Scalar> red_form = transpose(red.model.product<Scalar>(s)) * red.model.gamma0;
      ++rc.checked;
      // locate a nonzero entry to fix the constant
      int idx = -1;
      for (size_t i = 0; i < amb.a.size(); ++i)
        if (!amb.a[i].is_zero()) {
          idx = static_cast<int>(i);
          break;
        }
      if (idx < 0) {
        if (!is_zero(red_form)) rc.forms = false;
        continue;
      }
      Scalar r = red_form.a[idx] / amb.a[idx];
      if (r.is_zero() || (ratio && !(*ratio == r)) || !is_zero(red_form - r * amb)) {
        rc.forms = false;
        break;
      }
      ratio = r;
    }
  }
  return rc;
}

}  // namespace nf
