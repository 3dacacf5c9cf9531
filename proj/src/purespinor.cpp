#include "nullfoliate/purespinor.hpp"

#include <bit>
#include <map>
#include <mutex>
#include <tuple>

namespace nf {

template <class T>
Mat<T> annihilator_map(const CliffordModel& md, const Vec<T>& z) {
  if (is_zero(z, 0)) throw ZeroSpinor();
  const auto& g = md.generators<T>();
  std::vector<Vec<T>> cols;
  cols.reserve(md.N);
  for (const auto& ga : g) cols.push_back(ga * z);
  return from_columns(cols, md.spinor_dim);
}

template <class T>
Subspace<T> kernel_plane(const CliffordModel& md, const Vec<T>& z, double tol) {
  return kernel(annihilator_map(md, z), tol);
}

template <class T>
bool is_pure_rank(const CliffordModel& md, const Vec<T>& z, double tol) {
  Mat<T> a = annihilator_map(md, z);
  if constexpr (std::is_same_v<T, cplx>) {
    Vec<T> zn = z;
    double s = max_abs(z);
    for (auto& e : zn) e /= s;
    a = annihilator_map(md, zn);
  }
  return md.N - rank(a, tol) == md.max_null();
}

template <class T>
Mat<T> pair_contraction(const CliffordModel& md, const Vec<T>& z, const Vec<T>& w) {
  const auto& g = md.generators<T>();
  const auto& hinv = md.metric_inv<T>();
  std::vector<Vec<T>> gz, gw;
  for (const auto& ga : g) {
    gz.push_back(ga * z);
    gw.push_back(ga * w);
  }
  Mat<T> out(md.spinor_dim, md.spinor_dim);
  for (int a = 0; a < md.N; ++a)
    for (int b = 0; b < md.N; ++b) {
      if (is_zero(hinv(a, b), 0)) continue;
      out += hinv(a, b) * outer(gz[a], gw[b]);
    }
  return out;
}

namespace {

template <class T>
bool chiral(const CliffordModel& md, const Vec<T>& z, double tol) {
  if (md.odd()) return true;
  bool plus = false, minus = false;
  for (int i = 0; i < md.spinor_dim; ++i) {
    if (is_zero(z[i], tol)) continue;
    (md.chirality[i] > 0 ? plus : minus) = true;
  }
  return !(plus && minus);
}

template <class T>
Vec<T> normalized(const Vec<T>& z) {
  if constexpr (std::is_same_v<T, cplx>) {
    Vec<T> zn = z;
    double s = max_abs(z);
    for (auto& e : zn) e /= s;
    return zn;
  } else {
    return z;
  }
}

}  // namespace

bool is_chiral(const CliffordModel& md, const Vec<Scalar>& z) { return chiral(md, z, 0); }

template <class T>
bool is_pure_quadratic(const CliffordModel& md, const Vec<T>& z0, double tol) {
  if (is_zero(z0, 0)) throw ZeroSpinor();
  Vec<T> z = normalized(z0);
  if (!chiral(md, z, tol)) return false;
  const int M = md.max_null();
  for (int k = 0; k < M; ++k) {
    if (predicted_symmetry(md, k) != 1) continue;
    for (const T& v : gamma_k_values(md, k, z, z))
      if (!is_zero(v, tol)) return false;
  }
  for (const T& v : gamma_k_values(md, M, z, z))
    if (!is_zero(v, tol)) return true;
  return false;
}

template <class T>
bool is_pure_succinct(const CliffordModel& md, const Vec<T>& z0, double tol) {
  if (is_zero(z0, 0)) throw ZeroSpinor();
  Vec<T> z = normalized(z0);
  if (!chiral(md, z, tol)) return false;
  Mat<T> r = pair_contraction(md, z, z);
  if (md.odd()) r += outer(z, z);
  return is_zero(r, tol);
}

#define NF_INSTANTIATE(T)                                                                  \
  template Mat<T> annihilator_map(const CliffordModel&, const Vec<T>&);                    \
  template Subspace<T> kernel_plane(const CliffordModel&, const Vec<T>&, double);          \
  template bool is_pure_rank(const CliffordModel&, const Vec<T>&, double);                 \
  template bool is_pure_quadratic(const CliffordModel&, const Vec<T>&, double);            \
  template bool is_pure_succinct(const CliffordModel&, const Vec<T>&, double);             \
  template Mat<T> pair_contraction(const CliffordModel&, const Vec<T>&, const Vec<T>&);
NF_INSTANTIATE(Scalar)
NF_INSTANTIATE(cplx)
#undef NF_INSTANTIATE

FormVec degree_part(const FormVec& a, int k, int dim) {
  FormVec out(std::size_t{1} << dim);
  for (std::uint32_t s = 0; s < out.size(); ++s)
    if (std::popcount(s) == k) out[s] = a[s];
  return out;
}

namespace {

mpz_class factorial(int n) {
  mpz_class f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

FormVec wedge(const FormVec& a, int p, const FormVec& b, int q, int dim) {
  FormVec out(std::size_t{1} << dim);
  if (p + q > dim) return out;
  mpq_class w(factorial(p) * factorial(q), factorial(p + q));
  w.canonicalize();
  const Scalar weight(w);
  for (std::uint32_t s : subsets_of_size(dim, p + q)) {
    Scalar acc;
    for (std::uint32_t sub = s;; sub = (sub - 1) & s) {
      if (std::popcount(sub) == p) {
        std::uint32_t rest = s & ~sub;
        if (!a[sub].is_zero() && !b[rest].is_zero()) {
          Scalar t = a[sub] * b[rest];
          if (merge_sign(sub, rest) < 0) acc -= t;
          else acc += t;
        }
      }
      if (sub == 0) break;
    }
    if (!acc.is_zero()) out[s] = weight * acc;
  }
  return out;
}

// c_{2k} = (-1/4)^k / k!,  c_{2k+1} = (i/2)(-1/4)^k / k!
Scalar fock_coefficient(int k) {
  int h = k / 2;
  mpq_class c(1);
  for (int j = 0; j < h; ++j) c *= mpq_class(-1, 4);
  c /= mpq_class(factorial(h));
  Scalar s(c);
  if (k % 2) s = s * Scalar(0, mpq_class(1, 2), 0, 0);
  return s;
}

namespace {

void finish_frame(FockFrame& f) {
  const CliffordModel& md = *f.model;
  f.dim = static_cast<int>(f.complement.size());
  std::vector<Mat<Scalar>> g;
  for (const auto& w : f.complement) g.push_back(md.gamma(w));
  auto w = subset_products(g);
  f.basis.resize(w.size());
  for (std::uint32_t s = 0; s < w.size(); ++s) {
    int k = std::popcount(s);
    Scalar c = fock_coefficient(k) * Scalar(mpq_class(factorial(k)));
    f.basis[s] = c * (w[s] * f.base);
  }
  if (static_cast<int>(f.basis.size()) != md.spinor_dim) throw std::logic_error("Fock basis size mismatch");
  Mat<Scalar> b = from_columns(f.basis, md.spinor_dim);
  Echelon<Scalar> e = rref(hstack(b, Mat<Scalar>::identity(md.spinor_dim)));
  if (static_cast<int>(e.pivots.size()) < md.spinor_dim || e.pivots[md.spinor_dim - 1] >= md.spinor_dim)
    throw NotPure();
  f.basis_inv = Mat<Scalar>(md.spinor_dim, md.spinor_dim);
  for (int i = 0; i < md.spinor_dim; ++i)
    for (int j = 0; j < md.spinor_dim; ++j) f.basis_inv(i, j) = e.r(i, md.spinor_dim + j);
}

}  // namespace

FockFrame fock_frame(const CliffordModel& md, const Vec<Scalar>& xi) {
  if (!is_pure_rank(md, xi)) throw NotPure();
  FockFrame f;
  f.model = &md;
  f.base = xi;
  Subspace<Scalar> k = kernel_plane(md, xi);
  const int M = k.dim();
  for (int j = 0; j < M; ++j) f.kernel.push_back(k.basis.row(j));
  Mat<Scalar> a(M, md.N);
  for (int j = 0; j < M; ++j) {
    Vec<Scalar> hk = md.gram * f.kernel[j];
    for (int c = 0; c < md.N; ++c) a(j, c) = hk[c];
  }
  std::vector<Vec<Scalar>> w;
  for (int i = 0; i < M; ++i) {
    Vec<Scalar> e(M);
    e[i] = Scalar(1);
    auto sol = solve(a, e);
    if (!sol) throw std::logic_error("degenerate null plane");
    w.push_back(*sol);
  }
  for (int i = 0; i < M; ++i) {
    Vec<Scalar> wi = w[i];
    for (int j = 0; j < M; ++j) {
      Scalar c = Scalar::rational(1, 2) * bilinear(w[i], md.gram, w[j]);
      if (!c.is_zero()) wi -= c * f.kernel[j];
    }
    f.complement.push_back(wi);
  }
  finish_frame(f);
  return f;
}

FockFrame fock_frame(const CliffordModel& md, const Vec<Scalar>& xi, const std::vector<Vec<Scalar>>& complement) {
  FockFrame f;
  f.model = &md;
  f.base = xi;
  f.complement = complement;
  finish_frame(f);
  return f;
}

Vec<Scalar> v0_vacuum(const CliffordModel& v0) {
  Vec<Scalar> o(v0.spinor_dim);
  o[0] = Scalar(1);
  return o;
}

Vec<Scalar> tractor_vacuum(const CliffordModel& t) {
  Vec<Scalar> z(t.spinor_dim);
  z[t.spinor_dim / 2] = Scalar(1);
  return z;
}

FockFrame v0_vacuum_frame(const CliffordModel& v0) {
  std::vector<Vec<Scalar>> comp;
  for (int a = 0; a < v0.m; ++a) {
    Vec<Scalar> e(v0.N);
    e[a] = Scalar(1);
    comp.push_back(e);
  }
  FockFrame f = fock_frame(v0, v0_vacuum(v0), comp);
  for (int a = 0; a < v0.m; ++a) {
    Vec<Scalar> fa(v0.N);
    fa[v0.m + a] = Scalar(1);
    f.kernel.push_back(fa);
  }
  return f;
}

FockFrame tractor_vacuum_frame(const CliffordModel& t) {
  std::vector<Vec<Scalar>> comp;
  Vec<Scalar> y(t.N);
  y[t.N - 1] = Scalar(1);
  comp.push_back(y);
  for (int a = 0; a < t.m; ++a) {
    Vec<Scalar> e(t.N);
    e[1 + a] = Scalar(1);
    comp.push_back(e);
  }
  FockFrame f = fock_frame(t, tractor_vacuum(t), comp);
  Vec<Scalar> x(t.N);
  x[0] = Scalar(1);
  f.kernel.push_back(x);
  for (int a = 0; a < t.m; ++a) {
    Vec<Scalar> fa(t.N);
    fa[1 + t.m + a] = Scalar(1);
    f.kernel.push_back(fa);
  }
  return f;
}

FockFrame vacuum_frame(const CliffordModel& md) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, FockFrame> cache;
  const auto key = std::make_tuple(static_cast<int>(md.tag), md.m, static_cast<int>(md.parity));
  FockFrame f;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) f = it->second;
  }
  if (f.model == nullptr) {
    if (md.tag == BasisTag::reduced) throw std::invalid_argument("no vacuum frame for reduced models");
    f = md.tag == BasisTag::tractor ? tractor_vacuum_frame(md) : v0_vacuum_frame(md);
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key, f);
  }
  f.model = &md;
  return f;
}

FockComponents fock_decompose(const FockFrame& f, const Vec<Scalar>& z) {
  return {f.dim, f.basis_inv * z};
}

Vec<Scalar> fock_reconstruct(const FockFrame& f, const FockComponents& c) {
  Vec<Scalar> z(f.model->spinor_dim);
  for (std::size_t s = 0; s < c.comps.size(); ++s)
    if (!c.comps[s].is_zero()) z += c.comps[s] * f.basis[s];
  return z;
}

bool fock_relations_hold(const FockComponents& c) {
  const int n = c.dim;
  const Scalar& z0 = c.comps[0];
  for (int k = 1; 2 * k + 1 <= n; ++k) {
    FormVec rhs = wedge(c.comps, 1, c.comps, 2 * k, n);
    FormVec lhs = z0 * degree_part(c.comps, 2 * k + 1, n);
    if (!is_zero(lhs - rhs)) return false;
  }
  for (int k = 2; 2 * k <= n; ++k) {
    FormVec rhs = wedge(c.comps, 2, c.comps, 2 * k - 2, n);
    FormVec lhs = z0 * degree_part(c.comps, 2 * k, n);
    if (!is_zero(lhs - rhs)) return false;
  }
  return true;
}

bool fock_purity(const FockFrame& f, const FockComponents& c) {
  if (c.comps[0].is_zero()) {
    Vec<Scalar> z = fock_reconstruct(f, c);
    if (is_zero(z)) return false;
    return is_pure_rank(*f.model, z);
  }
  return fock_relations_hold(c);
}

FockComponents complete_pure(int dim, const FormVec& z1, const FormVec& z2) {
  FockComponents c;
  c.dim = dim;
  c.comps = FormVec(std::size_t{1} << dim);
  c.comps[0] = Scalar(1);
  FormVec p1 = degree_part(z1, 1, dim), p2 = degree_part(z2, 2, dim);
  c.comps += p1;
  c.comps += p2;
  FormVec even = p2;
  for (int k = 1; 2 * k + 1 <= dim || 2 * k + 2 <= dim; ++k) {
    if (2 * k + 1 <= dim) c.comps += wedge(p1, 1, even, 2 * k, dim);
    if (2 * k + 2 <= dim) {
      even = wedge(p2, 2, even, 2 * k, dim);
      c.comps += even;
    }
  }
  return c;
}

FockComponents random_pure_components(Rng& rng, int dim, bool odd_part, bool decomposable) {
  FormVec z1(std::size_t{1} << dim), z2(std::size_t{1} << dim);
  if (odd_part)
    for (int a = 0; a < dim; ++a) z1[1u << a] = rng.gaussian(2);
  if (decomposable) {
    FormVec p(std::size_t{1} << dim), q(std::size_t{1} << dim);
    for (int a = 0; a < dim; ++a) {
      p[1u << a] = rng.gaussian(2);
      q[1u << a] = rng.gaussian(2);
    }
    z2 = Scalar(2) * wedge(p, 1, q, 1, dim);
  } else {
    for (std::uint32_t s : subsets_of_size(dim, 2)) z2[s] = rng.gaussian(2);
  }
  return complete_pure(dim, z1, z2);
}

Vec<Scalar> random_spinor(const CliffordModel& md, Rng& rng, long bound) {
  return rng.nonzero_gaussian_vec(md.spinor_dim, bound);
}

Vec<Scalar> random_null_vector(const CliffordModel& md, Rng& rng, long bound) {
  while (true) {
    Vec<Scalar> w = rng.integer_vec(md.N, bound);
    // the first basis vector is null in every Witt-type basis used here
    Vec<Scalar> b(md.N);
    b[0] = Scalar(1);
    Scalar hwb = bilinear(w, md.gram, b);
    if (hwb.is_zero()) continue;
    Scalar t = -bilinear(w, md.gram, w) / (Scalar(2) * hwb);
    w[0] += t;
    if (!is_zero(w)) return w;
  }
}

Vec<Scalar> random_nonnull_vector(const CliffordModel& md, Rng& rng, long bound) {
  while (true) {
    Vec<Scalar> v = rng.integer_vec(md.N, bound);
    if (!bilinear(v, md.gram, v).is_zero()) return v;
  }
}

Vec<Scalar> random_pure_spinor(const CliffordModel& md, Rng& rng, bool twist) {
  return random_pure_spinor(md, vacuum_frame(md), rng, twist);
}

Vec<Scalar> random_pure_spinor(const CliffordModel& md, const FockFrame& f, Rng& rng, bool twist) {
  bool decomposable = rng.uniform(0, 3) == 0;
  FockComponents c = random_pure_components(rng, f.dim, md.odd(), decomposable);
  Vec<Scalar> z = fock_reconstruct(f, c);
  if (twist) {
    int reps = md.odd() ? static_cast<int>(rng.uniform(0, 2)) : 0;
    for (int r = 0; r < reps; ++r) z = md.gamma(random_nonnull_vector(md, rng, 2)) * z;
  }
  return z;
}

OmegaPi split(const Vec<Scalar>& z) {
  const std::size_t h = z.size() / 2;
  return {Vec<Scalar>(z.begin(), z.begin() + h), Vec<Scalar>(z.begin() + h, z.end())};
}

Vec<Scalar> join(const OmegaPi& s) {
  Vec<Scalar> z = s.omega;
  z.insert(z.end(), s.pi.begin(), s.pi.end());
  return z;
}

bool split_purity(const CliffordModel& v0, const OmegaPi& s) {
  if (is_zero(s.omega) && is_zero(s.pi)) throw ZeroSpinor();
  Mat<Scalar> a = pair_contraction(v0, s.pi, s.pi) + outer(s.pi, s.pi);
  Mat<Scalar> b = pair_contraction(v0, s.omega, s.omega) + outer(s.omega, s.omega);
  Mat<Scalar> c = pair_contraction(v0, s.pi, s.omega) - outer(s.pi, s.omega) + Scalar(2) * outer(s.omega, s.pi);
  return is_zero(a) && is_zero(b) && is_zero(c);
}

}  // namespace nf
