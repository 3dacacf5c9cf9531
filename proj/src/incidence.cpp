#include "nullfoliate/incidence.hpp"

#include <bit>

namespace nf {

template <class T>
int intersection_dim(const CliffordModel& md, const Vec<T>& z, const Vec<T>& w, double tol) {
  if (!is_pure_rank(md, z, tol) || !is_pure_rank(md, w, tol)) throw NotPure();
  Vec<T> zn = z, wn = w;
  if constexpr (std::is_same_v<T, cplx>) {
    double a = max_abs(z), b = max_abs(w);
    for (auto& e : zn) e /= a;
    for (auto& e : wn) e /= b;
  }
  for (int l = 0; l <= md.N; ++l)
    for (const T& v : gamma_k_values(md, l, zn, wn))
      if (!is_zero(v, tol)) return l - 1;
  throw std::logic_error("all Gamma^(k) vanish on a nonzero pair");
}

template <class T>
int intersection_dim_oracle(const CliffordModel& md, const Vec<T>& z, const Vec<T>& w, double tol) {
  return intersect(kernel_plane(md, z, tol), kernel_plane(md, w, tol), tol).dim() - 1;
}

template int intersection_dim(const CliffordModel&, const Vec<Scalar>&, const Vec<Scalar>&, double);
template int intersection_dim(const CliffordModel&, const Vec<cplx>&, const Vec<cplx>&, double);
template int intersection_dim_oracle(const CliffordModel&, const Vec<Scalar>&, const Vec<Scalar>&, double);
template int intersection_dim_oracle(const CliffordModel&, const Vec<cplx>&, const Vec<cplx>&, double);

namespace {

bool forms_vanish_below(const CliffordModel& md, const Vec<Scalar>& z, const Vec<Scalar>& xi, int bound) {
  if (!is_pure_rank(md, z) || !is_pure_rank(md, xi)) throw NotPure();
  for (int k = 0; k < bound; ++k)
    for (const Scalar& v : gamma_k_values(md, k, z, xi))
      if (!v.is_zero()) return false;
  return true;
}

}  // namespace

bool in_projective_tangent(const CliffordModel& md, const Vec<Scalar>& z, const Vec<Scalar>& xi) {
  return forms_vanish_below(md, z, xi, md.max_null() - 2);
}

Mat<Scalar> contact_form_eval(const CliffordModel& md, const Vec<Scalar>& z, const Vec<Scalar>& v) {
  return pair_contraction(md, z, v) + Scalar(2) * outer(v, z) - outer(z, v);
}

bool in_canonical_distribution(const CliffordModel& md, const Vec<Scalar>& z, const Vec<Scalar>& xi) {
  if (!is_pure_rank(md, z) || !is_pure_rank(md, xi)) throw NotPure();
  return is_zero(contact_form_eval(md, z, xi));
}

bool in_canonical_distribution_forms(const CliffordModel& md, const Vec<Scalar>& z, const Vec<Scalar>& xi) {
  return forms_vanish_below(md, z, xi, md.max_null() - 1);
}

Vec<Scalar> distinguished_tangent(const CliffordModel& md, const Vec<Scalar>& xi, const Vec<Scalar>& a) {
  return Scalar(0, mpq_class(1, 2), 0, 0) * (md.gamma(a) * xi);
}

Vec<Scalar> distinguished_curve(const CliffordModel& md, const Vec<Scalar>& xi, const Vec<Scalar>& a,
                                const Scalar& s) {
  return xi + s * distinguished_tangent(md, xi, a);
}

bool is_tangent_form(const FockComponents& c) {
  if (c.comps[0] != Scalar(1)) return false;
  for (std::uint32_t s = 0; s < c.comps.size(); ++s)
    if (std::popcount(s) > 2 && !c.comps[s].is_zero()) return false;
  const FormVec z1 = degree_part(c.comps, 1, c.dim), z2 = degree_part(c.comps, 2, c.dim);
  return is_zero(wedge(z1, 1, z2, 2, c.dim)) && is_zero(wedge(z2, 2, z2, 2, c.dim));
}

GeometricTReport check_prop_geometric_T(const FockFrame& f, const FockComponents& z, const FockComponents& w) {
  if (!is_tangent_form(z) || !is_tangent_form(w)) throw std::invalid_argument("not of tangent form");
  const int n = f.dim, m = n - 1;
  // stored degree-2 components refer to the reversed product W_ba; flip to W_ab
  const FormVec z1 = degree_part(z.comps, 1, n), z2 = Scalar(-1) * degree_part(z.comps, 2, n);
  const FormVec w1 = degree_part(w.comps, 1, n), w2 = Scalar(-1) * degree_part(w.comps, 2, n);
  GeometricTReport r;
  r.dim = intersection_dim_oracle(*f.model, fock_reconstruct(f, z), fock_reconstruct(f, w));
  const bool l3 = is_zero(wedge(z2, 2, w2, 2, n));
  const bool l2 = is_zero(wedge(z1, 1, w2, 2, n) + wedge(w1, 1, z2, 2, n));
  const bool l1 = is_zero(w2 - z2 - wedge(w1, 1, z1, 1, n));
  r.inter3 = l3 == (r.dim >= m - 3);
  r.inter2_literal = l2 == (r.dim >= m - 2);
  r.inter2 = (l2 && l3) == (r.dim >= m - 2);
  r.inter1 = l1 == (r.dim >= m - 1);
  return r;
}

namespace {

FockComponents tangent_point(Rng& rng, int dim, const std::vector<FormVec>& pool) {
  auto pick = [&] { return pool[rng.uniform(0, static_cast<long>(pool.size()) - 1)]; };
  FockComponents c;
  c.dim = dim;
  c.comps = FormVec(std::size_t{1} << dim);
  c.comps[0] = Scalar(1);
  FormVec z1(c.comps.size()), z2(c.comps.size());
  switch (rng.uniform(0, 3)) {
    case 0:
      z1 = pick();
      z2 = wedge(z1, 1, pick(), 1, dim);
      break;
    case 1:
      z2 = wedge(pick(), 1, pick(), 1, dim);
      break;
    case 2:
      z1 = pick();
      break;
    default:
      break;
  }
  c.comps += z1;
  c.comps += z2;
  return c;
}

}  // namespace

std::pair<FockComponents, FockComponents> random_tangent_pair(Rng& rng, int dim) {
  std::vector<FormVec> pool;
  for (int a = 0; a < dim; ++a) {
    FormVec e(std::size_t{1} << dim);
    e[1u << a] = Scalar(1);
    pool.push_back(e);
  }
  for (int j = 0; j < 3; ++j) {
    FormVec e(std::size_t{1} << dim);
    for (int a = 0; a < dim; ++a) e[1u << a] = rng.integer(2);
    pool.push_back(e);
  }
  FockComponents z = tangent_point(rng, dim, pool);
  FockComponents w = rng.uniform(0, 5) == 0 ? z : tangent_point(rng, dim, pool);
  return {z, w};
}

std::pair<Vec<Scalar>, Vec<Scalar>> random_pure_pair(const CliffordModel& md, const FockFrame& vac, Rng& rng) {
  const int n = vac.dim;
  const std::size_t size = std::size_t{1} << n;
  Vec<Scalar> z = vac.base, w;
  if (rng.uniform(0, 5) == 0) {
    w = random_pure_spinor(md, vac, rng, false);
  } else {
    FormVec z1(size), z2(size);
    if (md.odd() && rng.coin())
      for (int a = 0; a < n; ++a) z1[1u << a] = rng.integer(2);
    const long r = rng.uniform(0, n / 2);
    for (long j = 0; j < r; ++j) {
      FormVec p(size), q(size);
      for (int a = 0; a < n; ++a) {
        p[1u << a] = rng.integer(2);
        q[1u << a] = rng.integer(2);
      }
      z2 += wedge(p, 1, q, 1, n);
    }
    w = fock_reconstruct(vac, complete_pure(n, z1, z2));
    if (is_zero(w)) w = z;
  }
  const long reps = rng.uniform(0, 2);
  for (long j = 0; j < reps; ++j) {
    Mat<Scalar> g = md.gamma(random_nonnull_vector(md, rng, 2));
    z = g * z;
    w = g * w;
  }
  if (rng.coin()) std::swap(z, w);
  return {z, w};
}

}  // namespace nf
