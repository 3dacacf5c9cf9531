#include <map>

#include "doctest.h"
#include "nullfoliate/incidence.hpp"

using namespace nf;

TEST_CASE("intersection dimension matches the kernel oracle") {
  for (int m = 1; m <= 3; ++m) {
    const CliffordModel t = build_tractor_model(m);
    const FockFrame vac = tractor_vacuum_frame(t);
    std::map<int, int> hist;
    for (long c = 0; c < 120; ++c) {
      Rng rng = Rng::for_case(61 + m, c);
      const auto [z, w] = random_pure_pair(t, vac, rng);
      const int o = intersection_dim_oracle(t, z, w);
      ++hist[o];
      CHECK(intersection_dim(t, z, w) == o);
      CHECK(intersection_dim(t, to_float(z), to_float(w)) == o);
      CHECK(intersection_dim(t, w, z) == o);
      // the tangent and distribution tests are threshold cases of the same count
      CHECK(in_projective_tangent(t, z, w) == (o >= m - 2));
      CHECK(in_canonical_distribution(t, z, w) == (o >= m - 1));
      CHECK(in_canonical_distribution_forms(t, z, w) == (o >= m - 1));
    }
    CHECK(hist.count(-1) == 1);
    CHECK(hist.count(m) == 1);
  }
}

TEST_CASE("equal planes intersect in dimension m") {
  Rng rng(2);
  for (int m = 1; m <= 3; ++m) {
    const CliffordModel t = build_tractor_model(m);
    const Vec<Scalar> z = random_pure_spinor(t, rng);
    CHECK(intersection_dim(t, z, Scalar::gaussian(2, -1) * z) == m);
  }
}

TEST_CASE("D form points lie in the distribution") {
  const CliffordModel t = build_tractor_model(3);
  const FockFrame vac = tractor_vacuum_frame(t);
  const int n = vac.dim;
  Rng rng(4);
  for (int k = 0; k < 20; ++k) {
    FockComponents c{n, FormVec(std::size_t{1} << n)};
    c.comps[0] = Scalar(1);
    for (int a = 0; a < n; ++a) c.comps[1u << a] = rng.integer(2);
    const Vec<Scalar> z = fock_reconstruct(vac, c);
    CHECK(is_pure_rank(t, z));
    CHECK(in_canonical_distribution(t, z, vac.base));
    CHECK(intersection_dim(t, z, vac.base) >= 2);
    CHECK(is_tangent_form(c));
  }
}

TEST_CASE("a T point with degree-2 part leaves the distribution") {
  const CliffordModel t = build_tractor_model(3);
  const FockFrame vac = tractor_vacuum_frame(t);
  const int n = vac.dim;
  FockComponents c{n, FormVec(std::size_t{1} << n)};
  c.comps[0] = Scalar(1);
  c.comps[0b0011] = Scalar(1);
  const Vec<Scalar> z = fock_reconstruct(vac, c);
  REQUIRE(is_pure_rank(t, z));
  CHECK(in_projective_tangent(t, z, vac.base));
  CHECK_FALSE(in_canonical_distribution(t, z, vac.base));
  CHECK(intersection_dim(t, z, vac.base) == 1);
}

TEST_CASE("Fock-form pair equivalences at m=3") {
  const CliffordModel t = build_tractor_model(3);
  const FockFrame vac = tractor_vacuum_frame(t);
  for (long c = 0; c < 80; ++c) {
    Rng rng = Rng::for_case(71, c);
    const auto [z, w] = random_tangent_pair(rng, vac.dim);
    const GeometricTReport r = check_prop_geometric_T(vac, z, w);
    CHECK(r.inter3);
    CHECK(r.inter2);
    CHECK(r.inter1);
  }
  // two D form points are at least m-2 apart
  FockComponents z{vac.dim, FormVec(std::size_t{1} << vac.dim)}, w = z;
  z.comps[0] = w.comps[0] = Scalar(1);
  z.comps[0b0001] = Scalar(1);
  w.comps[0b0100] = Scalar(3);
  CHECK(check_prop_geometric_T(vac, z, w).dim >= 1);
  FockComponents bad = z;
  bad.comps[0b0111] = Scalar(1);
  CHECK_THROWS(check_prop_geometric_T(vac, bad, w));
}

TEST_CASE("contact forms vanish along distinguished curves only") {
  Rng rng(5);
  for (int m = 1; m <= 3; ++m) {
    const CliffordModel t = build_tractor_model(m);
    const FockFrame vac = tractor_vacuum_frame(t);
    for (int k = 0; k < 15; ++k) {
      const Vec<Scalar> xi = random_pure_spinor(t, vac, rng);
      const Vec<Scalar> a = rng.integer_vec(t.N, 3);
      const Scalar s = rng.gaussian(3);
      const Vec<Scalar> z = distinguished_curve(t, xi, a, s);
      CHECK(is_pure_rank(t, z));
      CHECK(intersection_dim(t, z, xi) >= m - 1);
      CHECK(is_zero(contact_form_eval(t, z, distinguished_tangent(t, xi, a))));
    }
  }
  // transverse direction: degree-2 Fock direction at the vacuum
  const CliffordModel t = build_tractor_model(2);
  const FockFrame vac = tractor_vacuum_frame(t);
  FockComponents c{vac.dim, FormVec(std::size_t{1} << vac.dim)};
  c.comps[0b011] = Scalar(1);
  CHECK_FALSE(is_zero(contact_form_eval(t, vac.base, fock_reconstruct(vac, c))));
}
