#include "doctest.h"
#include "nullfoliate/purespinor.hpp"

using namespace nf;

namespace {

// Maximal isotropic plane e_A + S_AB f^B + c_A u with S = A - cc^T/2, A antisymmetric.
std::vector<Vec<Scalar>> isotropic_plane(const CliffordModel& v0, Rng& rng) {
  const int m = v0.m;
  Vec<Scalar> c = rng.integer_vec(m, 2);
  std::vector<std::vector<Scalar>> a(m, std::vector<Scalar>(m));
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      a[i][j] = rng.gaussian(2);
      a[j][i] = -a[i][j];
    }
  std::vector<Vec<Scalar>> out;
  for (int i = 0; i < m; ++i) {
    Vec<Scalar> v(v0.N);
    v[i] = Scalar(1);
    for (int j = 0; j < m; ++j) v[m + j] = a[i][j] - Scalar::rational(1, 2) * c[i] * c[j];
    v[2 * m] = c[i];
    out.push_back(v);
  }
  return out;
}

// Spinor annihilated by the whole plane, from the stacked gamma matrices.
Vec<Scalar> common_kernel(const CliffordModel& md, const std::vector<Vec<Scalar>>& plane) {
  const int d = md.spinor_dim;
  Mat<Scalar> stack(static_cast<int>(plane.size()) * d, d);
  for (std::size_t k = 0; k < plane.size(); ++k) {
    const Mat<Scalar> g = md.gamma(plane[k]);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) stack(static_cast<int>(k) * d + i, j) = g(i, j);
  }
  const Subspace<Scalar> k = kernel(stack);
  REQUIRE(k.dim() == 1);
  return k.basis.row(0);
}

}  // namespace

TEST_CASE("spinors annihilated by an isotropic plane are pure") {
  Rng rng(31);
  for (int m = 1; m <= 3; ++m) {
    const CliffordModel v0 = build_v0_model(m);
    for (int k = 0; k < 20; ++k) {
      const auto plane = isotropic_plane(v0, rng);
      for (std::size_t i = 0; i < plane.size(); ++i)
        for (std::size_t j = 0; j < plane.size(); ++j) REQUIRE(bilinear(plane[i], v0.gram, plane[j]).is_zero());
      const Vec<Scalar> z = common_kernel(v0, plane);
      CHECK(is_pure_rank(v0, z));
      CHECK(is_pure_quadratic(v0, z));
      CHECK(is_pure_succinct(v0, z));
      CHECK(kernel_plane(v0, z).dim() == m);
      CHECK(is_pure_rank(v0, to_float(z)));
    }
  }
}

TEST_CASE("tractor vacuum kernel has dimension m+1") {
  for (int m = 1; m <= 3; ++m) {
    const CliffordModel t = build_tractor_model(m);
    CHECK(kernel_plane(t, tractor_vacuum(t)).dim() == m + 1);
  }
}

TEST_CASE("every nonzero spinor is pure when m=1") {
  // Spin(5): the m=1 tractor level is also all pure; Spin(7) is not
  const CliffordModel v0 = build_v0_model(1), t1 = build_tractor_model(1), t = build_tractor_model(2);
  Rng rng(1);
  for (int k = 0; k < 100; ++k) {
    CHECK(is_pure_rank(v0, random_spinor(v0, rng, 4)));
    CHECK(is_pure_succinct(v0, random_spinor(v0, rng, 4)));
    CHECK(is_pure_rank(t1, random_spinor(t1, rng, 4)));
  }
  int impure = 0;
  for (int k = 0; k < 50; ++k) impure += !is_pure_rank(t, random_spinor(t, rng));
  CHECK(impure > 0);
}

TEST_CASE("three purity tests agree on random spinors") {
  for (int m = 1; m <= 3; ++m)
    for (const CliffordModel& md : {build_v0_model(m), build_tractor_model(m)}) {
      Rng rng(40 + m);
      int pure = 0;
      for (int k = 0; k < 60; ++k) {
        const Vec<Scalar> z = k % 2 ? random_pure_spinor(md, rng) : random_spinor(md, rng);
        const bool r = is_pure_rank(md, z);
        pure += r;
        CHECK(r == is_pure_quadratic(md, z));
        CHECK(r == is_pure_succinct(md, z));
        const Vec<cplx> zf = to_float(z);
        CHECK(r == is_pure_rank(md, zf));
        CHECK(r == is_pure_quadratic(md, zf));
        CHECK(r == is_pure_succinct(md, zf));
      }
      CHECK(pure >= 30);
    }
}

TEST_CASE("pure spinors have nonvanishing middle form") {
  // Gamma^(M)(Z, Z) != 0 for pure Z
  Rng rng(7);
  for (int m = 1; m <= 3; ++m) {
    const CliffordModel t = build_tractor_model(m);
    for (int k = 0; k < 10; ++k) {
      const Vec<Scalar> z = random_pure_spinor(t, rng);
      bool nonzero = false;
      for (const Scalar& v : gamma_k_values(t, t.max_null(), z, z)) nonzero = nonzero || !v.is_zero();
      CHECK(nonzero);
    }
  }
}

TEST_CASE("m=3 counterexample with broken recursion is impure") {
  const CliffordModel t = build_tractor_model(3);
  const FockFrame vac = tractor_vacuum_frame(t);
  FockComponents c{vac.dim, FormVec(std::size_t{1} << vac.dim)};
  c.comps[0] = Scalar(1);
  c.comps[0b0011] = Scalar(1);
  c.comps[0b1100] = Scalar(1);
  const Vec<Scalar> z = fock_reconstruct(vac, c);
  CHECK_FALSE(is_pure_rank(t, z));
  CHECK_FALSE(is_pure_quadratic(t, z));
  CHECK_FALSE(is_pure_succinct(t, z));
  CHECK(kernel_plane(t, z).dim() < 4);
  CHECK_FALSE(fock_purity(vac, c));
  // completing the degree-4 part restores purity
  FormVec z2 = degree_part(c.comps, 2, vac.dim);
  const FockComponents done = complete_pure(vac.dim, FormVec(c.comps.size()), z2);
  CHECK(fock_relations_hold(done));
  CHECK(is_pure_rank(t, fock_reconstruct(vac, done)));
}

TEST_CASE("decomposable degree-2 part completes to a pure spinor") {
  const CliffordModel t = build_tractor_model(3);
  const FockFrame vac = tractor_vacuum_frame(t);
  const int n = vac.dim;
  Rng rng(8);
  for (int k = 0; k < 10; ++k) {
    FormVec p(std::size_t{1} << n), q(std::size_t{1} << n), z1(std::size_t{1} << n);
    for (int a = 0; a < n; ++a) {
      p[1u << a] = rng.integer(2);
      q[1u << a] = rng.integer(2);
      z1[1u << a] = rng.integer(2);
    }
    const FockComponents c = complete_pure(n, z1, wedge(p, 1, q, 1, n));
    CHECK(is_pure_rank(t, fock_reconstruct(vac, c)));
    CHECK(fock_purity(vac, c));
  }
}

TEST_CASE("Fock decomposition roundtrip and purity relations") {
  for (int m = 1; m <= 3; ++m) {
    const CliffordModel t = build_tractor_model(m);
    const FockFrame vac = tractor_vacuum_frame(t);
    Rng rng(50 + m);
    for (int k = 0; k < 40; ++k) {
      const Vec<Scalar> z = k % 2 ? random_pure_spinor(t, vac, rng) : random_spinor(t, rng);
      const FockComponents c = fock_decompose(vac, z);
      CHECK(fock_reconstruct(vac, c) == z);
      CHECK(fock_purity(vac, c) == is_pure_rank(t, z));
      const Vec<Scalar> cz = fock_reconstruct(vac, random_pure_components(rng, vac.dim, true, rng.coin()));
      if (!is_zero(cz)) CHECK(is_pure_rank(t, cz));
    }
  }
}

TEST_CASE("frame of a pure spinor puts it at the vacuum") {
  Rng rng(9);
  const CliffordModel t = build_tractor_model(2);
  for (int k = 0; k < 10; ++k) {
    const Vec<Scalar> xi = random_pure_spinor(t, rng);
    const FockFrame f = fock_frame(t, xi);
    const FockComponents c = fock_decompose(f, xi);
    CHECK(c.comps[0] == Scalar(1));
    for (std::size_t s = 1; s < c.comps.size(); ++s) CHECK(c.comps[s].is_zero());
    CHECK_THROWS(fock_frame(t, Vec<Scalar>(t.spinor_dim)));
  }
}

TEST_CASE("wedge is graded commutative") {
  Rng rng(10);
  const int n = 4;
  for (int k = 0; k < 20; ++k) {
    FormVec a = rng.integer_vec(1 << n, 2), b = rng.integer_vec(1 << n, 2);
    CHECK(wedge(a, 1, b, 1, n) == Scalar(-1) * wedge(b, 1, a, 1, n));
    CHECK(wedge(a, 2, b, 1, n) == wedge(b, 1, a, 2, n));
    CHECK(is_zero(wedge(a, 1, a, 1, n)));
  }
}

TEST_CASE("tractor purity agrees with the split test") {
  Rng rng(12);
  for (int m = 1; m <= 3; ++m) {
    const CliffordModel t = build_tractor_model(m), v0 = build_v0_model(m);
    for (int k = 0; k < 30; ++k) {
      const Vec<Scalar> z = k % 2 ? random_pure_spinor(t, rng) : random_spinor(t, rng);
      CHECK(split_purity(v0, split(z)) == is_pure_succinct(t, z));
      CHECK(join(split(z)) == z);
    }
  }
}

TEST_CASE("chirality of even spinors") {
  const CliffordModel e = build_v0_model(2, Parity::even);
  Vec<Scalar> z(e.spinor_dim);
  for (int i = 0; i < e.spinor_dim; ++i)
    if (e.chirality[i] > 0) z[i] = Scalar(i + 1);
  CHECK(is_chiral(e, z));
  Vec<Scalar> w(e.spinor_dim, Scalar(1));
  CHECK_FALSE(is_chiral(e, w));
}
