#include "doctest.h"
#include "nullfoliate/clifford.hpp"
#include "nullfoliate/purespinor.hpp"

using namespace nf;

namespace {

Vec<Scalar> unit(int n, int a) {
  Vec<Scalar> v(n);
  v[a] = Scalar(1);
  return v;
}

// symmetric iff k = M or M + 1 (mod 4)
int expected_class(int max_null, int k) {
  const int r = ((k - max_null) % 4 + 4) % 4;
  return r <= 1 ? 1 : -1;
}

}  // namespace

TEST_CASE("Clifford identity for both models, both parities") {
  for (int m = 1; m <= 3; ++m)
    for (Parity p : {Parity::odd, Parity::even}) {
      CHECK(clifford_identity_holds(build_v0_model(m, p)));
      CHECK(clifford_identity_holds(build_tractor_model(m, p)));
    }
}

TEST_CASE("dimensions") {
  CHECK(build_tractor_model(3).spinor_dim == 16);
  CHECK(build_tractor_model(3).N == 9);
  CHECK(build_v0_model(2).spinor_dim == 4);
  CHECK(build_v0_model(2).N == 5);
  CHECK(fock_basis(3).size() == 8);
}

TEST_CASE("m=1: u gamma o = i o and gamma(f) gamma(e) o = -2 o") {
  const CliffordModel v = build_v0_model(1);
  const Vec<Scalar> o = v0_vacuum(v);
  CHECK(v.gamma(unit(3, 2)) * o == Scalar::i() * o);
  const Vec<Scalar> d1 = v.gamma(unit(3, 0)) * o;
  CHECK(v.gamma(unit(3, 1)) * d1 == Scalar(-2) * o);
  CHECK(is_zero(v.gamma(unit(3, 1)) * o));
}

TEST_CASE("generators square to minus the norm") {
  Rng rng(3);
  for (int m = 1; m <= 3; ++m) {
    const CliffordModel t = build_tractor_model(m);
    for (int k = 0; k < 10; ++k) {
      const Vec<Scalar> v = rng.integer_vec(t.N, 3);
      const Mat<Scalar> g = t.gamma(v);
      CHECK(is_zero(g * g + bilinear(v, t.gram, v) * Mat<Scalar>::identity(t.spinor_dim)));
    }
  }
}

TEST_CASE("Gamma^(k) symmetry follows the mod-4 rule") {
  for (int m = 1; m <= 3; ++m)
    for (const CliffordModel& md : {build_v0_model(m), build_tractor_model(m)})
      for (int k = 0; k <= md.N; ++k) {
        CAPTURE(m);
        CAPTURE(k);
        CHECK(symmetry_class(gamma_k(md, k)) == expected_class(md.N / 2, k));
        CHECK(predicted_symmetry(md, k) == expected_class(md.N / 2, k));
      }
}

TEST_CASE("Gamma^(k) values are bilinear and match the matrix table") {
  Rng rng(5);
  const CliffordModel t = build_tractor_model(2);
  const KForm<Scalar> f = gamma_k(t, 3);
  for (int c = 0; c < 10; ++c) {
    const Vec<Scalar> z = rng.gaussian_vec(t.spinor_dim, 2), w = rng.gaussian_vec(t.spinor_dim, 2);
    const auto vals = gamma_k_values(t, 3, z, w);
    const auto masks = subsets_of_size(t.N, 3);
    REQUIRE(vals.size() == masks.size());
    for (std::size_t i = 0; i < masks.size(); ++i) {
      CHECK(vals[i] == gamma_k_value(t, masks[i], z, w));
      CHECK(vals[i] == bilinear(z, f.table.at(masks[i]), w));
    }
  }
}

TEST_CASE("merge sign counts inversions") {
  CHECK(merge_sign(0b001, 0b010) == 1);
  CHECK(merge_sign(0b010, 0b001) == -1);
  CHECK(merge_sign(0b100, 0b011) == 1);
  CHECK(merge_sign(0b010, 0b101) == -1);
  CHECK(subsets_of_size(5, 2).size() == 10);
}

TEST_CASE("reduction of an even model by a unit vector") {
  for (int m = 1; m <= 3; ++m) {
    const CliffordModel ev = build_tractor_model(m + 1, Parity::even);
    Vec<Scalar> u(ev.N);
    u[1] = Scalar(1);
    u[1 + (m + 1)] = Scalar::rational(1, 2);
    const Reduction r = even_to_odd_reduce(ev, u);
    CHECK(r.model.N == ev.N - 1);
    const ReductionCheck c = check_reduction(ev, r);
    CHECK(c.clifford);
    CHECK(c.forms);
    CHECK(c.checked > 0);
  }
  CHECK_THROWS(even_to_odd_reduce(build_tractor_model(2), Vec<Scalar>(7)));
}

TEST_CASE("even models carry chirality") {
  const CliffordModel e = build_v0_model(2, Parity::even);
  REQUIRE(static_cast<int>(e.chirality.size()) == e.spinor_dim);
  int plus = 0;
  for (int c : e.chirality) plus += c > 0;
  CHECK(plus == e.spinor_dim / 2);
  // generators swap chirality
  for (const auto& g : e.gens)
    for (int i = 0; i < g.rows; ++i)
      for (int j = 0; j < g.cols; ++j)
        if (!g(i, j).is_zero()) CHECK(e.chirality[i] == -e.chirality[j]);
}
