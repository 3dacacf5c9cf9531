#include "doctest.h"
#include "nullfoliate/matrix.hpp"
#include "nullfoliate/random.hpp"

using namespace nf;

namespace {

Scalar s(long a, long b = 0, long c = 0, long d = 0) { return Scalar(a, b, c, d); }

mpq_class q(Rng& rng) {
  mpq_class v(rng.uniform(-5, 5), rng.uniform(1, 4));
  v.canonicalize();
  return v;
}

Scalar random_scalar(Rng& rng) {
  const mpq_class a = q(rng), b = q(rng), c = q(rng), d = q(rng);
  return Scalar(a, b, c, d);
}

}  // namespace

TEST_CASE("inverse of 1 + sqrt2 is sqrt2 - 1") {
  const Scalar x = Scalar(1) + Scalar::sqrt2();
  const Scalar y = Scalar(1) / x;
  CHECK(y == s(-1, 0, 1, 0));
  CHECK(x * y == Scalar(1));
}

TEST_CASE("sqrt2 squared and i squared") {
  CHECK(Scalar::sqrt2() * Scalar::sqrt2() == Scalar(2));
  CHECK(Scalar::i() * Scalar::i() == Scalar(-1));
  CHECK(Scalar::inv_sqrt2() * Scalar::sqrt2() == Scalar(1));
}

TEST_CASE("field axioms on random elements") {
  Rng rng(11);
  for (int k = 0; k < 200; ++k) {
    const Scalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
    if (!a.is_zero()) CHECK(a * a.inv() == Scalar(1));
    // float image is a ring homomorphism
    CHECK(std::abs((a * b).to_complex() - a.to_complex() * b.to_complex()) < 1e-9);
  }
}

TEST_CASE("division by zero throws") { CHECK_THROWS_AS(Scalar(1) / Scalar(), DivisionByZero); }

TEST_CASE("square roots inside the field") {
  CHECK(sqrt(Scalar(4)) * sqrt(Scalar(4)) == Scalar(4));
  CHECK(sqrt(Scalar(-9)) * sqrt(Scalar(-9)) == Scalar(-9));
  CHECK(sqrt(Scalar(2)) * sqrt(Scalar(2)) == Scalar(2));
  CHECK(sqrt(Scalar::i() * Scalar(2)) * sqrt(Scalar::i() * Scalar(2)) == Scalar::i() * Scalar(2));
  CHECK_FALSE(has_sqrt(Scalar(3)));
  CHECK_THROWS_AS(sqrt(Scalar(3)), IrrationalOutsideField);
  Rng rng(3);
  for (int k = 0; k < 100; ++k) {
    const Scalar a = random_scalar(rng), sq = a * a;
    REQUIRE(has_sqrt(sq));
    const Scalar r = sqrt(sq);
    CHECK(r * r == sq);
    CHECK((r == a || r == -a));
  }
}

TEST_CASE("canonical string roundtrip") {
  Rng rng(5);
  for (int k = 0; k < 100; ++k) {
    const Scalar a = random_scalar(rng);
    CHECK(Scalar::parse(a.str()) == a);
  }
  CHECK(Scalar().str() == "(0/1 + 0/1·i) + (0/1 + 0/1·i)·sqrt2");
  CHECK_THROWS(Scalar::parse("1 + i"));
}

TEST_CASE("compare is a total order on real parts first") {
  CHECK(compare(Scalar(1), Scalar::sqrt2()) < 0);
  CHECK(compare(Scalar::sqrt2(), Scalar::rational(3, 2)) < 0);
  CHECK(compare(Scalar::i(), Scalar(0)) > 0);
  CHECK(compare(Scalar(2), Scalar(2)) == 0);
}

TEST_CASE("rank of [[1,2],[2,4]] is 1") {
  Mat<Scalar> m(2, 2);
  m(0, 0) = 1;
  m(0, 1) = 2;
  m(1, 0) = 2;
  m(1, 1) = 4;
  CHECK(rank(m) == 1);
  CHECK(bareiss_rank(m) == 1);
  const Subspace<Scalar> k = kernel(m);
  REQUIRE(k.dim() == 1);
  CHECK(is_zero(m * k.basis.row(0)));
}

TEST_CASE("Bareiss rank agrees with elimination rank") {
  Rng rng(17);
  for (int k = 0; k < 100; ++k) {
    const int r = static_cast<int>(rng.uniform(1, 5)), c = static_cast<int>(rng.uniform(1, 5));
    const int inner = static_cast<int>(rng.uniform(1, 4));
    Mat<Scalar> a(r, inner), b(inner, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < inner; ++j) a(i, j) = rng.gaussian(2);
    for (int i = 0; i < inner; ++i)
      for (int j = 0; j < c; ++j) b(i, j) = rng.gaussian(2);
    const Mat<Scalar> m = a * b;
    CHECK(bareiss_rank(m) == rank(m));
    CHECK(rank(m) <= inner);
    CHECK(kernel(m).dim() == c - rank(m));
    // float rank agrees on these small integer matrices
    CHECK(rank(to_float(m)) == rank(m));
  }
}

TEST_CASE("two generic 3-planes in C^5 meet in a line") {
  Rng rng(23);
  for (int k = 0; k < 20; ++k) {
    Mat<Scalar> u(3, 5), v(3, 5);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 5; ++j) {
        u(i, j) = rng.gaussian(3);
        v(i, j) = rng.gaussian(3);
      }
    if (rank(u) < 3 || rank(v) < 3 || rank(vstack(u, v)) < 5) continue;
    const Subspace<Scalar> su = span(u), sv = span(v);
    const Subspace<Scalar> w = intersect(su, sv);
    REQUIRE(w.dim() == 1);
    CHECK(contains(su, w.basis.row(0)));
    CHECK(contains(sv, w.basis.row(0)));
  }
}

TEST_CASE("solve returns a solution or nothing") {
  Mat<Scalar> a(2, 2);
  a(0, 0) = 1;
  a(0, 1) = 1;
  a(1, 0) = 1;
  a(1, 1) = 1;
  CHECK_FALSE(solve(a, Vec<Scalar>{Scalar(1), Scalar(2)}).has_value());
  const auto x = solve(a, Vec<Scalar>{Scalar(3), Scalar(3)});
  REQUIRE(x.has_value());
  CHECK(a * *x == Vec<Scalar>{Scalar(3), Scalar(3)});
}

TEST_CASE("rng streams are reproducible") {
  Rng a = Rng::for_case(9, 4), b = Rng::for_case(9, 4), c = Rng::for_case(9, 5);
  bool differ = false;
  for (int k = 0; k < 10; ++k) {
    const long x = a.uniform(-100, 100), y = b.uniform(-100, 100), z = c.uniform(-100, 100);
    CHECK(x == y);
    CHECK(x >= -100);
    CHECK(x <= 100);
    differ = differ || x != z;
  }
  CHECK(differ);
  // mt19937_64 reference value for the default seed
  Rng d(5489);
  CHECK(d.next() == 14514284786278117030ULL);
}
