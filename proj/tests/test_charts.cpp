#include <algorithm>

#include "doctest.h"
#include "nullfoliate/charts.hpp"

using namespace nf;

namespace {

Vec<Scalar> unit(int n, int a, Scalar s = Scalar(1)) {
  Vec<Scalar> v(n);
  v[a] = s;
  return v;
}

Vec<Scalar> full_point(const ChartPointF& p) {
  Vec<Scalar> pt = chart_x(p);
  pt.insert(pt.end(), p.pi_A.begin(), p.pi_A.end());
  pt.insert(pt.end(), p.pi_AB.begin(), p.pi_AB.end());
  return pt;
}

}  // namespace

TEST_CASE("chart spinors: exponential form, purity, kernel dimension") {
  for (int m = 1; m <= 3; ++m) {
    const ConformalFrame fr = conformal_frame(m);
    const ChartLayout L(m);
    Rng rng(m);
    for (int k = 0; k < 20; ++k) {
      const ChartPointF p = random_chart_point(L, rng);
      const Vec<Scalar> pi = pi_spinor_from_chart(fr.v0, p.pi_A, p.pi_AB);
      CHECK(pi == pi_spinor_exp(fr.v0, p.pi_A, p.pi_AB));
      CHECK(is_pure_rank(fr.v0, pi));
      CHECK(kernel_plane(fr.v0, pi).dim() == m);
      CHECK(pi[0] == Scalar(1));
    }
  }
}

TEST_CASE("incidence: lift, X.Gamma Z = 0, read back") {
  for (int m = 1; m <= 3; ++m) {
    const ConformalFrame fr = conformal_frame(m);
    const ChartLayout L(m);
    Rng rng(10 + m);
    for (int k = 0; k < 20; ++k) {
      const ChartPointF p = random_chart_point(L, rng);
      const ChartPointPT q = mu_project(L, p);
      const Vec<Scalar> Z = lift_twistor(fr, q);
      CHECK(is_pure_rank(fr.tractor, Z));
      CHECK(is_zero(fr.tractor.gamma(embed_point(fr, chart_x(p))) * Z));
      CHECK(incident(fr, chart_x(p), Z));
      // a different point is generically not incident
      Vec<Scalar> x2 = chart_x(p);
      x2[0] += Scalar(1);
      x2[m] += Scalar(2);
      CHECK_FALSE(incident(fr, x2, Z));
      const ChartPointPT back = read_chart(fr, Scalar::gaussian(3, -1) * Z);
      CHECK(back.omega_0 == q.omega_0);
      CHECK(back.omega_A == q.omega_A);
      CHECK(back.pi_A == q.pi_A);
      CHECK(back.pi_AB == q.pi_AB);
    }
  }
}

TEST_CASE("mini-twistor coordinate: composed formula and Y flow") {
  for (int m = 1; m <= 3; ++m) {
    const ChartLayout L(m);
    Rng rng(20 + m);
    for (int k = 0; k < 20; ++k) {
      const ChartPointF p = random_chart_point(L, rng);
      const ChartPointPT q = mu_project(L, p);
      const MiniTwistorPoint t = tau_project(q);
      for (int a = 0; a < m; ++a) {
        Scalar w = p.z_up[a] + p.pi_A[a] * p.u;
        for (int b = 0; b < m; ++b) {
          const Scalar pab = a == b ? Scalar() : a < b ? p.pi_AB[L.pair_index(a, b)] : -p.pi_AB[L.pair_index(b, a)];
          w += (pab - Scalar::rational(1, 2) * p.pi_A[a] * p.pi_A[b]) * p.z_dn[b];
        }
        CHECK(w == t.omega_bar_A[a]);
      }
      const Scalar s = rng.rational(4);
      const ChartPointPT f = y_flow(q, s);
      CHECK(f.omega_0 == q.omega_0 + s);
      for (int a = 0; a < m; ++a) CHECK(f.omega_A[a] == q.omega_A[a] - Scalar::rational(1, 2) * q.pi_A[a] * s);
      CHECK(tau_project(f).omega_bar_A == t.omega_bar_A);
    }
  }
}

TEST_CASE("frames: theta0 pairs to 1 with U and kills Z^A; twistor coordinates constant along Z^A") {
  for (int m = 1; m <= 3; ++m) {
    const ChartLayout L(m);
    const FFrames ff = chart_frames(L);
    const PolyVec mu = mu_map(L);
    CHECK(pairing(ff.theta0, ff.U) == Poly(L.nF(), Scalar(1)));
    for (int a = 0; a < m; ++a) {
      CHECK(pairing(ff.theta0, ff.Z[a]).is_zero());
      for (const Poly& c : mu) CHECK(apply_field(ff.Z[a], c).is_zero());
    }
    Rng rng(m);
    const Vec<Scalar> pt = full_point(random_chart_point(L, rng));
    const Mat<Scalar> P = frame_pairings(ff, pt);
    CHECK(P.rows == P.cols);
    // alpha^{AB} against the unit-weight X_AB pairs to 1/2
    const int pairs = m * (m - 1) / 2;
    for (int i = 0; i < P.rows; ++i) {
      const bool half = i >= 2 * m + 1 && i < 2 * m + 1 + pairs;
      CHECK(P(i, i) == (half ? Scalar::rational(1, 2) : Scalar(1)));
    }
  }
}

TEST_CASE("pullback identity and mini-twistor annihilation as polynomial identities") {
  for (int m = 1; m <= 3; ++m) {
    const ChartLayout L(m);
    for (const PolyVec& r : pullback_residual(L)) CHECK(is_zero(r));
    const FFrames ff = chart_frames(L);
    const PTFrames pf = pt_frames(L);
    const PolyVec mu = mu_map(L), wb = omega_bar_pt(L);
    for (int b = 0; b < m; ++b) {
      CHECK(apply_field(pf.Y, wb[b]).is_zero());
      const Poly wf = wb[b].compose(mu);
      CHECK(apply_field(ff.U, wf).is_zero());
      for (int a = 0; a < m; ++a) CHECK(apply_field(ff.Z[a], wf).is_zero());
    }
  }
}

TEST_CASE("V.gamma spectrum on basic vectors") {
  for (int m = 1; m <= 3; ++m) {
    const CliffordModel v0 = build_v0_model(m);
    const EigenReport u = spin_endo_eigen(v0, unit(v0.N, 2 * m));
    REQUIRE(u.exact);
    REQUIRE(u.branches.size() == 2);
    CHECK(*u.branches[0].exact == -Scalar::i());
    CHECK(*u.branches[1].exact == Scalar::i());
    for (const auto& b : u.branches) CHECK(b.algebraic == (1 << (m - 1)));
    const EigenReport e = spin_endo_eigen(v0, unit(v0.N, 0));
    REQUIRE(e.branches.size() == 1);
    CHECK(e.branches[0].exact->is_zero());
    CHECK(e.branches[0].algebraic == (1 << m));
    CHECK(e.branches[0].geometric == (1 << (m - 1)));
  }
}

TEST_CASE("float eigensolve for V.V = 4 gives +-2i") {
  Rng rng(7);
  for (int m = 1; m <= 3; ++m) {
    const CliffordModel v0 = build_v0_model(m);
    for (int k = 0; k < 5; ++k) {
      Vec<cplx> v = rng.complex_vec(v0.N);
      const cplx vv = dot(v, v0.metric<cplx>() * v);
      for (auto& c : v) c *= 2.0 / std::sqrt(vv);
      const EigenReport r = float_eigen(v0.gamma(v));
      REQUIRE(r.branches.size() == 2);
      std::vector<cplx> vals{r.branches[0].value, r.branches[1].value};
      std::sort(vals.begin(), vals.end(), [](cplx a, cplx b) { return a.imag() < b.imag(); });
      CHECK(std::abs(vals[0] - cplx(0, -2)) < 1e-9);
      CHECK(std::abs(vals[1] - cplx(0, 2)) < 1e-9);
    }
  }
}

TEST_CASE("characteristic polynomial of V.gamma") {
  // (t^2 + V.V)^(2^(m-1))
  const CliffordModel v0 = build_v0_model(2);
  Vec<Scalar> v(v0.N);
  v[0] = 1;
  v[2] = 2;
  const auto c = char_poly(v0.gamma(v));
  REQUIRE(c.size() == 5);
  CHECK(c[4] == Scalar(1));
  CHECK(c[3].is_zero());
  CHECK(c[2] == Scalar(8));
  CHECK(c[1].is_zero());
  CHECK(c[0] == Scalar(16));
}

TEST_CASE("normal section zero sets") {
  const CliffordModel v1 = build_v0_model(1);
  const ZeroSetReport n1 = normal_section_zeros(v1, unit(3, 0));
  CHECK(n1.null);
  REQUIRE(n1.branches.size() == 1);
  CHECK(n1.branches[0].dim() == 0);
  const ZeroSetReport u1 = normal_section_zeros(v1, unit(3, 2));
  CHECK_FALSE(u1.null);
  REQUIRE(u1.branches.size() == 2);
  for (const auto& b : u1.branches) {
    CHECK(b.multiplicity == 1);
    CHECK(b.dim() == 0);
  }
  REQUIRE(u1.discriminant.has_value());
  CHECK_FALSE(u1.discriminant->is_zero());
  CHECK(n1.discriminant->is_zero());
  for (int m = 2; m <= 3; ++m) {
    const CliffordModel v0 = build_v0_model(m);
    const ZeroSetReport z = normal_section_zeros(v0, unit(v0.N, 0));
    REQUIRE(z.branches.size() == 1);
    CHECK(z.branches[0].dim() == m * (m - 1) / 2);
  }
}

TEST_CASE("block CKY forms: eigenvalues 2(+-l1 +-l2 ...), pure eigenspinors") {
  Rng rng(9);
  for (int m = 1; m <= 3; ++m) {
    const CliffordModel v0 = build_v0_model(m);
    const int n = v0.N;
    for (int k = 0; k < 4; ++k) {
      std::vector<long> lam(m);
      Vec<Scalar> sig(n * n);
      for (int a = 0; a < m; ++a) {
        lam[a] = k == 0 ? 2 * a + 1 : rng.uniform(1, 9) * (a + 1) * 10 + a;
        sig[a * n + (m + a)] = Scalar(lam[a]);
        sig[(m + a) * n + a] = Scalar(-lam[a]);
      }
      std::vector<double> expect;
      for (unsigned s = 0; s < (1u << m); ++s) {
        long t = 0;
        for (int a = 0; a < m; ++a) t += (s >> a & 1) ? -lam[a] : lam[a];
        expect.push_back(2.0 * t);
      }
      std::sort(expect.begin(), expect.end());
      const CkyEigenReport r = cky_eigenspinors(v0, sig);
      REQUIRE(r.branches.size() == expect.size());
      std::vector<double> got;
      for (const auto& b : r.branches) {
        got.push_back(b.value.real());
        CHECK(std::abs(b.value.imag()) < 1e-9);
        CHECK(b.multiplicity == 1);
        CHECK(b.pure);
      }
      std::sort(got.begin(), got.end());
      for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - expect[i]) < 1e-8);
    }
  }
  // curated m=2 block form +-1, +-3 is solved exactly
  const CliffordModel v0 = build_v0_model(2);
  Vec<Scalar> sig(25);
  sig[0 * 5 + 2] = Scalar(1);
  sig[2 * 5 + 0] = Scalar(-1);
  sig[1 * 5 + 3] = Scalar(3);
  sig[3 * 5 + 1] = Scalar(-3);
  const CkyEigenReport r = cky_eigenspinors(v0, sig);
  CHECK(r.exact);
  REQUIRE(r.branches.size() == 4);
  for (const auto& b : r.branches) {
    REQUIRE(b.exact.has_value());
    REQUIRE(b.spinor.has_value());
    CHECK(cky_endomorphism(v0, sig) * *b.spinor == *b.exact * *b.spinor);
    CHECK(is_pure_rank(v0, *b.spinor));
  }
}
