#include "doctest.h"
#include "nullfoliate/purespinor.hpp"
#include "nullfoliate/tractor.hpp"

using namespace nf;

namespace {

Vec<Scalar> lower(const ConformalFrame& fr, const Vec<Scalar>& x) { return fr.gram_v0 * x; }

// closed-form flat-space CKY data at x
struct CkyAt {
  Vec<Scalar> sigma, mu, phi;
};

CkyAt cky_closed_form(const ConformalFrame& fr, const CKYQuadruple& q, const Vec<Scalar>& x) {
  const int n = fr.n();
  const Vec<Scalar> xl = lower(fr, x);
  const Scalar xx = dot(x, xl);
  auto s2 = [&](const Vec<Scalar>& t, int a, int b) { return t[a * n + b]; };
  auto s3 = [&](const Vec<Scalar>& t, int a, int b, int c) { return t[(a * n + b) * n + c]; };
  CkyAt r{Vec<Scalar>(n * n), Vec<Scalar>(n * n * n), Vec<Scalar>(n)};
  for (int a = 0; a < n; ++a) {
    Scalar phi = q.phi0[a];
    for (int b = 0; b < n; ++b) phi -= s2(q.rho0, a, b) * x[b];
    r.phi[a] = phi;
    for (int b = 0; b < n; ++b) {
      Scalar s = s2(q.sigma0, a, b) + xl[a] * q.phi0[b] - xl[b] * q.phi0[a];
      Scalar rx_a, rx_b;
      for (int c = 0; c < n; ++c) {
        s += s3(q.mu0, a, b, c) * x[c];
        rx_b += s2(q.rho0, b, c) * x[c];
        rx_a += s2(q.rho0, a, c) * x[c];
      }
      s -= xl[a] * rx_b - xl[b] * rx_a + Scalar::rational(1, 2) * xx * s2(q.rho0, a, b);
      r.sigma[a * n + b] = s;
      for (int c = 0; c < n; ++c) {
        // 3 x_[a rho_bc] over the six permutations
        const Scalar alt = xl[a] * s2(q.rho0, b, c) + xl[b] * s2(q.rho0, c, a) + xl[c] * s2(q.rho0, a, b);
        r.mu[(a * n + b) * n + c] = s3(q.mu0, a, b, c) - alt;
      }
    }
  }
  return r;
}

}  // namespace

TEST_CASE("frame invariants and derivatives") {
  for (int m = 1; m <= 3; ++m) {
    const ConformalFrame fr = conformal_frame(m);
    CHECK(frame_invariants_hold(fr));
    const FrameFields f = frame_fields(fr);
    CHECK(frame_derivatives_hold(fr, f));
    const Vec<Scalar> zero(fr.n());
    for (int a = 0; a < fr.n(); ++a) {
      CHECK(eval(derivative(f.X, a), zero) == fr.Z0[a]);
      for (int b = 0; b < fr.n(); ++b) {
        const PolyVec d = derivative(f.Z[b], a);
        CHECK(is_zero(derivative(d, 0)));
        CHECK(eval(d, zero) == -fr.gram_v0(a, b) * fr.Y0);
      }
    }
    Rng rng(m);
    const Vec<Scalar> x = rng.integer_vec(fr.n(), 3);
    const Vec<Scalar> X = embed_point(fr, x);
    CHECK(bilinear(X, fr.tractor.gram, X).is_zero());
    CHECK(eval(f.X, x) == X);
  }
}

TEST_CASE("injectors: dO = gamma_a I / sqrt2 and the bundle formula") {
  for (int m = 1; m <= 3; ++m) {
    const ConformalFrame fr = conformal_frame(m);
    const InjectorFields inj = injector_fields(fr);
    CHECK(injector_derivatives_hold(fr, inj));
    for (int a = 0; a < fr.n(); ++a)
      CHECK(is_zero(inj.O.derivative(a) - Scalar::inv_sqrt2() * (inj.I.c * fr.v0.gens[a])));
    Rng rng(10 + m);
    for (int k = 0; k < 3; ++k) {
      const Vec<Scalar> x = k == 0 ? Vec<Scalar>(fr.n()) : rng.integer_vec(fr.n(), 2);
      for (int A = 0; A < fr.tractor.N; ++A) {
        Vec<Scalar> v(fr.tractor.N);
        v[A] = Scalar(1);
        CHECK(is_zero(bundle_gamma(fr, inj, x, v) - fr.tractor.gens[A]));
      }
    }
  }
}

TEST_CASE("CKS fields: closed form, equation, finite differences, constancy") {
  for (int m = 1; m <= 3; ++m) {
    const ConformalFrame fr = conformal_frame(m);
    const InjectorFields inj = injector_fields(fr);
    Rng rng(20 + m);
    for (int k = 0; k < 10; ++k) {
      const int d = fr.v0.spinor_dim;
      const TractorSpinorPair p{rng.gaussian_vec(d, 2), rng.gaussian_vec(d, 2)};
      const CksFields f = cks_field(fr, p);
      for (const Poly& c : f.xi) CHECK(c.degree() <= 1);
      const Vec<Scalar> x = rng.integer_vec(fr.n(), 3);
      CHECK(eval(f.xi, x) == p.xi0 - Scalar::inv_sqrt2() * (fr.v0.gamma(x) * p.zeta0));
      CHECK(verify_cks(fr, f));
      Vec<double> xf(fr.n());
      for (auto& e : xf) e = rng.normal_ish();
      CHECK(cks_fd_residual(fr, f, xf) < 1e-8);
      const PolyVec T = assemble_tractor_spinor(fr, inj, f);
      for (int a = 0; a < fr.n(); ++a) CHECK(is_zero(derivative(T, a)));
      CHECK(eval(T, x) == tractor_spinor(p));
      // flipping the sign of the linear part breaks the equation
      CksFields w = f;
      for (std::size_t i = 0; i < w.xi.size(); ++i) w.xi[i] = Poly(fr.n(), Scalar(2) * p.xi0[i]) - f.xi[i];
      if (!is_zero(p.zeta0)) CHECK_FALSE(verify_cks(fr, w));
    }
  }
}

TEST_CASE("pure tractor spinors give pure CKS values") {
  Rng rng(5);
  for (int m = 1; m <= 3; ++m) {
    const ConformalFrame fr = conformal_frame(m);
    for (int k = 0; k < 5; ++k) {
      const OmegaPi z = split(random_pure_spinor(fr.tractor, rng));
      const CksFields f = cks_field(fr, {z.omega, z.pi});
      for (int s = 0; s < 4; ++s) {
        const Vec<Scalar> xi = eval(f.xi, rng.integer_vec(fr.n(), 3));
        if (!is_zero(xi)) CHECK(is_pure_rank(fr.v0, xi));
      }
    }
  }
}

TEST_CASE("CKY fields match the integrated closed form") {
  for (int m = 1; m <= 3; ++m) {
    const ConformalFrame fr = conformal_frame(m);
    Rng rng(30 + m);
    for (int k = 0; k < 6; ++k) {
      const CKYQuadruple q = random_cky_quadruple(fr, rng);
      REQUIRE(cky_antisymmetric(q));
      const CkyFields f = cky_field(fr, q);
      CHECK(verify_cky(fr, f));
      const PolyVec S = assemble_sigma(fr, f);
      CHECK(sigma_parallel(S, fr.n()));
      for (int s = 0; s < 3; ++s) {
        const Vec<Scalar> x = rng.integer_vec(fr.n(), 3);
        const CkyAt c = cky_closed_form(fr, q, x);
        CHECK(eval(f.sigma, x) == c.sigma);
        CHECK(eval(f.mu, x) == c.mu);
        CHECK(eval(f.phi, x) == c.phi);
        CHECK(eval(f.rho, x) == q.rho0);
      }
    }
  }
}

TEST_CASE("closed CKY: sigma = sigma0 + 2 x^phi0") {
  const ConformalFrame fr = conformal_frame(2);
  const int n = fr.n();
  Rng rng(3);
  CKYQuadruple q = random_cky_quadruple(fr, rng);
  q.mu0.assign(q.mu0.size(), Scalar());
  q.rho0.assign(q.rho0.size(), Scalar());
  const CkyFields f = cky_field(fr, q);
  const Vec<Scalar> x = rng.integer_vec(n, 3), xl = fr.gram_v0 * x;
  const Vec<Scalar> s = eval(f.sigma, x);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) CHECK(s[a * n + b] == q.sigma0[a * n + b] + xl[a] * q.phi0[b] - xl[b] * q.phi0[a]);
  CHECK(eval(f.phi, x) == q.phi0);
}

TEST_CASE("a non-CKY quadratic perturbation is rejected") {
  const ConformalFrame fr = conformal_frame(2);
  const int n = fr.n();
  Rng rng(4);
  CkyFields f = cky_field(fr, random_cky_quadruple(fr, rng));
  const Poly bump = Poly::var(n, 0) * Poly::var(n, 2);
  f.sigma[0 * n + 1] += bump;
  f.sigma[1 * n + 0] -= bump;
  CHECK_FALSE(verify_cky(fr, f));
}
