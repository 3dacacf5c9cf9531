#include "nullfoliate/tractor.hpp"

#include <array>
#include <stdexcept>

namespace nf {

ConformalFrame conformal_frame(int m, Parity parity) {
  ConformalFrame fr;
  fr.m = m;
  fr.v0 = build_v0_model(m, parity);
  fr.tractor = build_tractor_model(m, parity);
  const int N = fr.tractor.N;
  fr.X0 = Vec<Scalar>(N);
  fr.Y0 = Vec<Scalar>(N);
  fr.X0[tractor_x(fr.tractor)] = Scalar(1);
  fr.Y0[tractor_y(fr.tractor)] = Scalar(1);
  for (int a = 0; a < fr.v0.N; ++a) {
    Vec<Scalar> z(N);
    z[1 + a] = Scalar(1);
    fr.Z0.push_back(z);
  }
  fr.gram_v0 = fr.v0.gram;
  return fr;
}

bool frame_invariants_hold(const ConformalFrame& fr) {
  const Mat<Scalar>& h = fr.tractor.gram;
  if (bilinear(fr.X0, h, fr.Y0) != Scalar(1)) return false;
  if (!bilinear(fr.X0, h, fr.X0).is_zero() || !bilinear(fr.Y0, h, fr.Y0).is_zero()) return false;
  for (int a = 0; a < fr.n(); ++a) {
    if (!bilinear(fr.Z0[a], h, fr.X0).is_zero() || !bilinear(fr.Z0[a], h, fr.Y0).is_zero()) return false;
    for (int b = 0; b < fr.n(); ++b)
      if (bilinear(fr.Z0[a], h, fr.Z0[b]) != fr.gram_v0(a, b)) return false;
  }
  return true;
}

Vec<Scalar> embed_point(const ConformalFrame& fr, const Vec<Scalar>& x) {
  Vec<Scalar> X = fr.X0;
  for (int a = 0; a < fr.n(); ++a)
    if (!x[a].is_zero()) X += x[a] * fr.Z0[a];
  Scalar q = Scalar::rational(-1, 2) * bilinear(x, fr.gram_v0, x);
  if (!q.is_zero()) X += q * fr.Y0;
  return X;
}

namespace {

PolyVec scaled(const Poly& p, const Vec<Scalar>& v) {
  PolyVec out(v.size(), Poly(p.nvars()));
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) out[i] = v[i] * p;
  return out;
}

PolyVec& add_to(PolyVec& a, const PolyVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

// x_a = g_ab x^b as polynomials
PolyVec lowered_coords(const ConformalFrame& fr) {
  const int n = fr.n();
  PolyVec xl(n, Poly(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (!fr.gram_v0(a, b).is_zero()) xl[a] += fr.gram_v0(a, b) * Poly::var(n, b);
  return xl;
}

Poly norm_sq(const ConformalFrame& fr) {
  const int n = fr.n();
  PolyVec xl = lowered_coords(fr);
  Poly s(n);
  for (int a = 0; a < n; ++a) s += Poly::var(n, a) * xl[a];
  return s;
}

}  // namespace

FrameFields frame_fields(const ConformalFrame& fr) {
  const int n = fr.n();
  FrameFields f;
  f.Y = constant_vec(n, fr.Y0);
  f.X = constant_vec(n, fr.X0);
  for (int a = 0; a < n; ++a) add_to(f.X, scaled(Poly::var(n, a), fr.Z0[a]));
  add_to(f.X, scaled(Scalar::rational(-1, 2) * norm_sq(fr), fr.Y0));
  PolyVec xl = lowered_coords(fr);
  for (int a = 0; a < n; ++a) {
    PolyVec z = constant_vec(n, fr.Z0[a]);
    add_to(z, scaled(-xl[a], fr.Y0));
    f.Z.push_back(std::move(z));
  }
  return f;
}

bool frame_derivatives_hold(const ConformalFrame& fr, const FrameFields& f) {
  const int n = fr.n();
  for (int a = 0; a < n; ++a) {
    if (!is_zero(derivative(f.X, a) - f.Z[a])) return false;
    if (!is_zero(derivative(f.Y, a))) return false;
    for (int b = 0; b < n; ++b) {
      PolyVec r = derivative(f.Z[b], a);
      add_to(r, scaled(Poly(n, fr.gram_v0(a, b)), fr.Y0));
      if (!is_zero(r)) return false;
    }
  }
  return true;
}

Mat<Scalar> AffineMat::at(const Vec<Scalar>& x) const {
  Mat<Scalar> out = c;
  for (std::size_t a = 0; a < lin.size(); ++a)
    if (!x[a].is_zero()) out += x[a] * lin[a];
  return out;
}

PolyVec AffineMat::apply(const PolyVec& v) const {
  const int n = static_cast<int>(lin.size());
  PolyVec out = nf::apply(c, v);
  for (int a = 0; a < n; ++a) {
    PolyVec t = nf::apply(lin[a], v);
    Poly xa = Poly::var(n, a);
    for (std::size_t i = 0; i < out.size(); ++i)
      if (!t[i].is_zero()) out[i] += xa * t[i];
  }
  return out;
}

InjectorFields injector_fields(const ConformalFrame& fr) {
  const int d = fr.v0.spinor_dim, n = fr.n();
  InjectorFields inj;
  inj.I.c = Mat<Scalar>(2 * d, d);
  inj.O.c = Mat<Scalar>(2 * d, d);
  inj.O_proj.c = Mat<Scalar>(d, 2 * d);
  inj.I_proj.c = Mat<Scalar>(d, 2 * d);
  for (int i = 0; i < d; ++i) {
    inj.I.c(i, i) = Scalar(1);
    inj.O.c(d + i, i) = Scalar(1);
    inj.O_proj.c(i, i) = Scalar(1);
    inj.I_proj.c(i, d + i) = Scalar(1);
  }
  const Scalar s = Scalar::inv_sqrt2();
  for (int a = 0; a < n; ++a) {
    const Mat<Scalar>& g = fr.v0.gens[a];
    Mat<Scalar> o(2 * d, d), op(d, 2 * d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        if (g(i, j).is_zero()) continue;
        o(i, j) = s * g(i, j);
        op(i, d + j) = -s * g(i, j);
      }
    inj.O.lin.push_back(o);
    inj.O_proj.lin.push_back(op);
    inj.I.lin.emplace_back(2 * d, d);
    inj.I_proj.lin.emplace_back(d, 2 * d);
  }
  return inj;
}

bool injector_derivatives_hold(const ConformalFrame& fr, const InjectorFields& inj) {
  const Scalar s = Scalar::inv_sqrt2();
  for (int a = 0; a < fr.n(); ++a) {
    const Mat<Scalar>& g = fr.v0.gens[a];
    // d_a O = (1/sqrt2) I gamma_a, d_a O* = -(1/sqrt2) gamma_a I*, d I = d I* = 0
    if (!is_zero(inj.O.derivative(a) - s * (inj.I.c * g))) return false;
    if (!is_zero(inj.O_proj.derivative(a) + s * (g * inj.I_proj.c))) return false;
    if (!is_zero(inj.I.derivative(a)) || !is_zero(inj.I_proj.derivative(a))) return false;
  }
  return true;
}

Mat<Scalar> bundle_gamma(const ConformalFrame& fr, const InjectorFields& inj, const Vec<Scalar>& x,
                         const Vec<Scalar>& v) {
  const int n = fr.n();
  const Mat<Scalar>& h = fr.tractor.gram;
  const Mat<Scalar> I = inj.I.at(x), O = inj.O.at(x), Op = inj.O_proj.at(x), Ip = inj.I_proj.at(x);
  Vec<Scalar> X = embed_point(fr, x);
  Vec<Scalar> xl = fr.gram_v0 * x;
  Mat<Scalar> out(fr.tractor.spinor_dim, fr.tractor.spinor_dim);
  for (int b = 0; b < n; ++b) {
    Vec<Scalar> zb = fr.Z0[b] - xl[b] * fr.Y0;
    Scalar hz = bilinear(zb, h, v);
    if (hz.is_zero()) continue;
    for (int a = 0; a < n; ++a) {
      Scalar c = fr.v0.gram_inv(a, b) * hz;
      if (c.is_zero()) continue;
      const Mat<Scalar>& g = fr.v0.gens[a];
      out += c * (I * g * Op - O * g * Ip);
    }
  }
  Scalar hy = bilinear(fr.Y0, h, v), hx = bilinear(X, h, v);
  if (!hy.is_zero()) out += (Scalar::sqrt2() * hy) * (O * Op);
  if (!hx.is_zero()) out -= (Scalar::sqrt2() * hx) * (I * Ip);
  return out;
}

CksFields cks_field(const ConformalFrame& fr, const TractorSpinorPair& p) {
  const int n = fr.n();
  CksFields f;
  f.zeta = constant_vec(n, p.zeta0);
  f.xi = constant_vec(n, p.xi0);
  const Scalar s = -Scalar::inv_sqrt2();
  for (int a = 0; a < n; ++a) add_to(f.xi, scaled(s * Poly::var(n, a), fr.v0.gens[a] * p.zeta0));
  return f;
}

bool verify_cks(const ConformalFrame& fr, const CksFields& f) {
  const Scalar s = Scalar::inv_sqrt2();
  for (int a = 0; a < fr.n(); ++a) {
    PolyVec r = derivative(f.xi, a);
    PolyVec gz = apply(fr.v0.gens[a], f.zeta);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += s * gz[i];
    if (!is_zero(r) || !is_zero(derivative(f.zeta, a))) return false;
  }
  return true;
}

double cks_fd_residual(const ConformalFrame& fr, const CksFields& f, const Vec<double>& x, double h) {
  const int n = fr.n();
  Vec<cplx> xc(x.begin(), x.end());
  double worst = 0;
  Vec<cplx> zeta = eval(f.zeta, xc);
  for (int a = 0; a < n; ++a) {
    Vec<cplx> xp = xc, xm = xc;
    xp[a] += h;
    xm[a] -= h;
    Vec<cplx> dxi = eval(f.xi, xp) - eval(f.xi, xm);
    Vec<cplx> dzeta = eval(f.zeta, xp) - eval(f.zeta, xm);
    Vec<cplx> gz = fr.v0.generators<cplx>()[a] * zeta;
    for (std::size_t i = 0; i < dxi.size(); ++i) {
      worst = std::max(worst, std::abs(dxi[i] / (2 * h) + gz[i] / std::sqrt(2.0)));
      worst = std::max(worst, std::abs(dzeta[i] / (2 * h)));
    }
  }
  return worst;
}

PolyVec assemble_tractor_spinor(const ConformalFrame&, const InjectorFields& inj, const CksFields& f) {
  PolyVec out = inj.I.apply(f.xi);
  return add_to(out, inj.O.apply(f.zeta));
}

Vec<Scalar> tractor_spinor(const TractorSpinorPair& p) {
  Vec<Scalar> z = p.xi0;
  z.insert(z.end(), p.zeta0.begin(), p.zeta0.end());
  return z;
}

namespace {

std::size_t idx2(int n, int a, int b) { return static_cast<std::size_t>(a) * n + b; }
std::size_t idx3(int n, int a, int b, int c) { return (static_cast<std::size_t>(a) * n + b) * n + c; }

}  // namespace

bool cky_antisymmetric(const CKYQuadruple& q) {
  const int n = q.n;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (q.sigma0[idx2(n, a, b)] != -q.sigma0[idx2(n, b, a)]) return false;
      if (q.rho0[idx2(n, a, b)] != -q.rho0[idx2(n, b, a)]) return false;
      for (int c = 0; c < n; ++c) {
        const Scalar& t = q.mu0[idx3(n, a, b, c)];
        if (t != -q.mu0[idx3(n, b, a, c)] || t != -q.mu0[idx3(n, a, c, b)]) return false;
      }
    }
  return true;
}

CKYQuadruple random_cky_quadruple(const ConformalFrame& fr, Rng& rng, long bound) {
  const int n = fr.n();
  CKYQuadruple q;
  q.n = n;
  q.sigma0 = Vec<Scalar>(n * n);
  q.rho0 = Vec<Scalar>(n * n);
  q.mu0 = Vec<Scalar>(n * n * n);
  q.phi0 = rng.integer_vec(n, bound);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      Scalar s = rng.integer(bound), r = rng.integer(bound);
      q.sigma0[idx2(n, a, b)] = s;
      q.sigma0[idx2(n, b, a)] = -s;
      q.rho0[idx2(n, a, b)] = r;
      q.rho0[idx2(n, b, a)] = -r;
      for (int c = b + 1; c < n; ++c) {
        Scalar t = rng.integer(bound);
        for (auto [i, j, k, sg] : {std::array{a, b, c, 1}, {b, c, a, 1}, {c, a, b, 1}, {b, a, c, -1},
                                   {a, c, b, -1}, {c, b, a, -1}})
          q.mu0[idx3(n, i, j, k)] = sg > 0 ? t : -t;
      }
    }
  return q;
}

CkyFields cky_field(const ConformalFrame& fr, const CKYQuadruple& q) {
  if (!cky_antisymmetric(q)) throw std::invalid_argument("CKY data not antisymmetric");
  const int n = fr.n();
  const PolyVec xl = lowered_coords(fr);
  const Poly xx = norm_sq(fr);
  auto x = [&](int a) { return Poly::var(n, a); };
  auto rho = [&](int a, int b) { return q.rho0[idx2(n, a, b)]; };
  // (rho x)_c = rho_cd x^d
  PolyVec rx(n, Poly(n));
  for (int c = 0; c < n; ++c)
    for (int d = 0; d < n; ++d)
      if (!rho(c, d).is_zero()) rx[c] += rho(c, d) * x(d);
  CkyFields f;
  f.n = n;
  f.rho = constant_vec(n, q.rho0);
  f.phi = PolyVec(n, Poly(n));
  for (int b = 0; b < n; ++b) f.phi[b] = Poly(n, q.phi0[b]) - rx[b];
  f.mu = PolyVec(n * n * n, Poly(n));
  for (int b = 0; b < n; ++b)
    for (int c = 0; c < n; ++c)
      for (int d = 0; d < n; ++d)
        f.mu[idx3(n, b, c, d)] = Poly(n, q.mu0[idx3(n, b, c, d)]) -
                                 (rho(c, d) * xl[b] + rho(d, b) * xl[c] + rho(b, c) * xl[d]);
  f.sigma = PolyVec(n * n, Poly(n));
  for (int b = 0; b < n; ++b)
    for (int c = 0; c < n; ++c) {
      Poly s(n, q.sigma0[idx2(n, b, c)]);
      s += q.phi0[c] * xl[b] - q.phi0[b] * xl[c];
      for (int a = 0; a < n; ++a) s += q.mu0[idx3(n, a, b, c)] * x(a);
      s -= xl[b] * rx[c] - rx[b] * xl[c] + Scalar::rational(1, 2) * (rho(b, c) * xx);
      f.sigma[idx2(n, b, c)] = std::move(s);
    }
  return f;
}

bool verify_cky(const ConformalFrame& fr, const CkyFields& f) {
  const int n = fr.n();
  const Mat<Scalar>& g = fr.gram_v0;
  const Mat<Scalar>& gi = fr.v0.gram_inv;
  // P_ab = 0 in the flat scale; the curvature terms of the prolongation drop out.
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int k = 0; k < n; ++k)
        if (!f.rho[idx2(n, a, b)].derivative(k).is_zero()) return false;
      if (!(f.phi[b].derivative(a) - f.rho[idx2(n, a, b)]).is_zero()) return false;
      for (int c = 0; c < n; ++c) {
        Poly r = f.sigma[idx2(n, b, c)].derivative(a) - f.mu[idx3(n, a, b, c)];
        r -= g(a, b) * f.phi[c] - g(a, c) * f.phi[b];
        if (!r.is_zero()) return false;
        for (int d = 0; d < n; ++d) {
          Poly t = f.mu[idx3(n, b, c, d)].derivative(a);
          t += g(a, b) * f.rho[idx2(n, c, d)] + g(a, c) * f.rho[idx2(n, d, b)] + g(a, d) * f.rho[idx2(n, b, c)];
          if (!t.is_zero()) return false;
        }
      }
    }
  }
  const Scalar third = Scalar::rational(1, 3), inv = Scalar::rational(1, n - 1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        Poly alt = f.sigma[idx2(n, b, c)].derivative(a) + f.sigma[idx2(n, c, a)].derivative(b) +
                   f.sigma[idx2(n, a, b)].derivative(c);
        if (!(third * alt - f.mu[idx3(n, a, b, c)]).is_zero()) return false;
      }
  for (int c = 0; c < n; ++c) {
    Poly div(n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (!gi(a, b).is_zero()) div += gi(a, b) * f.sigma[idx2(n, b, c)].derivative(a);
    if (!(inv * div - f.phi[c]).is_zero()) return false;
  }
  return true;
}

namespace {

// sum over a, b of T^{ab} U_a (x) V_b with raised T
PolyVec raise2(const Mat<Scalar>& gi, const PolyVec& t, int n) {
  PolyVec out(n * n, Poly(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        if (gi(a, c).is_zero()) continue;
        for (int d = 0; d < n; ++d)
          if (!gi(b, d).is_zero()) out[idx2(n, a, b)] += (gi(a, c) * gi(b, d)) * t[idx2(n, c, d)];
      }
  return out;
}

}  // namespace

PolyVec assemble_sigma(const ConformalFrame& fr, const CkyFields& f) {
  const int n = fr.n(), N = fr.tractor.N;
  const Mat<Scalar>& gi = fr.v0.gram_inv;
  const FrameFields ff = frame_fields(fr);
  const PolyVec sig = raise2(gi, f.sigma, n), rho = raise2(gi, f.rho, n);
  PolyVec mu(n * n * n, Poly(n)), phi(n, Poly(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (!gi(a, b).is_zero()) phi[a] += gi(a, b) * f.phi[b];
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int i = 0; i < n; ++i) {
          if (gi(a, i).is_zero()) continue;
          for (int j = 0; j < n; ++j) {
            if (gi(b, j).is_zero()) continue;
            for (int k = 0; k < n; ++k)
              if (!gi(c, k).is_zero()) mu[idx3(n, a, b, c)] += (gi(a, i) * gi(b, j) * gi(c, k)) * f.mu[idx3(n, i, j, k)];
          }
        }
  // S(t)^{BC} = Z_a^B Z_b^C t^{ab}
  auto two_form = [&](const PolyVec& t) {
    PolyVec s(N * N, Poly(n));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (t[idx2(n, a, b)].is_zero()) continue;
        for (int B = 0; B < N; ++B) {
          if (ff.Z[a][B].is_zero()) continue;
          Poly zt = ff.Z[a][B] * t[idx2(n, a, b)];
          for (int C = 0; C < N; ++C)
            if (!ff.Z[b][C].is_zero()) s[idx2(N, B, C)] += zt * ff.Z[b][C];
        }
      }
    return s;
  };
  PolyVec W(N, Poly(n));
  for (int c = 0; c < n; ++c)
    for (int C = 0; C < N; ++C)
      if (!phi[c].is_zero() && !ff.Z[c][C].is_zero()) W[C] += ff.Z[c][C] * phi[c];
  const PolyVec Ss = two_form(sig), Sr = two_form(rho);
  PolyVec out(N * N * N, Poly(n));
  for (int A = 0; A < N; ++A)
    for (int B = 0; B < N; ++B)
      for (int C = 0; C < N; ++C) {
        Poly& o = out[idx3(N, A, B, C)];
        auto cyc = [&](const PolyVec& v, const PolyVec& s) {
          return v[A] * s[idx2(N, B, C)] + v[B] * s[idx2(N, C, A)] + v[C] * s[idx2(N, A, B)];
        };
        o += cyc(ff.Y, Ss) + cyc(ff.X, Sr);
        const PolyVec* p[3] = {&ff.X, &ff.Y, &W};
        const int idx[3] = {A, B, C};
        static const int perms[6][4] = {{0, 1, 2, 1}, {1, 2, 0, 1}, {2, 0, 1, 1},
                                        {1, 0, 2, -1}, {0, 2, 1, -1}, {2, 1, 0, -1}};
        for (const auto& pm : perms) {
          Poly t = (*p[pm[0]])[idx[0]] * (*p[pm[1]])[idx[1]] * (*p[pm[2]])[idx[2]];
          if (pm[3] > 0) o += t;
          else o -= t;
        }
      }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const Poly& t = mu[idx3(n, a, b, c)];
        if (t.is_zero()) continue;
        for (int A = 0; A < N; ++A) {
          if (ff.Z[a][A].is_zero()) continue;
          for (int B = 0; B < N; ++B) {
            if (ff.Z[b][B].is_zero()) continue;
            Poly ab = ff.Z[a][A] * ff.Z[b][B] * t;
            for (int C = 0; C < N; ++C)
              if (!ff.Z[c][C].is_zero()) out[idx3(N, A, B, C)] += ab * ff.Z[c][C];
          }
        }
      }
  return out;
}

bool sigma_parallel(const PolyVec& sigma, int nvars) {
  for (const Poly& p : sigma)
    for (int a = 0; a < nvars; ++a)
      if (!p.derivative(a).is_zero()) return false;
  return true;
}

}  // namespace nf
