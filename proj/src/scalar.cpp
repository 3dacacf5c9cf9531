#include "nullfoliate/scalar.hpp"

#include <cmath>
#include <optional>
#include <ostream>
#include <regex>

namespace nf {

namespace {

// Gaussian rational r + s i.
struct Qi {
  mpq_class r, s;
};

Qi qmul(const mpq_class& a, const mpq_class& b, const mpq_class& c, const mpq_class& d) {
  return {a * c - b * d, a * d + b * c};
}

std::optional<mpq_class> sqrt_q(const mpq_class& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t()))
    return std::nullopt;
  mpz_class n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  mpq_class out(n, d);
  out.canonicalize();
  return out;
}

std::optional<Qi> sqrt_qi(const mpq_class& r, const mpq_class& s) {
  if (sgn(s) == 0) {
    if (sgn(r) >= 0) {
      auto a = sqrt_q(r);
      if (!a) return std::nullopt;
      return Qi{*a, 0};
    }
    auto b = sqrt_q(-r);
    if (!b) return std::nullopt;
    return Qi{0, *b};
  }
  auto t = sqrt_q(r * r + s * s);
  if (!t) return std::nullopt;
  auto p = sqrt_q(mpq_class((r + *t) / 2));
  if (!p || sgn(*p) == 0) return std::nullopt;
  return Qi{*p, s / (2 * *p)};
}

int sign_q2(const mpq_class& p, const mpq_class& q) {
  int sp = sgn(p), sq = sgn(q);
  if (sp == 0) return sq;
  if (sq == 0 || sp == sq) return sp;
  mpq_class diff = p * p - 2 * q * q;
  return sp * sgn(diff);
}

}  // namespace

Scalar Scalar::rational(long num, long den) {
  mpq_class q(num, den);
  q.canonicalize();
  return Scalar(q);
}

Scalar& Scalar::operator+=(const Scalar& o) {
  ar += o.ar;
  ai += o.ai;
  br += o.br;
  bi += o.bi;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  ar -= o.ar;
  ai -= o.ai;
  br -= o.br;
  bi -= o.bi;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  *this = *this * o;
  return *this;
}

Scalar operator*(const Scalar& x, const Scalar& y) {
  if (x.is_zero() || y.is_zero()) return Scalar();
  bool xq = x.in_qi(), yq = y.in_qi();
  if (xq && yq) {
    if (sgn(x.ai) == 0 && sgn(y.ai) == 0) return Scalar(mpq_class(x.ar * y.ar));
    Qi a = qmul(x.ar, x.ai, y.ar, y.ai);
    return Scalar(a.r, a.s, 0, 0);
  }
  // (A + B s)(C + D s) = (AC + 2BD) + (AD + BC) s
  Scalar out;
  if (xq) {
    Qi ad = qmul(x.ar, x.ai, y.br, y.bi);
    Qi ac = qmul(x.ar, x.ai, y.ar, y.ai);
    return Scalar(ac.r, ac.s, ad.r, ad.s);
  }
  if (yq) {
    Qi ac = qmul(x.ar, x.ai, y.ar, y.ai);
    Qi bc = qmul(x.br, x.bi, y.ar, y.ai);
    return Scalar(ac.r, ac.s, bc.r, bc.s);
  }
  Qi ac = qmul(x.ar, x.ai, y.ar, y.ai);
  Qi bd = qmul(x.br, x.bi, y.br, y.bi);
  Qi ad = qmul(x.ar, x.ai, y.br, y.bi);
  Qi bc = qmul(x.br, x.bi, y.ar, y.ai);
  return Scalar(ac.r + 2 * bd.r, ac.s + 2 * bd.s, ad.r + bc.r, ad.s + bc.s);
}

Scalar Scalar::inv() const {
  if (is_zero()) throw DivisionByZero();
  if (in_qi()) {
    mpq_class n = ar * ar + ai * ai;
    return Scalar(ar / n, -ai / n, 0, 0);
  }
  // 1/(A + B s) = (A - B s)/(A^2 - 2 B^2), D in Q(i) and nonzero
  Qi a2 = qmul(ar, ai, ar, ai);
  Qi b2 = qmul(br, bi, br, bi);
  mpq_class dr = a2.r - 2 * b2.r, ds = a2.s - 2 * b2.s;
  mpq_class n = dr * dr + ds * ds;
  mpq_class ir = dr / n, is = -ds / n;
  Qi p = qmul(ar, ai, ir, is);
  Qi q = qmul(br, bi, ir, is);
  return Scalar(p.r, p.s, -q.r, -q.s);
}

cplx Scalar::to_complex() const {
  const double s2 = std::sqrt(2.0);
  return {ar.get_d() + br.get_d() * s2, ai.get_d() + bi.get_d() * s2};
}

int compare(const Scalar& a, const Scalar& b) {
  int re = sign_q2(a.ar - b.ar, a.br - b.br);
  if (re != 0) return re;
  return sign_q2(a.ai - b.ai, a.bi - b.bi);
}

namespace {

std::optional<Scalar> try_sqrt(const Scalar& x) {
  if (x.is_zero()) return Scalar();
  const mpq_class &cr = x.ar, &ci = x.ai, &dr = x.br, &di = x.bi;
  if (sgn(dr) == 0 && sgn(di) == 0) {
    if (auto a = sqrt_qi(cr, ci)) return Scalar(a->r, a->s, 0, 0);
    if (auto b = sqrt_qi(mpq_class(cr / 2), mpq_class(ci / 2))) return Scalar(0, 0, b->r, b->s);
    return std::nullopt;
  }
  // a^2 = (c +- sqrt(c^2 - 2 d^2)) / 2, b = d / (2a)
  Qi c2 = qmul(cr, ci, cr, ci);
  Qi d2 = qmul(dr, di, dr, di);
  auto disc = sqrt_qi(mpq_class(c2.r - 2 * d2.r), mpq_class(c2.s - 2 * d2.s));
  if (!disc) return std::nullopt;
  for (int sign : {1, -1}) {
    mpq_class ur = (cr + sign * disc->r) / 2, us = (ci + sign * disc->s) / 2;
    auto a = sqrt_qi(ur, us);
    if (!a || (sgn(a->r) == 0 && sgn(a->s) == 0)) continue;
    Scalar as(a->r, a->s, 0, 0);
    Scalar b = Scalar(dr, di, 0, 0) * (Scalar(2) * as).inv();
    Scalar r(as.ar, as.ai, b.ar, b.ai);
    if (r * r == x) return r;
  }
  return std::nullopt;
}

}  // namespace

Scalar sqrt(const Scalar& x) {
  auto r = try_sqrt(x);
  if (!r) throw IrrationalOutsideField("sqrt(" + x.str() + ")");
  if (compare(*r, Scalar()) < 0) return -*r;
  return *r;
}

bool has_sqrt(const Scalar& x) { return try_sqrt(x).has_value(); }

namespace {

std::string part(const mpq_class& re, const mpq_class& im) {
  mpz_class den;
  mpz_lcm(den.get_mpz_t(), re.get_den_mpz_t(), im.get_den_mpz_t());
  mpz_class nr = re.get_num() * (den / re.get_den());
  mpz_class ni = im.get_num() * (den / im.get_den());
  return "(" + nr.get_str() + "/" + den.get_str() + " + " + ni.get_str() + "/" + den.get_str() + "·i)";
}

}  // namespace

std::string Scalar::str() const { return part(ar, ai) + " + " + part(br, bi) + "·sqrt2"; }

Scalar Scalar::parse(std::string_view s) {
  static const std::regex re(
      R"(^\((-?\d+)/(\d+) \+ (-?\d+)/(\d+)·i\) \+ \((-?\d+)/(\d+) \+ (-?\d+)/(\d+)·i\)·sqrt2$)");
  std::cmatch m;
  if (!std::regex_match(s.begin(), s.end(), m, re))
    throw std::invalid_argument("malformed scalar: " + std::string(s));
  auto q = [&](int k) {
    mpq_class v(mpz_class(m[k].str()), mpz_class(m[k + 1].str()));
    v.canonicalize();
    return v;
  };
  return Scalar(q(1), q(3), q(5), q(7));
}

std::ostream& operator<<(std::ostream& os, const Scalar& x) { return os << x.str(); }

}  // namespace nf
