#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace nf {

using cplx = std::complex<double>;

struct DivisionByZero : std::domain_error {
  DivisionByZero() : std::domain_error("division by zero") {}
};

struct IrrationalOutsideField : std::domain_error {
  explicit IrrationalOutsideField(const std::string& what)
      : std::domain_error("irrational outside Q(i,sqrt2): " + what) {}
};

// (ar + i ai) + (br + i bi) sqrt2, rationals kept canonical by gmp.
class Scalar {
 public:
  mpq_class ar, ai, br, bi;

  Scalar() = default;
  Scalar(int n) : ar(n) {}
  Scalar(long n) : ar(n) {}
  Scalar(const mpq_class& q) : ar(q) {}
  Scalar(mpq_class re, mpq_class im, mpq_class sre, mpq_class sim)
      : ar(std::move(re)), ai(std::move(im)), br(std::move(sre)), bi(std::move(sim)) {}

  static Scalar rational(long num, long den = 1);
  static Scalar gaussian(long re, long im) { return Scalar(mpq_class(re), mpq_class(im), 0, 0); }
  static Scalar i() { return Scalar(0, 1, 0, 0); }
  static Scalar sqrt2() { return Scalar(0, 0, 1, 0); }
  static Scalar inv_sqrt2() { return Scalar(0, 0, mpq_class(1, 2), 0); }

  bool is_zero() const { return sgn(ar) == 0 && sgn(ai) == 0 && sgn(br) == 0 && sgn(bi) == 0; }
  bool in_qi() const { return sgn(br) == 0 && sgn(bi) == 0; }
  bool is_rational() const { return in_qi() && sgn(ai) == 0; }

  Scalar conj() const { return Scalar(ar, -ai, br, -bi); }
  Scalar inv() const;
  cplx to_complex() const;

  std::string str() const;
  static Scalar parse(std::string_view s);

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o) { return *this *= o.inv(); }
  Scalar operator-() const { return Scalar(-ar, -ai, -br, -bi); }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inv(); }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.ar == b.ar && a.ai == b.ai && a.br == b.br && a.bi == b.bi;
  }
};

// Lexicographic on (real, imaginary), each compared exactly in Q(sqrt2).
int compare(const Scalar& a, const Scalar& b);

// Exact square root inside the field; throws IrrationalOutsideField.
Scalar sqrt(const Scalar& x);
bool has_sqrt(const Scalar& x);

std::ostream& operator<<(std::ostream& os, const Scalar& x);

}  // namespace nf
