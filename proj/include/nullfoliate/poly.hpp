#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nullfoliate/matrix.hpp"

namespace nf {

inline constexpr int kMaxVars = 16;
using Mono = std::array<std::uint8_t, kMaxVars>;

// Sparse multivariate polynomial over Q(i, sqrt2).
class Poly {
 public:
  Poly() = default;
  explicit Poly(int nvars) : nvars_(nvars) {}
  Poly(int nvars, const Scalar& c);

  static Poly var(int nvars, int i);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;
  const std::map<Mono, Scalar>& terms() const { return terms_; }
  Scalar coeff(const Mono& m) const;
  Scalar constant() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Scalar& s);
  Poly operator-() const;
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Scalar& s, Poly p) { return p *= s; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  Poly derivative(int i) const;
  Poly pow(int k) const;

  template <class T>
  T eval(const Vec<T>& x) const {
    T s(0);
    for (const auto& [m, c] : terms_) {
      T t = from_scalar<T>(c);
      for (int i = 0; i < nvars_; ++i)
        for (int e = 0; e < m[i]; ++e) t = t * x[i];
      s += t;
    }
    return s;
  }

  // Substitute a polynomial for each variable; the result lives in subs[0].nvars().
  Poly compose(const std::vector<Poly>& subs) const;

  std::string str() const;

 private:
  int nvars_ = 0;
  std::map<Mono, Scalar> terms_;
  void add_term(const Mono& m, const Scalar& c);
};

inline bool is_zero(const Poly& p, double = 0) { return p.is_zero(); }

using PolyVec = std::vector<Poly>;

PolyVec derivative(const PolyVec& v, int i);
bool is_zero(const PolyVec& v);
template <class T>
Vec<T> eval(const PolyVec& v, const Vec<T>& x) {
  Vec<T> out;
  out.reserve(v.size());
  for (const auto& p : v) out.push_back(p.eval(x));
  return out;
}

// Constant matrix applied to a polynomial vector.
PolyVec apply(const Mat<Scalar>& m, const PolyVec& v);
PolyVec constant_vec(int nvars, const Vec<Scalar>& v);

}  // namespace nf
