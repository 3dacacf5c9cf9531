#include "nullfoliate/poly.hpp"

#include <stdexcept>

namespace nf {

Poly::Poly(int nvars, const Scalar& c) : nvars_(nvars) {
  if (!c.is_zero()) terms_.emplace(Mono{}, c);
}

Poly Poly::var(int nvars, int i) {
  if (i < 0 || i >= nvars || nvars > kMaxVars) throw std::out_of_range("polynomial variable");
  Poly p(nvars);
  Mono m{};
  m[i] = 1;
  p.terms_.emplace(m, Scalar(1));
  return p;
}

int Poly::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) {
    int s = 0;
    for (int i = 0; i < nvars_; ++i) s += m[i];
    d = std::max(d, s);
  }
  return d;
}

Scalar Poly::coeff(const Mono& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar() : it->second;
}

Scalar Poly::constant() const { return coeff(Mono{}); }

void Poly::add_term(const Mono& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.emplace(m, c);
  if (fresh) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

Poly& Poly::operator+=(const Poly& o) {
  if (nvars_ == 0) nvars_ = o.nvars_;
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (nvars_ == 0) nvars_ = o.nvars_;
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c = c * s;
  return *this;
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& [m, c] : p.terms_) c = -c;
  return p;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out(std::max(a.nvars_, b.nvars_));
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      Mono m;
      for (int i = 0; i < kMaxVars; ++i) m[i] = static_cast<std::uint8_t>(ma[i] + mb[i]);
      out.add_term(m, ca * cb);
    }
  return out;
}

Poly Poly::derivative(int i) const {
  Poly out(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m[i] == 0) continue;
    Mono d = m;
    --d[i];
    out.add_term(d, Scalar(static_cast<int>(m[i])) * c);
  }
  return out;
}

Poly Poly::pow(int k) const {
  Poly r(nvars_, Scalar(1));
  for (int e = 0; e < k; ++e) r = r * *this;
  return r;
}

Poly Poly::compose(const std::vector<Poly>& subs) const {
  int nv = subs.empty() ? 0 : subs[0].nvars();
  Poly out(nv);
  for (const auto& [m, c] : terms_) {
    Poly t(nv, c);
    for (int i = 0; i < nvars_; ++i)
      for (int e = 0; e < m[i]; ++e) t = t * subs[i];
    out += t;
  }
  return out;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [m, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += "[" + c.str() + "]";
    for (int i = 0; i < nvars_; ++i)
      if (m[i]) s += "*x" + std::to_string(i) + (m[i] > 1 ? "^" + std::to_string(m[i]) : "");
  }
  return s;
}

PolyVec derivative(const PolyVec& v, int i) {
  PolyVec out;
  out.reserve(v.size());
  for (const auto& p : v) out.push_back(p.derivative(i));
  return out;
}

bool is_zero(const PolyVec& v) {
  for (const auto& p : v)
    if (!p.is_zero()) return false;
  return true;
}

PolyVec apply(const Mat<Scalar>& m, const PolyVec& v) {
  int nv = v.empty() ? 0 : v[0].nvars();
  PolyVec out(m.rows, Poly(nv));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) {
      if (m(i, j).is_zero() || v[j].is_zero()) continue;
      out[i] += m(i, j) * v[j];
    }
  return out;
}

PolyVec constant_vec(int nvars, const Vec<Scalar>& v) {
  PolyVec out;
  out.reserve(v.size());
  for (const auto& c : v) out.emplace_back(nvars, c);
  return out;
}

}  // namespace nf
