#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "nullfoliate/scalar.hpp"

namespace nf {

inline constexpr double kDefaultTol = 1e-9;

// Zero tests and magnitudes for the two backends.
inline bool is_zero(const Scalar& x, double = 0) { return x.is_zero(); }
inline bool is_zero(const cplx& x, double tol = kDefaultTol) { return std::abs(x) <= tol; }
inline double magnitude(const Scalar& x) { return std::abs(x.to_complex()); }
inline double magnitude(const cplx& x) { return std::abs(x); }
inline cplx to_float(const Scalar& x) { return x.to_complex(); }
inline cplx to_float(const cplx& x) { return x; }

template <class T>
T from_scalar(const Scalar& x) {
  if constexpr (std::is_same_v<T, Scalar>) {
    return x;
  } else {
    return x.to_complex();
  }
}

template <class T>
using Vec = std::vector<T>;

template <class T>
struct Mat {
  int rows = 0, cols = 0;
  std::vector<T> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, T(0)) {}

  T& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const T& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  Vec<T> row(int i) const { return Vec<T>(a.begin() + i * cols, a.begin() + (i + 1) * cols); }
  Vec<T> col(int j) const {
    Vec<T> v(rows);
    for (int i = 0; i < rows; ++i) v[i] = (*this)(i, j);
    return v;
  }
};

template <class T>
Mat<T> transpose(const Mat<T>& m) {
  Mat<T> t(m.cols, m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) t(j, i) = m(i, j);
  return t;
}

template <class T>
Mat<T> operator*(const Mat<T>& x, const Mat<T>& y) {
  if (x.cols != y.rows) throw std::invalid_argument("matrix shape mismatch");
  Mat<T> out(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const T& xik = x(i, k);
      if (is_zero(xik, 0)) continue;
      for (int j = 0; j < y.cols; ++j) {
        const T& ykj = y(k, j);
        if (is_zero(ykj, 0)) continue;
        out(i, j) += xik * ykj;
      }
    }
  return out;
}

template <class T>
Vec<T> operator*(const Mat<T>& x, const Vec<T>& v) {
  if (x.cols != static_cast<int>(v.size())) throw std::invalid_argument("matrix shape mismatch");
  Vec<T> out(x.rows, T(0));
  for (int k = 0; k < x.cols; ++k) {
    if (is_zero(v[k], 0)) continue;
    for (int i = 0; i < x.rows; ++i) {
      const T& xik = x(i, k);
      if (!is_zero(xik, 0)) out[i] += xik * v[k];
    }
  }
  return out;
}

template <class T>
Mat<T>& operator+=(Mat<T>& x, const Mat<T>& y) {
  for (size_t i = 0; i < x.a.size(); ++i)
    if (!is_zero(y.a[i], 0)) x.a[i] += y.a[i];
  return x;
}

template <class T>
Mat<T>& operator-=(Mat<T>& x, const Mat<T>& y) {
  for (size_t i = 0; i < x.a.size(); ++i)
    if (!is_zero(y.a[i], 0)) x.a[i] -= y.a[i];
  return x;
}

template <class T>
Mat<T> operator+(Mat<T> x, const Mat<T>& y) { return x += y; }
template <class T>
Mat<T> operator-(Mat<T> x, const Mat<T>& y) { return x -= y; }

template <class T>
Mat<T> operator*(const T& s, Mat<T> m) {
  for (auto& e : m.a)
    if (!is_zero(e, 0)) e = s * e;
  return m;
}

template <class T>
Vec<T>& operator+=(Vec<T>& x, const Vec<T>& y) {
  for (size_t i = 0; i < x.size(); ++i) x[i] += y[i];
  return x;
}
template <class T>
Vec<T>& operator-=(Vec<T>& x, const Vec<T>& y) {
  for (size_t i = 0; i < x.size(); ++i) x[i] -= y[i];
  return x;
}
template <class T>
Vec<T> operator+(Vec<T> x, const Vec<T>& y) { return x += y; }
template <class T>
Vec<T> operator-(Vec<T> x, const Vec<T>& y) { return x -= y; }
template <class T>
Vec<T> operator*(const T& s, Vec<T> v) {
  for (auto& e : v) e = s * e;
  return v;
}

template <class T>
T dot(const Vec<T>& x, const Vec<T>& y) {
  T s(0);
  for (size_t i = 0; i < x.size(); ++i)
    if (!is_zero(x[i], 0) && !is_zero(y[i], 0)) s += x[i] * y[i];
  return s;
}

// x^T G y
template <class T>
T bilinear(const Vec<T>& x, const Mat<T>& g, const Vec<T>& y) { return dot(x, g * y); }

template <class T>
Mat<T> outer(const Vec<T>& x, const Vec<T>& y) {
  Mat<T> m(static_cast<int>(x.size()), static_cast<int>(y.size()));
  for (int i = 0; i < m.rows; ++i) {
    if (is_zero(x[i], 0)) continue;
    for (int j = 0; j < m.cols; ++j) m(i, j) = x[i] * y[j];
  }
  return m;
}

template <class T>
double max_abs(const Mat<T>& m) {
  double r = 0;
  for (const auto& e : m.a) r = std::max(r, magnitude(e));
  return r;
}

template <class T>
double max_abs(const Vec<T>& v) {
  double r = 0;
  for (const auto& e : v) r = std::max(r, magnitude(e));
  return r;
}

template <class T>
bool is_zero(const Mat<T>& m, double tol = kDefaultTol) {
  for (const auto& e : m.a)
    if (!is_zero(e, tol)) return false;
  return true;
}

template <class T>
bool is_zero(const Vec<T>& v, double tol = kDefaultTol) {
  for (const auto& e : v)
    if (!is_zero(e, tol)) return false;
  return true;
}

inline Mat<cplx> to_float(const Mat<Scalar>& m) {
  Mat<cplx> f(m.rows, m.cols);
  for (size_t i = 0; i < m.a.size(); ++i) f.a[i] = m.a[i].to_complex();
  return f;
}

inline Vec<cplx> to_float(const Vec<Scalar>& v) {
  Vec<cplx> f(v.size());
  for (size_t i = 0; i < v.size(); ++i) f[i] = v[i].to_complex();
  return f;
}

template <class T>
Mat<T> hstack(const Mat<T>& x, const Mat<T>& y) {
  if (x.rows != y.rows) throw std::invalid_argument("hstack row mismatch");
  Mat<T> out(x.rows, x.cols + y.cols);
  for (int i = 0; i < x.rows; ++i) {
    for (int j = 0; j < x.cols; ++j) out(i, j) = x(i, j);
    for (int j = 0; j < y.cols; ++j) out(i, x.cols + j) = y(i, j);
  }
  return out;
}

template <class T>
Mat<T> vstack(const Mat<T>& x, const Mat<T>& y) {
  if (x.cols != y.cols) throw std::invalid_argument("vstack column mismatch");
  Mat<T> out(x.rows + y.rows, x.cols);
  std::copy(x.a.begin(), x.a.end(), out.a.begin());
  std::copy(y.a.begin(), y.a.end(), out.a.begin() + x.a.size());
  return out;
}

template <class T>
Mat<T> from_columns(const std::vector<Vec<T>>& cols, int rows) {
  Mat<T> m(rows, static_cast<int>(cols.size()));
  for (int j = 0; j < m.cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  return m;
}

template <class T>
Mat<T> from_rows(const std::vector<Vec<T>>& rows, int cols) {
  Mat<T> m(static_cast<int>(rows.size()), cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  return m;
}

// Reduced row echelon form. Exact backend divides in the field; float
// backend uses partial pivoting with threshold tol * max|entry|.
template <class T>
struct Echelon {
  Mat<T> r;
  std::vector<int> pivots;
};

template <class T>
Echelon<T> rref(Mat<T> m, double tol = kDefaultTol) {
  constexpr bool exact = std::is_same_v<T, Scalar>;
  const double thresh = exact ? 0 : tol * std::max(1.0, max_abs(m));
  Echelon<T> e;
  int row = 0;
  for (int c = 0; c < m.cols && row < m.rows; ++c) {
    int piv = -1;
    if constexpr (exact) {
      for (int i = row; i < m.rows; ++i)
        if (!m(i, c).is_zero()) {
          piv = i;
          break;
        }
    } else {
      double best = thresh;
      for (int i = row; i < m.rows; ++i)
        if (std::abs(m(i, c)) > best) {
          best = std::abs(m(i, c));
          piv = i;
        }
    }
    if (piv < 0) {
      if constexpr (!exact)
        for (int i = row; i < m.rows; ++i) m(i, c) = T(0);
      continue;
    }
    if (piv != row)
      for (int j = 0; j < m.cols; ++j) std::swap(m(piv, j), m(row, j));
    T inv = T(1) / m(row, c);
    for (int j = c; j < m.cols; ++j)
      if (!is_zero(m(row, j), 0)) m(row, j) = m(row, j) * inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == row || is_zero(m(i, c), 0)) continue;
      T f = m(i, c);
      for (int j = c; j < m.cols; ++j)
        if (!is_zero(m(row, j), 0)) m(i, j) -= f * m(row, j);
      m(i, c) = T(0);
    }
    e.pivots.push_back(c);
    ++row;
  }
  e.r = std::move(m);
  return e;
}

// Fraction-free elimination; every division is exact in the field.
inline int bareiss_rank(Mat<Scalar> m) {
  int rank = 0;
  Scalar prev(1);
  std::vector<bool> used(m.rows, false);
  for (int c = 0; c < m.cols && rank < m.rows; ++c) {
    int piv = -1;
    for (int i = rank; i < m.rows; ++i)
      if (!m(i, c).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != rank)
      for (int j = 0; j < m.cols; ++j) std::swap(m(piv, j), m(rank, j));
    Scalar p = m(rank, c);
    Scalar pinv = prev.inv();
    for (int i = rank + 1; i < m.rows; ++i) {
      Scalar f = m(i, c);
      for (int j = c + 1; j < m.cols; ++j) {
        Scalar v = p * m(i, j);
        if (!f.is_zero() && !m(rank, j).is_zero()) v -= f * m(rank, j);
        m(i, j) = v.is_zero() ? v : v * pinv;
      }
      m(i, c) = Scalar();
    }
    prev = p;
    ++rank;
  }
  return rank;
}

template <class T>
int rank(const Mat<T>& m, double tol = kDefaultTol) {
  if constexpr (std::is_same_v<T, Scalar>) {
    return bareiss_rank(m);
  } else {
    return static_cast<int>(rref(m, tol).pivots.size());
  }
}

// Row basis of a linear subspace of T^ambient.
template <class T>
struct Subspace {
  int ambient = 0;
  Mat<T> basis;
  int dim() const { return basis.rows; }
};

template <class T>
Subspace<T> kernel(const Mat<T>& m, double tol = kDefaultTol) {
  Echelon<T> e = rref(m, tol);
  std::vector<bool> is_piv(m.cols, false);
  for (int p : e.pivots) is_piv[p] = true;
  Subspace<T> s{m.cols, Mat<T>(m.cols - static_cast<int>(e.pivots.size()), m.cols)};
  int k = 0;
  for (int f = 0; f < m.cols; ++f) {
    if (is_piv[f]) continue;
    s.basis(k, f) = T(1);
    for (size_t r = 0; r < e.pivots.size(); ++r) s.basis(k, e.pivots[r]) = -e.r(static_cast<int>(r), f);
    ++k;
  }
  return s;
}

// Independent rows spanning the same space.
template <class T>
Subspace<T> span(const Mat<T>& rows, double tol = kDefaultTol) {
  Echelon<T> e = rref(rows, tol);
  int r = static_cast<int>(e.pivots.size());
  Subspace<T> s{rows.cols, Mat<T>(r, rows.cols)};
  std::copy(e.r.a.begin(), e.r.a.begin() + static_cast<size_t>(r) * rows.cols, s.basis.a.begin());
  return s;
}

template <class T>
Subspace<T> intersect(const Subspace<T>& u, const Subspace<T>& v, double tol = kDefaultTol) {
  if (u.ambient != v.ambient) throw std::invalid_argument("ambient dimension mismatch");
  if (u.dim() == 0 || v.dim() == 0) return {u.ambient, Mat<T>(0, u.ambient)};
  Mat<T> sys = hstack(transpose(u.basis), T(-1) * transpose(v.basis));
  Subspace<T> k = kernel(sys, tol);
  Mat<T> vecs(k.dim(), u.ambient);
  for (int r = 0; r < k.dim(); ++r)
    for (int i = 0; i < u.dim(); ++i) {
      const T& c = k.basis(r, i);
      if (is_zero(c, 0)) continue;
      for (int j = 0; j < u.ambient; ++j) vecs(r, j) += c * u.basis(i, j);
    }
  return span(vecs, tol);
}

// Particular solution of A x = b with free variables set to zero.
template <class T>
std::optional<Vec<T>> solve(const Mat<T>& a, const Vec<T>& b, double tol = kDefaultTol) {
  Mat<T> aug(a.rows, a.cols + 1);
  for (int i = 0; i < a.rows; ++i) {
    for (int j = 0; j < a.cols; ++j) aug(i, j) = a(i, j);
    aug(i, a.cols) = b[i];
  }
  Echelon<T> e = rref(aug, tol);
  if (!e.pivots.empty() && e.pivots.back() == a.cols) return std::nullopt;
  Vec<T> x(a.cols, T(0));
  for (size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.r(static_cast<int>(r), a.cols);
  return x;
}

template <class T>
bool contains(const Subspace<T>& s, const Vec<T>& v, double tol = kDefaultTol) {
  Mat<T> m = s.basis;
  Mat<T> ext(m.rows + 1, m.cols);
  std::copy(m.a.begin(), m.a.end(), ext.a.begin());
  for (int j = 0; j < m.cols; ++j) ext(m.rows, j) = v[j];
  return rank(ext, tol) == s.dim();
}

}  // namespace nf
