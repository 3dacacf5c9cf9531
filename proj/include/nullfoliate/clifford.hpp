#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "nullfoliate/matrix.hpp"

namespace nf {

enum class Parity { odd, even };
enum class BasisTag { witt, tractor, reduced };

struct ModelCache;

// Fock basis of subsets of {0..m-1}: grade-major, then lexicographic.
std::vector<std::uint32_t> fock_basis(int m);
int fock_index(int m, std::uint32_t mask);
int popcount(std::uint32_t x);

struct CliffordModel {
  int m = 0;
  Parity parity = Parity::odd;
  BasisTag tag = BasisTag::witt;
  int N = 0;
  int spinor_dim = 0;
  Mat<Scalar> gram;
  Mat<Scalar> gram_inv;
  std::vector<Mat<Scalar>> gens;
  Mat<Scalar> gamma0;
  int gamma0_sign = 1;          // G^T C = sign * C G
  std::vector<int> chirality;   // +-1 per spinor index, empty for odd models
  std::shared_ptr<ModelCache> cache;

  int max_null() const { return N / 2; }
  bool odd() const { return parity == Parity::odd; }

  Mat<Scalar> gamma(const Vec<Scalar>& v) const;
  Mat<cplx> gamma(const Vec<cplx>& v) const;

  // Antisymmetrized generator product over a subset, contraction order.
  template <class T>
  const Mat<T>& product(std::uint32_t mask) const;
  template <class T>
  const std::vector<Mat<T>>& generators() const;
  template <class T>
  const Mat<T>& form0() const;
  template <class T>
  const Mat<T>& metric() const;
  template <class T>
  const Mat<T>& metric_inv() const;
};

struct ModelCache;

CliffordModel build_v0_model(int m, Parity parity = Parity::odd);
CliffordModel build_tractor_model(int m, Parity parity = Parity::odd);

// Tractor basis indices: X0 = 0, Z0_a = 1 + a, Y0 = N - 1.
inline int tractor_x(const CliffordModel&) { return 0; }
inline int tractor_y(const CliffordModel& t) { return t.N - 1; }

// W_S for every subset of the given generator list.
template <class T>
std::vector<Mat<T>> subset_products(const std::vector<Mat<T>>& g);

template <class T>
struct KForm {
  int k = 0;
  std::map<std::uint32_t, Mat<T>> table;  // W_S^T Gamma0 keyed by index mask
};

KForm<Scalar> gamma_k(const CliffordModel& model, int k);

// Gamma^(k)_S(Z, W) = (W_S Z)^T Gamma0 W.
template <class T>
T gamma_k_value(const CliffordModel& model, std::uint32_t mask, const Vec<T>& z, const Vec<T>& w);

// All values Gamma^(k)_S(Z, W) for |S| = k, in mask order.
template <class T>
std::vector<T> gamma_k_values(const CliffordModel& model, int k, const Vec<T>& z, const Vec<T>& w);

// Sign of the reordering of (S, extra) into increasing order, 0 on overlap.
int merge_sign(std::uint32_t s, std::uint32_t t);
std::vector<std::uint32_t> subsets_of_size(int n, int k);

bool clifford_identity_holds(const CliffordModel& model);
std::optional<int> invariance_sign(const std::vector<Mat<Scalar>>& gens, const Mat<Scalar>& c);
// +1 symmetric, -1 antisymmetric, 0 neither, per matrix table.
int symmetry_class(const KForm<Scalar>& f);
// Predicted class: symmetric iff k = M or M+1 (mod 4) with M = floor(N/2).
int predicted_symmetry(const CliffordModel& model, int k);

struct Reduction {
  CliffordModel model;
  Mat<Scalar> basis;                // rows: U-perp vectors in the even ambient basis
  std::vector<int> spinor_indices;  // kept chirality indices of the even spinor space
  Vec<Scalar> unit;
};

Reduction even_to_odd_reduce(const CliffordModel& even_model, const Vec<Scalar>& unit);

struct ReductionCheck {
  bool clifford = false;
  bool forms = false;
  int checked = 0;
};
ReductionCheck check_reduction(const CliffordModel& even_model, const Reduction& red);

}  // namespace nf
