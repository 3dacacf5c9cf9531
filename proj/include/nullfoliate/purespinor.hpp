#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "nullfoliate/clifford.hpp"
#include "nullfoliate/random.hpp"

namespace nf {

struct ZeroSpinor : std::invalid_argument {
  ZeroSpinor() : std::invalid_argument("zero spinor") {}
};
struct NotPure : std::invalid_argument {
  NotPure() : std::invalid_argument("spinor is not pure") {}
};

// Columns are Gamma_A Z.
template <class T>
Mat<T> annihilator_map(const CliffordModel& md, const Vec<T>& z);

template <class T>
Subspace<T> kernel_plane(const CliffordModel& md, const Vec<T>& z, double tol = kDefaultTol);

template <class T>
bool is_pure_rank(const CliffordModel& md, const Vec<T>& z, double tol = kDefaultTol);
template <class T>
bool is_pure_quadratic(const CliffordModel& md, const Vec<T>& z, double tol = kDefaultTol);
template <class T>
bool is_pure_succinct(const CliffordModel& md, const Vec<T>& z, double tol = kDefaultTol);

// sum h^{AB} (Gamma_A Z)(Gamma_B W)^T
template <class T>
Mat<T> pair_contraction(const CliffordModel& md, const Vec<T>& z, const Vec<T>& w);

bool is_chiral(const CliffordModel& md, const Vec<Scalar>& z);

// Antisymmetric tensors over r_{-1} are stored as one vector indexed by
// subset mask; the degree-k part lives on masks of popcount k.
using FormVec = Vec<Scalar>;

// Unit-weight wedge product of the degree-p part of a and degree-q part of b.
FormVec wedge(const FormVec& a, int p, const FormVec& b, int q, int dim);
FormVec degree_part(const FormVec& a, int k, int dim);
Scalar fock_coefficient(int k);

// Fock frame relative to a pure spinor: null kernel basis, isotropic
// dual complement, and the spinors b_S = c_|S| |S|! W_S Xi.
struct FockFrame {
  const CliffordModel* model = nullptr;
  Vec<Scalar> base;
  std::vector<Vec<Scalar>> kernel;
  std::vector<Vec<Scalar>> complement;
  std::vector<Vec<Scalar>> basis;  // indexed by mask
  Mat<Scalar> basis_inv;
  int dim = 0;
};

FockFrame fock_frame(const CliffordModel& md, const Vec<Scalar>& xi);
FockFrame fock_frame(const CliffordModel& md, const Vec<Scalar>& xi, const std::vector<Vec<Scalar>>& complement);
// Tractor vacuum (omega, pi) = (0, o) with complement (Y0, e_A).
FockFrame tractor_vacuum_frame(const CliffordModel& tractor);
FockFrame v0_vacuum_frame(const CliffordModel& v0);
// Cached vacuum frame for the model's tag; a copy bound to this model.
FockFrame vacuum_frame(const CliffordModel& md);
Vec<Scalar> tractor_vacuum(const CliffordModel& tractor);
Vec<Scalar> v0_vacuum(const CliffordModel& v0);

struct FockComponents {
  int dim = 0;
  FormVec comps;
};

FockComponents fock_decompose(const FockFrame& f, const Vec<Scalar>& z);
Vec<Scalar> fock_reconstruct(const FockFrame& f, const FockComponents& c);
// Displayed component relations; Z_(0) = 0 defers to the rank oracle.
bool fock_purity(const FockFrame& f, const FockComponents& c);
bool fock_relations_hold(const FockComponents& c);

// Components with Z_(0) = 1, given Z_(-1), Z_(-2), completed by the recursion.
FockComponents complete_pure(int dim, const FormVec& z1, const FormVec& z2);
FockComponents random_pure_components(Rng& rng, int dim, bool odd_part, bool decomposable);
Vec<Scalar> random_pure_spinor(const CliffordModel& md, Rng& rng, bool twist = true);
Vec<Scalar> random_pure_spinor(const CliffordModel& md, const FockFrame& vacuum, Rng& rng, bool twist = true);
Vec<Scalar> random_spinor(const CliffordModel& md, Rng& rng, long bound = 2);
Vec<Scalar> random_null_vector(const CliffordModel& md, Rng& rng, long bound = 3);
Vec<Scalar> random_nonnull_vector(const CliffordModel& md, Rng& rng, long bound = 3);

// Tractor spinor split into the S_{-1/2} (omega) and S_{+1/2} (pi) blocks.
struct OmegaPi {
  Vec<Scalar> omega, pi;
};
OmegaPi split(const Vec<Scalar>& z);
Vec<Scalar> join(const OmegaPi& s);
bool split_purity(const CliffordModel& v0, const OmegaPi& s);

}  // namespace nf
