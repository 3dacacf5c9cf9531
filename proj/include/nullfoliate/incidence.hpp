#pragma once

#include "nullfoliate/purespinor.hpp"

namespace nf {

// Projective dimension of the intersection of the null planes of two pure
// spinors: l0 - 1 where l0 is the first l with Gamma^(l)(Z, W) != 0.
template <class T>
int intersection_dim(const CliffordModel& md, const Vec<T>& z, const Vec<T>& w, double tol = kDefaultTol);

// dim(ker Z cap ker W) - 1, by linear algebra.
template <class T>
int intersection_dim_oracle(const CliffordModel& md, const Vec<T>& z, const Vec<T>& w, double tol = kDefaultTol);

// Gamma^(k)(Z, Xi) = 0 for all k < M - 2.
bool in_projective_tangent(const CliffordModel& md, const Vec<Scalar>& z, const Vec<Scalar>& xi);

// Bilinear residual Z^{A a} V_A^b + 2 Z^b V^a - Z^a V^b, indexed [a][b].
Mat<Scalar> contact_form_eval(const CliffordModel& md, const Vec<Scalar>& z, const Vec<Scalar>& v);

bool in_canonical_distribution(const CliffordModel& md, const Vec<Scalar>& z, const Vec<Scalar>& xi);
// Same locus via Gamma^(k)(Z, Xi) = 0 for all k < M - 1.
bool in_canonical_distribution_forms(const CliffordModel& md, const Vec<Scalar>& z, const Vec<Scalar>& xi);

// Xi + (i/2) s A.Xi
Vec<Scalar> distinguished_curve(const CliffordModel& md, const Vec<Scalar>& xi, const Vec<Scalar>& a,
                                const Scalar& s);
Vec<Scalar> distinguished_tangent(const CliffordModel& md, const Vec<Scalar>& xi, const Vec<Scalar>& a);

// Components Z_(0) = 1, Z_(-1), Z_(-2) only.
bool is_tangent_form(const FockComponents& c);

struct GeometricTReport {
  int dim = 0;
  bool inter3 = false;          // Z2 ^ W2 = 0  <=>  dim >= m - 3
  bool inter2_literal = false;  // Z1 ^ W2 + W1 ^ Z2 = 0  <=>  dim >= m - 2
  bool inter2 = false;          // with Z2 ^ W2 = 0 added on the left
  bool inter1 = false;          // W2 - Z2 - W1 ^ Z1 = 0  <=>  dim >= m - 1
  bool all() const { return inter3 && inter2 && inter1; }
};

// Both inputs relative to the same frame and of tangent form; throws otherwise.
GeometricTReport check_prop_geometric_T(const FockFrame& f, const FockComponents& z, const FockComponents& w);

// A pair of tangent-form component sets drawn from a small vector pool so
// that coincidences of every order occur.
std::pair<FockComponents, FockComponents> random_tangent_pair(Rng& rng, int dim);

// Pure pair (Z, W) whose intersection dimension is spread over -1..M-1:
// W is built at the vacuum from a low-rank Z_(-2), then both are moved by
// the same random reflections.
std::pair<Vec<Scalar>, Vec<Scalar>> random_pure_pair(const CliffordModel& md, const FockFrame& vacuum, Rng& rng);

}  // namespace nf
