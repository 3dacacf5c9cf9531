#pragma once

#include <optional>
#include <vector>

#include "nullfoliate/poly.hpp"
#include "nullfoliate/purespinor.hpp"
#include "nullfoliate/tractor.hpp"

namespace nf {

// Variable layout of the dense charts (pi^0 = 1).
//   F:  z^A, z_A, u, pi^A, pi^{AB} (A < B)
//   PT: omega^0, omega^A, pi^A, pi^{AB}
struct ChartLayout {
  int m = 0;
  std::vector<std::uint32_t> pairs;

  explicit ChartLayout(int m);
  int pair_index(int a, int b) const;  // a < b
  int z_up(int a) const { return a; }
  int z_dn(int a) const { return m + a; }
  int u() const { return 2 * m; }
  int pi(int a) const { return 2 * m + 1 + a; }
  int pi2(int p) const { return 3 * m + 1 + p; }
  int nF() const { return 3 * m + 1 + static_cast<int>(pairs.size()); }
  int w0() const { return 0; }
  int w(int a) const { return 1 + a; }
  int pt_pi(int a) const { return 1 + m + a; }
  int pt_pi2(int p) const { return 1 + 2 * m + p; }
  int nPT() const { return 1 + 2 * m + static_cast<int>(pairs.size()); }
};

struct ChartPointF {
  Vec<Scalar> z_up, z_dn;
  Scalar u;
  Vec<Scalar> pi_A, pi_AB;  // pi_AB in pair order
};
struct ChartPointPT {
  Scalar omega_0;
  Vec<Scalar> omega_A, pi_A, pi_AB;
};
struct MiniTwistorPoint {
  Vec<Scalar> omega_bar_A, pi_A, pi_AB;
};

ChartPointF random_chart_point(const ChartLayout& L, Rng& rng, long bound = 3);
Vec<Scalar> chart_x(const ChartPointF& p);

// pi = o + (i/2) pi^A delta_A - 1/4 pi^{AB} delta_AB + ..., completed by the recursion.
Vec<Scalar> pi_spinor_from_chart(const CliffordModel& v0, const Vec<Scalar>& pi_A, const Vec<Scalar>& pi_AB);
// exp(-1/4 pi^{ab} gamma_ab) o with gamma_ab in contraction order and
// pi^{ab} = pi^{AB} + 2 pi^{[A} u^{b]}.
Vec<Scalar> pi_spinor_exp(const CliffordModel& v0, const Vec<Scalar>& pi_A, const Vec<Scalar>& pi_AB);

ChartPointPT mu_project(const ChartLayout& L, const ChartPointF& p);
MiniTwistorPoint tau_project(const ChartPointPT& p);
ChartPointPT y_flow(const ChartPointPT& p, const Scalar& t);

// Homogeneous tractor spinor (omega, pi) with omega = omega^a gamma_a pi / sqrt2.
Vec<Scalar> lift_twistor(const ConformalFrame& fr, const ChartPointPT& p);
// Inverse of lift_twistor on the dense chart; throws when pi^0 = 0.
ChartPointPT read_chart(const ConformalFrame& fr, const Vec<Scalar>& z);
bool incident(const ConformalFrame& fr, const Vec<Scalar>& x, const Vec<Scalar>& z);

// Vector fields and 1-forms as coefficient lists over coordinate bases.
// d/dpi^{AB} is the unit-weight tensor derivative: half the coordinate derivative.
struct FFrames {
  std::vector<PolyVec> d_up, Z, W, X2, theta, dz_dn, dpi, alpha2;
  PolyVec U, theta0;
};
FFrames chart_frames(const ChartLayout& L);

struct PTFrames {
  std::vector<PolyVec> X, X2, Y_A, alpha, alpha2;
  PolyVec Y;
};
PTFrames pt_frames(const ChartLayout& L);

// PT coordinates as polynomials on F (the incidence map).
PolyVec mu_map(const ChartLayout& L);
// omega_bar^A as polynomials on PT.
PolyVec omega_bar_pt(const ChartLayout& L);

Poly apply_field(const PolyVec& field, const Poly& f);
Poly pairing(const PolyVec& form, const PolyVec& field);
PolyVec pullback(const PolyVec& form, const PolyVec& map, int source_vars);

// Matrix of <form_i, field_j> over the cotangent basis
// [dz_A, dpi^A, theta0, alpha^{AB}, theta^A] and tangent basis
// [d_A, X_AB, U, W_A, Z^A], evaluated at a point.
Mat<Scalar> frame_pairings(const FFrames& fr, const Vec<Scalar>& point);

// mu*(alpha^A) - alpha^{AB} z_B - theta^A, one entry per A.
std::vector<PolyVec> pullback_residual(const ChartLayout& L);

struct EigenBranch {
  cplx value;
  std::optional<Scalar> exact;
  int algebraic = 0;
  int geometric = 0;
};
struct EigenReport {
  bool exact = false;
  std::vector<EigenBranch> branches;  // sorted by value
};

// Characteristic polynomial coefficients c_0..c_n (monic) by Faddeev-LeVerrier.
std::vector<Scalar> char_poly(const Mat<Scalar>& a);
EigenReport float_eigen(const Mat<cplx>& a, double gap = 1e-6);

EigenReport spin_endo_eigen(const CliffordModel& v0, const Vec<Scalar>& v);

struct ZeroBranch {
  cplx value;
  int multiplicity = 0;
  int lower = -1, upper = -1;  // projective dimension bounds of the pure locus
  int dim() const { return lower == upper ? lower : -2; }
};
struct ZeroSetReport {
  bool null = false;
  bool exact = false;
  std::vector<ZeroBranch> branches;
  std::optional<Scalar> discriminant;  // m = 1 only
};

// Pure eigenspinors of V^a gamma_a: the zero set of the normal section.
ZeroSetReport normal_section_zeros(const CliffordModel& v0, const Vec<Scalar>& v);

struct CkyBranch {
  cplx value;
  std::optional<Scalar> exact;
  int multiplicity = 0;
  std::optional<Vec<Scalar>> spinor;
  std::optional<Vec<cplx>> spinor_f;
  bool pure = false;
};
struct CkyEigenReport {
  bool exact = false;
  std::vector<CkyBranch> branches;
};

// sigma^{ab} gamma_b gamma_a on the V0 spinors, sigma given with lower indices (n*n).
Mat<Scalar> cky_endomorphism(const CliffordModel& v0, const Vec<Scalar>& sigma);
CkyEigenReport cky_eigenspinors(const CliffordModel& v0, const Vec<Scalar>& sigma);
CkyEigenReport cky_eigenspinors(const CliffordModel& v0, const Mat<cplx>& endo);

}  // namespace nf
