#pragma once

#include <vector>

#include "nullfoliate/clifford.hpp"
#include "nullfoliate/poly.hpp"
#include "nullfoliate/random.hpp"

namespace nf {

// Flat scale. Coordinates x^a are components along the V0 basis
// [e_A, f^A, (u)], so g is the V0 gram matrix.
struct ConformalFrame {
  int m = 0;
  CliffordModel v0, tractor;
  Vec<Scalar> X0, Y0;
  std::vector<Vec<Scalar>> Z0;
  Mat<Scalar> gram_v0;
  int n() const { return v0.N; }
};

ConformalFrame conformal_frame(int m, Parity parity = Parity::odd);
bool frame_invariants_hold(const ConformalFrame& fr);

// X(x) = X0 + x^a Z0_a - 1/2 g(x, x) Y0
Vec<Scalar> embed_point(const ConformalFrame& fr, const Vec<Scalar>& x);

struct FrameFields {
  PolyVec X, Y;
  std::vector<PolyVec> Z;
};
FrameFields frame_fields(const ConformalFrame& fr);
// d_a X = Z_a, d_a Z_b = -g_ab Y, d_a Y = 0 as polynomial identities.
bool frame_derivatives_hold(const ConformalFrame& fr, const FrameFields& f);

// Affine matrix field M(x) = c + x^a lin[a].
struct AffineMat {
  Mat<Scalar> c;
  std::vector<Mat<Scalar>> lin;
  Mat<Scalar> at(const Vec<Scalar>& x) const;
  const Mat<Scalar>& derivative(int a) const { return lin[a]; }
  PolyVec apply(const PolyVec& v) const;
};

// Spinor injectors: I = [Id; 0], O(x) = [gamma(x)/sqrt2; Id] and the dual
// projections O*(x) = [Id, -gamma(x)/sqrt2] (extracts omega), I* = [0, Id].
struct InjectorFields {
  AffineMat I, O, O_proj, I_proj;
};
InjectorFields injector_fields(const ConformalFrame& fr);
bool injector_derivatives_hold(const ConformalFrame& fr, const InjectorFields& inj);
// Gamma(V) reassembled from frame and injectors at x.
Mat<Scalar> bundle_gamma(const ConformalFrame& fr, const InjectorFields& inj, const Vec<Scalar>& x,
                         const Vec<Scalar>& v);

struct TractorSpinorPair {
  Vec<Scalar> xi0, zeta0;
};
struct CksFields {
  PolyVec xi, zeta;
};

CksFields cks_field(const ConformalFrame& fr, const TractorSpinorPair& p);
bool verify_cks(const ConformalFrame& fr, const CksFields& f);
// Central differences at real points against the CKS equation.
double cks_fd_residual(const ConformalFrame& fr, const CksFields& f, const Vec<double>& x, double h = 1e-4);
// I xi(x) + O(x) zeta(x); constant for a CKS.
PolyVec assemble_tractor_spinor(const ConformalFrame& fr, const InjectorFields& inj, const CksFields& f);
Vec<Scalar> tractor_spinor(const TractorSpinorPair& p);

// Lower-index tensors stored dense: 2-tensors n*n, 3-tensors n*n*n.
struct CKYQuadruple {
  int n = 0;
  Vec<Scalar> sigma0, mu0, phi0, rho0;
};
struct CkyFields {
  int n = 0;
  PolyVec sigma, mu, phi, rho;
};

bool cky_antisymmetric(const CKYQuadruple& q);
CKYQuadruple random_cky_quadruple(const ConformalFrame& fr, Rng& rng, long bound = 2);
CkyFields cky_field(const ConformalFrame& fr, const CKYQuadruple& q);
// The prolonged system with P = 0, plus mu = d_[a sigma_bc] and phi = div sigma / (n - 1).
bool verify_cky(const ConformalFrame& fr, const CkyFields& f);
// Sigma^{ABC}(x) as an N^3 tensor of polynomials.
PolyVec assemble_sigma(const ConformalFrame& fr, const CkyFields& f);
bool sigma_parallel(const PolyVec& sigma, int nvars);

}  // namespace nf
