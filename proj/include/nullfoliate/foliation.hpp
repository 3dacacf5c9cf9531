#pragma once

#include <stdexcept>
#include <vector>

#include "nullfoliate/charts.hpp"
#include "nullfoliate/incidence.hpp"
#include "nullfoliate/tractor.hpp"

namespace nf {

struct DegenerateSection : std::invalid_argument {
  explicit DegenerateSection(const std::string& what) : std::invalid_argument(what) {}
};
struct EigenvalueCollision : std::domain_error {
  EigenvalueCollision() : std::domain_error("eigenvalue collision at sample point") {}
};

// num / q^k for a denominator q fixed by the context.
struct QRational {
  Poly num;
  int k = 0;
};

// Arithmetic of QRationals sharing the denominator q.
class RationalOver {
 public:
  explicit RationalOver(Poly q);
  const Poly& q() const { return q_; }
  int nvars() const { return q_.nvars(); }

  QRational constant(const Scalar& c) const { return {Poly(nvars(), c), 0}; }
  QRational poly(const Poly& p) const { return {p, 0}; }
  QRational ratio(const Poly& p) const { return {p, 1}; }

  QRational add(const QRational& a, const QRational& b) const;
  QRational sub(const QRational& a, const QRational& b) const;
  QRational mul(const QRational& a, const QRational& b) const;
  QRational scale(const Scalar& s, QRational a) const;
  QRational derivative(const QRational& a, int i) const;

  template <class T>
  T eval(const QRational& a, const Vec<T>& x) const {
    T d = q_.eval(x), r = a.num.eval(x);
    for (int j = 0; j < a.k; ++j) r = r / d;
    return r;
  }

 private:
  Poly q_;
  std::vector<Poly> dq_;
  QRational raise(const QRational& a, int k) const;
};

// Almost null structure as a rational projective pure spinor field: Fock
// numerators at the chart vacuum, indexed by subset mask, over the V0
// coordinates (z^A, z_A, u). comps[0] is the common denominator.
struct NullSection {
  int m = 0;
  Parity parity = Parity::odd;
  int nvars = 0;
  PolyVec comps;

  const Poly& denominator() const { return comps[0]; }
  const Poly& xi_A(int a) const { return comps[1u << a]; }
  // a != b, antisymmetric
  Poly xi_AB(int a, int b) const;
};

// Section with pi^A = xi_A / q, pi^{AB} = xi_AB / q (pair order), higher
// components completed and cleared of denominators. Even sections take no xi_A.
NullSection section_from_chart(int m, Parity parity, const PolyVec& xi_A, const PolyVec& xi_AB, const Poly& q);
NullSection constant_section(int m, Parity parity, const Vec<Scalar>& pi_A, const Vec<Scalar>& pi_AB);
// Purity relations of the components as polynomial identities.
bool section_pure(const NullSection& s);

// Vector fields as rational coefficient lists over d/dx^a.
using RationalField = std::vector<QRational>;
struct NullFrame {
  std::vector<RationalField> Z;
  RationalField U;  // empty for even sections
};

NullFrame frame(const NullSection& s, const RationalOver& R);
NullFrame frame(const NullSection& s);
// g(Z^A, Z^B), g(Z^A, U) vanish and g(U, U) = 1 identically.
bool frame_orthogonality_holds(const NullSection& s, const Mat<Scalar>& gram);

// Numerators of the residual displays, nonzero entries only.
struct PdeResiduals {
  std::vector<Poly> geodetic, cointegrable, cogeodetic;
};
PdeResiduals pde_residuals(const NullSection& s);

bool check_geodetic(const NullSection& s);
bool check_cointegrable(const NullSection& s);
bool check_cogeodetic(const NullSection& s);
// Even chart: (d^A + xi^{AD} d_D) xi^{BC} = 0.
bool check_even_kerr(const NullSection& s);

// Chart point of the section at x; throws DegenerateSection when the denominator vanishes.
ChartPointF section_point(const NullSection& s, const Vec<Scalar>& x);
// Span of Z^A at x and at a second point of the affine leaf through x.
bool leaf_span_constant(const NullSection& s, const Vec<Scalar>& x, Rng& rng);

// Section of the pure conformal Killing spinor xi(x) = xi0 - x.gamma zeta0 / sqrt2.
NullSection robinson_section(const ConformalFrame& fr, const TractorSpinorPair& p);

// Paper-form residuals of the twistor variety through Xi, per block.
struct RobinsonVariety {
  Mat<Scalar> omega_xi, pi_zeta, omega_zeta, pi_xi;
  bool holds() const;
};
RobinsonVariety robinson_variety(const CliffordModel& v0, const OmegaPi& z, const TractorSpinorPair& p);

struct RobinsonReport {
  int samples = 0;
  int passed = 0;
  int skipped = 0;  // denominator or spinor vanishing at the point
  int leaf_checked = 0;
  int leaf_passed = 0;
  bool all() const { return samples > 0 && passed == samples && leaf_passed == leaf_checked; }
};
RobinsonReport verify_robinson_twistor_variety(const ConformalFrame& fr, const TractorSpinorPair& p,
                                               const std::vector<Vec<Scalar>>& samples, Rng& rng);

// Random pure tractor spinor with xi^0 not identically zero.
TractorSpinorPair random_robinson_pair(const ConformalFrame& fr, Rng& rng);

// Even model: Xi of the chirality whose CKS part has even Fock degree.
TractorSpinorPair random_even_pair(const ConformalFrame& fr, Rng& rng);
NullSection even_section(const ConformalFrame& fr, const TractorSpinorPair& p);

struct KerrSample {
  bool sigma_graph = false;  // sigma^{ab} Gamma^(m+1)_{ab...}(pi, pi) = 0
  bool mu_graph = false;     // mu^{abc} Gamma^(m+1)_{abc...}(pi, pi) = 0
  bool tractor = false;      // Sigma^{ABC} Gamma^(m+2)_{ABC...}(Z, Z) = 0
  double residual = 0;
  bool ok() const { return sigma_graph && mu_graph && tractor; }
};
struct KerrReport {
  bool exact = true;
  int branch = 0;
  std::vector<cplx> values;  // selected eigenvalue per sample
  std::vector<KerrSample> samples;
  bool all() const;
};

// Branches are labeled by sorted eigenvalue at each sample.
KerrReport kerr_section(const ConformalFrame& fr, const CKYQuadruple& q, int branch,
                        const std::vector<Vec<Scalar>>& points, double tol = 1e-8);

// m = 2 quadruple with spectrum +-4, +-8 on the sample set z_A = 0. Branches
// 0..2 (sorted) satisfy the mu condition there; branch 3 does not.
CKYQuadruple curated_kerr_quadruple(const ConformalFrame& fr);
std::vector<Vec<Scalar>> curated_kerr_points(const ConformalFrame& fr, Rng& rng, int count);
// Random rational points where sigma(x) has 2^m simple Clifford eigenvalues.
std::vector<Vec<Scalar>> generic_kerr_points(const ConformalFrame& fr, const CKYQuadruple& q, Rng& rng, int count);
// mu0 = rho0 = 0, integer sigma0 and phi0.
CKYQuadruple random_closed_cky(const ConformalFrame& fr, Rng& rng, long bound = 3);

}  // namespace nf
