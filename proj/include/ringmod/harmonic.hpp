#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ringmod/canonical.hpp"
#include "ringmod/geometry.hpp"

namespace ringmod {

// h(r e^{it}) = sum_n (A_n r^|n| + B_n r^-|n|) e^{int}, n = 0 term A_0 + B_0 log r.
// Inner radius 1, outer radius rho.  Each term is harmonic, so the whole map is.
struct AnnulusHarmonicMap {
  double rho = 2.0;
  int N = 0;
  std::vector<complexd> A, B;  // index n + N, n in [-N, N]

  complexd coefA(int n) const { return A[static_cast<size_t>(n + N)]; }
  complexd coefB(int n) const { return B[static_cast<size_t>(n + N)]; }
  complexd eval(complexd z) const;
  complexd dz(complexd z) const;
  complexd dzb(complexd z) const;
  // Fraction of coefficient energy in the last octave |n| in (N/2, N].
  double spectral_tail() const;
};

AnnulusHarmonicMap solve_annulus_dirichlet(double rho,
                                           const std::vector<complexd>& inner_data,
                                           const std::vector<complexd>& outer_data,
                                           int N = 64);

// An exactly-known conformal parametrization of an annulus target.
struct ConformalParam {
  std::string name;
  std::function<complexd(complexd)> f;
  std::function<complexd(complexd)> df;
};
ConformalParam conformal_identity();
// (z - a)/(1 - a z): unit circle to unit circle, outer circle to an eccentric one.
ConformalParam conformal_mobius(double a);
ConformalParam conformal_inverse_perturb(double c);  // z + c/z

// Harmonic map on A(1, (1+eps)R) with boundary data f(z) at |z| = 1 and
// f(z/(1+eps)) at |z| = (1+eps)R.
AnnulusHarmonicMap construct_h_epsilon(const ConformalParam& f, double R,
                                       double epsilon, int N = 64, int M = 512);

struct EpsilonProbe {
  double epsilon = 0.0;
  double margin = 0.0;
  bool pass = false;
};
struct EpsilonSearchResult {
  double epsilon_1 = 0.0;         // largest probed epsilon with positive margin
  std::vector<EpsilonProbe> table;
};
// Scan + bisection for the largest epsilon keeping the Jacobian margin positive
// on a 64x256 polar sample grid.  Monotonicity is not assumed; the full probe
// table is returned.
EpsilonSearchResult max_epsilon(const ConformalParam& f, double R, double tol = 1e-3);

// h(z) = a z + b / conj(z) between A(r, R) and A(r*, R*).
struct RadialNitscheMap {
  double a = 1.0, b = 0.0;
  double r = 1.0, R = 2.0, rstar = 1.0, Rstar = 2.0;

  complexd eval(complexd z) const { return a * z + b / std::conj(z); }
  complexd dz(complexd) const { return complexd(a, 0.0); }
  complexd dzb(complexd z) const {
    complexd zb = std::conj(z);
    return -b / (zb * zb);
  }
};
// nullopt = certified nonexistence (target ratio below (R/r + r/R)/2).
std::optional<RadialNitscheMap> radial_nitsche_map(double r, double R, double rstar,
                                                   double Rstar);

// h(z) = Re(z^alpha) + i Im z, principal branch, cut (-inf, 0].
struct PowerShearMap {
  double alpha = 1.25;

  complexd eval(complexd z) const;
  complexd dz(complexd z) const;
  complexd dzb(complexd z) const;
};
struct PowerShearResult {
  PowerShearMap map;
  CanonicalRing source_ring;  // unit slit ring at (a^{1/alpha}, b^{1/alpha})
  CanonicalRing target_ring;  // unit slit ring at (a, b)
};
PowerShearResult power_shear_map(double a, double b, double alpha);

// (1 - b^{1/alpha})/(1 - b) > ((b/a)^{1/alpha} - 1)/(b/a - 1)
bool secant_slope_inequality(double a, double b, double alpha);

// Type-erased evaluatable map with Wirtinger derivatives.
struct HarmonicMapModel {
  std::string kind;
  std::function<complexd(complexd)> eval;
  std::function<complexd(complexd)> dz;
  std::function<complexd(complexd)> dzb;
};
HarmonicMapModel model_of(const AnnulusHarmonicMap& m);
HarmonicMapModel model_of(const RadialNitscheMap& m);
HarmonicMapModel model_of(const PowerShearMap& m);

struct VerifyOptions {
  int radial_samples = 64;
  int angular_samples = 256;
  int cartesian_samples = 96;  // per axis, slit-complement sources
  int boundary_samples = 256;
  int winding_samples = 1024;
  double slit_clip = 1e-3;
  double boundary_tol = 1e-4;
  double stencil_scale = 1e-2;  // largest stencil arm
};

struct MapVerificationReport {
  double harmonicity_residual = 0.0;  // max |sum of 4 neighbors - 4 center|
  double jacobian_margin = 0.0;       // min |h_z| - |h_zb|
  double interior_margin = 0.0;       // same, away from the boundary layer
  double boundary_distance = 0.0;
  int winding_degree = 0;
  bool boundary_degenerate = false;
  double skipped_fraction = 0.0;
  double min_abs_fprime = 0.0;  // min |h_z| seen (diagnostic)
  bool pass = false;
  std::vector<std::string> reasons;
};

MapVerificationReport verify_map(const HarmonicMapModel& map,
                                 const DoublyConnectedDomain& source,
                                 const DoublyConnectedDomain& target,
                                 const VerifyOptions& options = {});

}  // namespace ringmod
