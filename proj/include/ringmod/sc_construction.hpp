#pragma once

#include "ringmod/geometry.hpp"
#include "ringmod/harmonic.hpp"
#include "ringmod/quadrature.hpp"

namespace ringmod {

// Conformal map phi of the upper half-plane onto the region above the
// piecewise-linear profile (height b left of x=-1, downslope to 0 at x=1,
// height 0 to the right), normalized by phi(1) = 1, phi(-1) = -1 + bi.
// phi'(z) = C (z+1)^mu (z-1)^{-mu}, prevertices -1 and 1.
struct GbModel {
  double b = 0.0;
  double mu = 0.0;  // arctan(b/2)/pi
  double C = 1.0;   // real, positive
  QuadRule endpoint_plus;   // weight t^{-mu} panels (anchor +1)
  QuadRule endpoint_minus;  // weight t^{+mu} panels (anchor -1)
};

GbModel build_gb(double b);

// phi(z) for Im z >= 0 by anchored quadrature from the nearest prevertex.
complexd sc_map(const GbModel& model, complexd z);

// phi'(z), principal branches.
complexd sc_derivative(const GbModel& model, complexd z);

// Disagreement of the two quadrature anchors at z = 0 (quadrature self-check;
// the normalization conditions at the prevertices hold by construction).
double normalization_residual(const GbModel& model);

struct SCResult {
  double s_b = 0.0, t_b = 0.0;
  double modulus = 0.0;       // Mod of the slit ring at (s_b, t_b)
  double resid_left = 0.0;    // |Re phi(-s_b) + s'|
  double resid_right = 0.0;   // |Re phi(t_b) - t'|
};

// Solve Re phi(t_b) = t' and Re phi(-s_b) = -s' on the boundary rays.
SCResult solve_preimages(const GbModel& model, double s_prime, double t_prime);

struct SolveBResult {
  double b = 0.0;
  GbModel model;
  SCResult sc;
};

// Find b with Mod of the preimage ring equal to target_modulus (bracketing
// sweep + bisection; monotonicity in b is observed, not assumed).
SolveBResult solve_b(double target_modulus, double s_prime, double t_prime);

// h(z) = Re phi(z) + i Im z on the upper half, conjugate-reflected below.
struct SCShearMap {
  GbModel model;
  SCResult sc;
  double s_prime = 0.0, t_prime = 0.0;

  complexd eval(complexd z) const;
  complexd dz(complexd z) const;
  complexd dzb(complexd z) const;
};

SCShearMap assemble_shear_harmonic(const GbModel& model, const SCResult& sc,
                                   double s_prime, double t_prime);
HarmonicMapModel model_of(const SCShearMap& m);

// Realized slit rings the map goes between.
DoublyConnectedDomain sc_source_domain(const SCShearMap& m);
DoublyConnectedDomain sc_target_domain(const SCShearMap& m);

}  // namespace ringmod
