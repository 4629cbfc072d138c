#pragma once

#include <string>

namespace ringmod {

// Modulus value in natural-log units plus an absolute error estimate and a
// note saying how it was obtained. value = +inf is the degenerate sentinel.
struct ModulusEstimate {
  double value = 0.0;
  double error = 0.0;
  std::string method;
};

// The five ring families with closed-form moduli.
//   Annulus{r, R}            : r < |z| < R
//   Grotzsch{s}              : complement = closed unit disk and the ray [s, inf)
//   Teichmuller{s}           : complement = [-1, 0] and [s, inf)
//   DoubleTeich{s, t}        : complement = [-1, 1] and (-inf, -s], [t, inf)
//   DoubleTeichUnit{a, b}    : complement = [a, b] and (-inf, 0], [1, inf)
struct CanonicalRing {
  enum class Kind { Annulus, Grotzsch, Teichmuller, DoubleTeich, DoubleTeichUnit };
  Kind kind;
  double p0 = 0.0;  // r | s | s | s | a
  double p1 = 0.0;  // R | - | - | t | b

  static CanonicalRing annulus(double r, double R) { return {Kind::Annulus, r, R}; }
  static CanonicalRing grotzsch(double s) { return {Kind::Grotzsch, s, 0.0}; }
  static CanonicalRing teichmuller(double s) { return {Kind::Teichmuller, s, 0.0}; }
  static CanonicalRing double_teich(double s, double t) { return {Kind::DoubleTeich, s, t}; }
  static CanonicalRing double_teich_unit(double a, double b) { return {Kind::DoubleTeichUnit, a, b}; }
};

// Modulus of the unit disk slit along [0, r], via AGM-evaluated complete
// elliptic integrals: mu(r) = (pi/2) K(sqrt(1-r^2)) / K(r).
double grotzsch_mu(double r);

// Closed-form modulus of any canonical ring.
ModulusEstimate modulus_canonical(const CanonicalRing& ring);

// A harmonic homeomorphism A(r,R) -> A(r*,R*) exists iff
// R*/r* >= (R/r + r/R) / 2.
bool nitsche_existence(double R_over_r, double Rstar_over_rstar);

}  // namespace ringmod
