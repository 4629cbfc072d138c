#include "ringmod/canonical.hpp"

#include <cmath>

#include "ringmod/errors.hpp"

namespace ringmod {

namespace {

constexpr double kPi = 3.14159265358979323846;

double agm(double a, double b) {
  for (int it = 0; it < 64; ++it) {
    double an = 0.5 * (a + b);
    double bn = std::sqrt(a * b);
    if (std::abs(an - bn) < 1e-15 * an) return an;
    a = an;
    b = bn;
  }
  return 0.5 * (a + b);
}

double teichmuller_modulus(double s) {
  if (!(s > 0))
    throw Error(ErrorKind::InvalidInput, "teichmuller modulus needs s > 0");
  return 2.0 * grotzsch_mu(1.0 / std::sqrt(1.0 + s));
}

}  // namespace

double grotzsch_mu(double r) {
  if (!(r > 0.0 && r < 1.0))
    throw Error(ErrorKind::InvalidInput, "grotzsch_mu needs r in (0,1)");
  double rp = std::sqrt((1.0 - r) * (1.0 + r));
  return (kPi / 2.0) * agm(1.0, rp) / agm(1.0, r);
}

ModulusEstimate modulus_canonical(const CanonicalRing& ring) {
  ModulusEstimate est;
  est.error = 1e-10;
  est.method = "closed-form";
  using K = CanonicalRing::Kind;
  switch (ring.kind) {
    case K::Annulus:
      if (!(ring.p0 > 0 && ring.p1 > ring.p0))
        throw Error(ErrorKind::InvalidInput, "annulus needs 0 < r < R");
      est.value = std::log(ring.p1 / ring.p0);
      break;
    case K::Grotzsch:
      if (!(ring.p0 > 1))
        throw Error(ErrorKind::InvalidInput, "grotzsch needs s > 1");
      est.value = grotzsch_mu(1.0 / ring.p0);
      break;
    case K::Teichmuller:
      est.value = teichmuller_modulus(ring.p0);
      break;
    case K::DoubleTeich: {
      if (!(ring.p0 > 1 && ring.p1 > 1))
        throw Error(ErrorKind::InvalidInput, "double teichmuller needs s, t > 1");
      double sp = (ring.p0 - 1.0) * (ring.p1 - 1.0) / (2.0 * (ring.p0 + ring.p1));
      est.value = teichmuller_modulus(sp);
      break;
    }
    case K::DoubleTeichUnit: {
      if (!(ring.p0 > 0 && ring.p1 > ring.p0 && ring.p1 < 1))
        throw Error(ErrorKind::InvalidInput, "unit form needs 0 < a < b < 1");
      double sp = (1.0 - ring.p1) / (ring.p1 / ring.p0 - 1.0);
      est.value = teichmuller_modulus(sp);
      break;
    }
  }
  return est;
}

bool nitsche_existence(double R_over_r, double Rstar_over_rstar) {
  if (!(R_over_r > 1 && Rstar_over_rstar > 1))
    throw Error(ErrorKind::InvalidInput, "nitsche_existence needs ratios > 1");
  return Rstar_over_rstar >= 0.5 * (R_over_r + 1.0 / R_over_r);
}

}  // namespace ringmod
