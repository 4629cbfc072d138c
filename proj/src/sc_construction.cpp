#include "ringmod/sc_construction.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "ringmod/canonical.hpp"
#include "ringmod/errors.hpp"

namespace ringmod {

namespace {

constexpr int kPanelNodes = 64;
constexpr double kPi = 3.14159265358979323846;

complexd canon_upper(complexd z) {
  // Im == -0.0 would land power branches on the wrong side of the cut.
  if (z.imag() == 0.0) return complexd(z.real(), 0.0);
  return z;
}

// Integral leg from anchor +1: phi(z) = 1 + C w^{1-mu} I(w), w = z - 1,
// I(w) = int_0^1 t^{-mu} (2 + t w)^mu dt.
complexd eval_from_plus(const GbModel& model, complexd z) {
  const double mu = model.mu;
  const complexd w = z - 1.0;
  const double aw = std::abs(w);
  if (aw == 0.0) return complexd(1.0, 0.0);
  const double c = std::min(1.0, 1.0 / std::max(1.0, aw));
  complexd acc(0.0, 0.0);
  for (std::size_t i = 0; i < model.endpoint_plus.x.size(); ++i) {
    const double t = 0.5 * c * (1.0 + model.endpoint_plus.x[i]);
    acc += model.endpoint_plus.w[i] * std::pow(2.0 + t * w, mu);
  }
  acc *= std::pow(0.5 * c, 1.0 - mu);
  if (c < 1.0) {
    acc += integrate(
        [&](double t) { return std::pow(t, -mu) * std::pow(2.0 + t * w, mu); },
        c, 1.0, 1e-12);
  }
  return 1.0 + model.C * std::pow(w, 1.0 - mu) * acc;
}

// Integral leg from anchor -1: phi(z) = (-1 + ib) + C w^{1+mu} J(w),
// w = z + 1, J(w) = int_0^1 t^{mu} (t w - 2)^{-mu} dt.
complexd eval_from_minus(const GbModel& model, complexd z) {
  const double mu = model.mu;
  const complexd w = z + 1.0;
  const double aw = std::abs(w);
  if (aw == 0.0) return complexd(-1.0, model.b);
  const double c = std::min(1.0, 1.0 / std::max(1.0, aw));
  complexd acc(0.0, 0.0);
  for (std::size_t i = 0; i < model.endpoint_minus.x.size(); ++i) {
    const double t = 0.5 * c * (1.0 + model.endpoint_minus.x[i]);
    acc += model.endpoint_minus.w[i] * std::pow(t * w - 2.0, -mu);
  }
  acc *= std::pow(0.5 * c, 1.0 + mu);
  if (c < 1.0) {
    acc += integrate(
        [&](double t) { return std::pow(t, mu) * std::pow(t * w - 2.0, -mu); },
        c, 1.0, 1e-12);
  }
  return complexd(-1.0, model.b) + model.C * std::pow(w, 1.0 + mu) * acc;
}

}  // namespace

GbModel build_gb(double b) {
  if (!std::isfinite(b) || b <= 0.0)
    throw Error(ErrorKind::InvalidInput, "bend height b must be positive");
  GbModel model;
  model.b = b;
  model.mu = std::atan(0.5 * b) / kPi;
  model.endpoint_plus = gauss_jacobi(kPanelNodes, 0.0, -model.mu);
  model.endpoint_minus = gauss_jacobi(kPanelNodes, 0.0, model.mu);
  // Segment-image length fixes |C|: the boundary integral over (-1,1) is the
  // Jacobi weight integral; the phase -pi*mu is carried by the branch factors,
  // leaving C real and positive.
  const QuadRule seg = gauss_jacobi(kPanelNodes, -model.mu, model.mu);
  double seg_integral = 0.0;
  for (double wi : seg.w) seg_integral += wi;
  model.C = std::hypot(2.0, b) / seg_integral;
  return model;
}

complexd sc_map(const GbModel& model, complexd z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw Error(ErrorKind::InvalidInput, "sc_map: non-finite argument");
  if (z.imag() < 0.0)
    throw Error(ErrorKind::InvalidInput, "sc_map: Im z must be >= 0");
  z = canon_upper(z);
  return (z.real() >= 0.0) ? eval_from_plus(model, z) : eval_from_minus(model, z);
}

complexd sc_derivative(const GbModel& model, complexd z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw Error(ErrorKind::InvalidInput, "sc_derivative: non-finite argument");
  if (z.imag() < 0.0)
    throw Error(ErrorKind::InvalidInput, "sc_derivative: Im z must be >= 0");
  z = canon_upper(z);
  if (z == complexd(1.0, 0.0))
    throw Error(ErrorKind::PathThroughSingularity,
                "sc_derivative: unbounded at the prevertex z = 1");
  return model.C * std::pow(z + 1.0, model.mu) * std::pow(z - 1.0, -model.mu);
}

double normalization_residual(const GbModel& model) {
  const complexd z(0.0, 0.0);
  return std::abs(eval_from_plus(model, z) - eval_from_minus(model, z));
}

SCResult solve_preimages(const GbModel& model, double s_prime, double t_prime) {
  if (!std::isfinite(s_prime) || !std::isfinite(t_prime) || s_prime <= 1.0 ||
      t_prime <= 1.0)
    throw Error(ErrorKind::InvalidInput, "ray targets must satisfy s', t' > 1");

  const auto re_at = [&](double x) { return sc_map(model, complexd(x, 0.0)).real(); };

  // Right ray: Re phi increases from 1 at x = 1.
  double lo = 1.0, hi = 2.0;
  while (re_at(hi) < t_prime) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12)
      throw Error(ErrorKind::BracketFailure, "right preimage bracket overflow");
  }
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    (re_at(mid) < t_prime ? lo : hi) = mid;
  }
  const double t_b = 0.5 * (lo + hi);

  // Left ray: Re phi decreases from -1 at x = -1.
  double right = -1.0, left = -2.0;
  while (re_at(left) > -s_prime) {
    right = left;
    left *= 2.0;
    if (left < -1e12)
      throw Error(ErrorKind::BracketFailure, "left preimage bracket overflow");
  }
  while (right - left > 1e-10) {
    const double mid = 0.5 * (left + right);
    (re_at(mid) > -s_prime ? right : left) = mid;
  }
  const double s_b = -0.5 * (left + right);

  SCResult out;
  out.s_b = s_b;
  out.t_b = t_b;
  out.resid_right = std::abs(re_at(t_b) - t_prime);
  out.resid_left = std::abs(re_at(-s_b) + s_prime);
  out.modulus = modulus_canonical(CanonicalRing::double_teich(s_b, t_b)).value;
  return out;
}

SolveBResult solve_b(double target_modulus, double s_prime, double t_prime) {
  if (!std::isfinite(s_prime) || !std::isfinite(t_prime) || s_prime <= 1.0 ||
      t_prime <= 1.0)
    throw Error(ErrorKind::InvalidInput, "ray targets must satisfy s', t' > 1");
  const double cap =
      modulus_canonical(CanonicalRing::double_teich(s_prime, t_prime)).value;
  if (!std::isfinite(target_modulus) || target_modulus <= 0.0 ||
      target_modulus >= cap)
    throw Error(ErrorKind::HypothesisViolated,
                "target modulus must lie strictly between 0 and the modulus "
                "of the target ring");

  struct Probe {
    GbModel model;
    SCResult sc;
  };
  const auto probe = [&](double b) {
    Probe p;
    p.model = build_gb(b);
    p.sc = solve_preimages(p.model, s_prime, t_prime);
    return p;
  };

  // Geometric sweep until the modulus drops through the target.
  double b_hi = 1.0 / 16.0;
  double b_lo = 1e-8;
  Probe at_hi = probe(b_hi);
  while (at_hi.sc.modulus > target_modulus) {
    b_lo = b_hi;
    b_hi *= 2.0;
    if (b_hi > 2e4)
      throw Error(ErrorKind::BracketFailure, "bend height sweep exhausted");
    at_hi = probe(b_hi);
  }

  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (b_lo + b_hi);
    Probe p = probe(mid);
    if (std::abs(p.sc.modulus - target_modulus) < 1e-6) {
      SolveBResult out;
      out.b = mid;
      out.model = std::move(p.model);
      out.sc = p.sc;
      return out;
    }
    (p.sc.modulus > target_modulus ? b_lo : b_hi) = mid;
  }
  throw Error(ErrorKind::SolverFailure, "bend height bisection stalled");
}

complexd SCShearMap::eval(complexd z) const {
  const complexd zu = (z.imag() < 0.0) ? std::conj(z) : z;
  const complexd ph = sc_map(model, zu);
  return complexd(ph.real(), z.imag());
}

complexd SCShearMap::dz(complexd z) const {
  if (z.imag() < 0.0) {
    const complexd dp = sc_derivative(model, std::conj(z));
    return 0.5 * (std::conj(dp) + 1.0);
  }
  const complexd dp = sc_derivative(model, z);
  return 0.5 * (dp + 1.0);
}

complexd SCShearMap::dzb(complexd z) const {
  if (z.imag() < 0.0) {
    const complexd dp = sc_derivative(model, std::conj(z));
    return 0.5 * (dp - 1.0);
  }
  const complexd dp = sc_derivative(model, z);
  return 0.5 * (std::conj(dp) - 1.0);
}

SCShearMap assemble_shear_harmonic(const GbModel& model, const SCResult& sc,
                                   double s_prime, double t_prime) {
  if (!(sc.s_b > 1.0) || !(sc.t_b > 1.0))
    throw Error(ErrorKind::InvalidInput, "preimage ray endpoints must exceed 1");
  SCShearMap m;
  m.model = model;
  m.sc = sc;
  m.s_prime = s_prime;
  m.t_prime = t_prime;
  return m;
}

HarmonicMapModel model_of(const SCShearMap& m) {
  HarmonicMapModel out;
  out.kind = "sc-shear";
  out.eval = [m](complexd z) { return m.eval(z); };
  out.dz = [m](complexd z) { return m.dz(z); };
  out.dzb = [m](complexd z) { return m.dzb(z); };
  return out;
}

DoublyConnectedDomain sc_source_domain(const SCShearMap& m) {
  return realize_canonical(CanonicalRing::double_teich(m.sc.s_b, m.sc.t_b));
}

DoublyConnectedDomain sc_target_domain(const SCShearMap& m) {
  return realize_canonical(CanonicalRing::double_teich(m.s_prime, m.t_prime));
}

}  // namespace ringmod
