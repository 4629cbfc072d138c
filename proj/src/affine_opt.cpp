#include "ringmod/affine_opt.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "ringmod/errors.hpp"

namespace ringmod {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double wrap_theta(double t) {
  t = std::fmod(t, kPi);
  if (t < 0) t += kPi;
  return t;
}

double line_coord(complexd p, complexd o, complexd u) {
  complexd d = p - o;
  return d.real() * u.real() + d.imag() * u.imag();
}

}  // namespace

const char* attained_name(Attained a) {
  switch (a) {
    case Attained::Attained: return "attained";
    case Attained::BoundaryLimit: return "boundary-limit";
    case Attained::Inconclusive: return "inconclusive";
  }
  return "?";
}

const char* invariance_class_name(AffineInvarianceClass c) {
  switch (c) {
    case AffineInvarianceClass::Degenerate: return "degenerate";
    case AffineInvarianceClass::TeichmullerAffine: return "teichmuller-affine";
    case AffineInvarianceClass::DoubleTeichmullerAffine: return "double-teichmuller-affine";
    case AffineInvarianceClass::NotInvariant: return "not-invariant";
  }
  return "?";
}

std::optional<CanonicalRing> canonical_from_collinear(const DoublyConnectedDomain& domain) {
  if (domain.canonical_tag) return domain.canonical_tag;
  if (!complement_collinear(domain)) return std::nullopt;
  complexd p = domain.bounded.vertices[0], q = domain.bounded.vertices[1];
  double len = std::abs(q - p);
  if (!(len > 0)) return std::nullopt;
  const auto& rays = domain.unbounded.rays;
  if (rays.size() == 1) {
    double s = std::min(std::abs(rays[0].from - p), std::abs(rays[0].from - q)) / len;
    if (!(s > 0)) return std::nullopt;
    return CanonicalRing::teichmuller(s);
  }
  if (rays.size() == 2) {
    complexd o = rays[0].from;
    complexd span = rays[1].from - o;
    double d = std::abs(span);
    if (!(d > 0)) return std::nullopt;
    complexd u = span / d;
    double a = line_coord(p, o, u) / d;
    double b = line_coord(q, o, u) / d;
    if (a > b) std::swap(a, b);
    if (!(a > 0 && b < 1)) return std::nullopt;
    return CanonicalRing::double_teich_unit(a, b);
  }
  return std::nullopt;
}

ModulusEstimate shear_objective(const DoublyConnectedDomain& domain, double theta,
                                double alpha, const CondenserOptions& cond) {
  if (!(alpha > 0 && alpha <= 1))
    throw Error(ErrorKind::InvalidInput, "shear objective needs alpha in (0,1]");
  if (complement_collinear(domain)) {
    // Affine maps of a line-complement ring are conformal images: the modulus
    // never moves, so evaluate the domain's own closed form.
    if (auto tag = canonical_from_collinear(domain)) return modulus_canonical(*tag);
  }
  // Away from the line-complement case every evaluation goes through the same
  // grid solver: mixing closed forms at isolated parameters with grid values
  // elsewhere would rank points by estimator bias instead of by modulus.
  if (alpha == 1.0) return modulus_numeric(domain, cond);
  DoublyConnectedDomain image = apply_affine(shear_family(theta, alpha), domain);
  return modulus_numeric(image, cond);
}

namespace {

struct Sweep {
  const DoublyConnectedDomain& domain;
  const AffineOptions& opts;
  std::vector<TracePoint>& trace;

  // Returns the modulus at (theta, alpha in log form), -inf on failure.
  double operator()(double theta, double log_alpha, const CondenserOptions& cond) {
    double alpha = std::exp(log_alpha);
    if (alpha > 1.0) {  // expanding shear = scaled compressing shear of the
      alpha = 1.0 / alpha;  // perpendicular direction
      theta += kPi / 2;
    }
    theta = wrap_theta(theta);
    if (alpha < opts.alpha_floor) return kNegInf;
    try {
      ModulusEstimate est = shear_objective(domain, theta, alpha, cond);
      trace.push_back({theta, alpha, est.value});
      return est.value;
    } catch (const Error&) {
      return kNegInf;
    }
  }
};

}  // namespace

AffineModulusResult affine_modulus(const DoublyConnectedDomain& domain,
                                   const AffineOptions& o) {
  if (domain.degenerate())
    throw Error(ErrorKind::DegenerateDomain, "affine modulus of a degenerate domain");

  AffineModulusResult res;
  if (complement_collinear(domain)) {
    if (auto tag = canonical_from_collinear(domain)) {
      res.value = modulus_canonical(*tag);
      res.maximizer = ShearNormalForm{};
      res.attained_flag = Attained::Attained;
      res.trace.push_back({0.0, 1.0, res.value.value});
      return res;
    }
  }

  Sweep sweep{domain, o, res.trace};
  double best = kNegInf, best_theta = 0.0, best_log_alpha = 0.0;
  for (int i = 0; i < o.alpha_grid; ++i) {
    double log_alpha =
        std::log(o.alpha_floor) * (1.0 - double(i) / (o.alpha_grid - 1));
    for (int k = 0; k < o.theta_grid; ++k) {
      double theta = kPi * k / o.theta_grid;
      double v = sweep(theta, log_alpha, o.sweep_cond);
      if (v > best) {
        best = v;
        best_theta = theta;
        best_log_alpha = log_alpha;
      }
    }
  }
  if (best == kNegInf)
    throw Error(ErrorKind::OptimizerFailure, "every shear evaluation failed");

  // Nelder-Mead in (theta, log alpha), maximizing.
  struct Vertex {
    std::array<double, 2> x;
    double f;
  };
  auto feval = [&](const std::array<double, 2>& x) {
    return sweep(x[0], x[1], o.refine_cond);
  };
  double dth = kPi / o.theta_grid;
  double dla = -std::log(o.alpha_floor) / (o.alpha_grid - 1);
  if (best_log_alpha + dla > 0.0) dla = -dla;
  std::array<Vertex, 3> simplex;
  simplex[0] = {{best_theta, best_log_alpha}, feval({best_theta, best_log_alpha})};
  simplex[1] = {{best_theta + dth, best_log_alpha},
                feval({best_theta + dth, best_log_alpha})};
  simplex[2] = {{best_theta, best_log_alpha + dla},
                feval({best_theta, best_log_alpha + dla})};

  auto order = [&] {
    std::sort(simplex.begin(), simplex.end(),
              [](const Vertex& a, const Vertex& b) { return a.f > b.f; });
  };
  order();
  for (int it = 0; it < o.refine_iters; ++it) {
    double size = std::max(
        std::hypot(simplex[1].x[0] - simplex[0].x[0], simplex[1].x[1] - simplex[0].x[1]),
        std::hypot(simplex[2].x[0] - simplex[0].x[0], simplex[2].x[1] - simplex[0].x[1]));
    if (size < o.simplex_tol) break;
    std::array<double, 2> cen = {(simplex[0].x[0] + simplex[1].x[0]) / 2,
                                 (simplex[0].x[1] + simplex[1].x[1]) / 2};
    auto at = [&](double t) -> std::array<double, 2> {
      return {cen[0] + t * (cen[0] - simplex[2].x[0]),
              cen[1] + t * (cen[1] - simplex[2].x[1])};
    };
    std::array<double, 2> xr = at(1.0);
    double fr = feval(xr);
    if (fr > simplex[0].f) {
      std::array<double, 2> xe = at(2.0);
      double fe = feval(xe);
      if (fe > fr)
        simplex[2] = {xe, fe};
      else
        simplex[2] = {xr, fr};
    } else if (fr > simplex[1].f) {
      simplex[2] = {xr, fr};
    } else {
      std::array<double, 2> xc = at(-0.5);
      double fc = feval(xc);
      if (fc > simplex[2].f) {
        simplex[2] = {xc, fc};
      } else {
        for (int v = 1; v < 3; ++v) {
          simplex[v].x = {(simplex[v].x[0] + simplex[0].x[0]) / 2,
                          (simplex[v].x[1] + simplex[0].x[1]) / 2};
          simplex[v].f = feval(simplex[v].x);
        }
      }
    }
    order();
  }

  // Best point ever seen wins (the trace kept everything finite).
  double opt_theta = best_theta, opt_alpha = std::exp(best_log_alpha), opt_v = best;
  for (const TracePoint& t : res.trace) {
    if (t.modulus > opt_v) {
      opt_v = t.modulus;
      opt_theta = t.theta;
      opt_alpha = t.alpha;
    }
  }
  res.value = shear_objective(domain, opt_theta, opt_alpha, o.final_cond);

  // An interior optimum only counts as attained if it beats the search floor
  // at matched resolution by more than the combined error; otherwise the
  // objective is still climbing when the family degenerates.
  double edge_theta = opt_theta;
  double edge_trace_best = kNegInf;
  for (const TracePoint& t : res.trace)
    if (t.alpha <= 4 * o.alpha_floor && t.modulus > edge_trace_best) {
      edge_trace_best = t.modulus;
      edge_theta = t.theta;
    }
  bool edge_competitive = false;
  if (opt_alpha > 2 * o.alpha_floor) {
    try {
      ModulusEstimate edge =
          shear_objective(domain, edge_theta, o.alpha_floor, o.final_cond);
      edge_competitive =
          edge.value + edge.error + res.value.error >= res.value.value;
    } catch (const Error&) {
      edge_competitive = false;  // the floor itself degenerates: optimum is interior
    }
  }
  if (opt_alpha <= 2 * o.alpha_floor || edge_competitive) {
    res.attained_flag = Attained::BoundaryLimit;
  } else {
    res.attained_flag = Attained::Attained;
    ShearNormalForm nf;
    nf.theta = wrap_theta(opt_theta + kPi / 2);  // preserved axis of the maximizing shear
    nf.alpha = opt_alpha;
    res.maximizer = nf;
  }
  return res;
}

AttainabilityReport attainability_sufficient(const DoublyConnectedDomain& domain) {
  if (domain.degenerate())
    throw Error(ErrorKind::DegenerateDomain, "attainability of a degenerate domain");
  AttainabilityReport rep;
  double d0 = 0.0;
  for (size_t i = 0; i < domain.bounded.vertices.size(); ++i)
    for (size_t j = i + 1; j < domain.bounded.vertices.size(); ++j)
      d0 = std::max(d0, std::abs(domain.bounded.vertices[i] - domain.bounded.vertices[j]));
  if (!(width(domain.bounded) > 1e-12 * std::max(d0, 1.0))) {
    rep.sufficient = false;
    rep.failed_condition = 1;
    return rep;
  }
  OverlapResult ov = projections_overlap_all_theta(domain);
  if (!ov.holds) {
    rep.sufficient = false;
    rep.failed_condition = 2;
    rep.witness_theta = ov.witness_theta;
    return rep;
  }
  rep.sufficient = true;
  return rep;
}

AffineInvarianceClass classify_affine_invariance(const DoublyConnectedDomain& domain) {
  if (domain.degenerate()) return AffineInvarianceClass::Degenerate;
  if (complement_collinear(domain)) {
    if (domain.unbounded.rays.size() == 1) return AffineInvarianceClass::TeichmullerAffine;
    if (domain.unbounded.rays.size() == 2)
      return AffineInvarianceClass::DoubleTeichmullerAffine;
  }
  return AffineInvarianceClass::NotInvariant;
}

double phi_lower(double tau) {
  if (!(tau > 0)) throw Error(ErrorKind::InvalidInput, "phi_lower needs tau > 0");
  double t = 1.0 / std::tanh(kPi * kPi / (2.0 * tau));
  double x = std::log(t);
  double bound = (x - std::log1p(x)) / (2.0 + x);
  return std::max(0.0, bound);
}

ObstructionReport necessary_obstruction(double mod_omega, double mod_aff_target,
                                        double err_omega, double err_target) {
  if (!(mod_omega > 0 && mod_aff_target > 0))
    throw Error(ErrorKind::InvalidInput, "obstruction needs positive moduli");
  ObstructionReport rep;
  double tau_low = mod_omega - err_omega;
  if (!(tau_low > 0)) tau_low = mod_omega;
  rep.ratio = (mod_aff_target + err_target) / tau_low;
  rep.threshold = phi_lower(tau_low);
  rep.obstructed = rep.ratio < rep.threshold;
  return rep;
}

double degeneration_rhs(const DoublyConnectedDomain& domain, double theta, double alpha) {
  double w = width(domain.bounded);
  if (!(w > 0))
    throw Error(ErrorKind::DegenerateDomain, "width of the bounded component is zero");
  DoublyConnectedDomain image = apply_affine(shear_family(theta, alpha), domain);
  SeparationDiameter sd = separation_and_diameter(image);
  return modulus_canonical(CanonicalRing::teichmuller(sd.d / w)).value;
}

}  // namespace ringmod
