#include "ringmod/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ringmod/errors.hpp"

namespace ringmod {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

bool finite(complexd z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

complexd AnnulusHarmonicMap::eval(complexd z) const {
  complexd zb = std::conj(z);
  complexd acc = coefA(0) + coefB(0) * std::log(std::abs(z));
  complexd zp = 1.0, zbp = 1.0;           // z^n, conj(z)^n
  complexd zi = 1.0 / z, zbi = 1.0 / zb;  // z^-1, conj(z)^-1
  complexd zip = 1.0, zbip = 1.0;
  for (int n = 1; n <= N; ++n) {
    zp *= z;
    zbp *= zb;
    zip *= zi;
    zbip *= zbi;
    acc += coefA(n) * zp + coefB(n) * zbip;    // +n modes
    acc += coefA(-n) * zbp + coefB(-n) * zip;  // -n modes
  }
  return acc;
}

complexd AnnulusHarmonicMap::dz(complexd z) const {
  complexd zi = 1.0 / z;
  complexd acc = coefB(0) * 0.5 * zi;
  complexd zp = 1.0;    // z^{n-1}
  complexd zip = zi;    // z^{-n-1}
  for (int n = 1; n <= N; ++n) {
    zip *= zi;
    acc += static_cast<double>(n) * (coefA(n) * zp - coefB(-n) * zip);
    zp *= z;
  }
  return acc;
}

complexd AnnulusHarmonicMap::dzb(complexd z) const {
  complexd zb = std::conj(z);
  complexd zbi = 1.0 / zb;
  complexd acc = coefB(0) * 0.5 * zbi;
  complexd zbp = 1.0;
  complexd zbip = zbi;
  for (int n = 1; n <= N; ++n) {
    zbip *= zbi;
    acc += static_cast<double>(n) * (coefA(-n) * zbp - coefB(n) * zbip);
    zbp *= zb;
  }
  return acc;
}

double AnnulusHarmonicMap::spectral_tail() const {
  double total = 0.0, tail = 0.0;
  for (int n = -N; n <= N; ++n) {
    double e = std::norm(coefA(n)) + std::norm(coefB(n));
    total += e;
    if (2 * std::abs(n) > N) tail += e;
  }
  return total > 0 ? tail / total : 0.0;
}

AnnulusHarmonicMap solve_annulus_dirichlet(double rho,
                                           const std::vector<complexd>& inner_data,
                                           const std::vector<complexd>& outer_data,
                                           int N) {
  if (!(rho > 1.0))
    throw Error(ErrorKind::InvalidInput, "annulus solver needs outer radius > 1");
  size_t M = inner_data.size();
  if (outer_data.size() != M)
    throw Error(ErrorKind::InvalidInput, "boundary sample counts differ");
  if (static_cast<int>(M) < 2 * N + 1)
    throw Error(ErrorKind::Undersampled,
                "need at least 2N+1 boundary samples for truncation N");

  std::vector<complexd> twiddle(M);
  for (size_t k = 0; k < M; ++k) twiddle[k] = std::polar(1.0, -kTwoPi * k / M);

  AnnulusHarmonicMap map;
  map.rho = rho;
  map.N = N;
  map.A.assign(2 * N + 1, 0.0);
  map.B.assign(2 * N + 1, 0.0);

  for (int n = -N; n <= N; ++n) {
    complexd c = 0.0, d = 0.0;
    for (size_t k = 0; k < M; ++k) {
      size_t idx = (static_cast<long long>(n) * k % static_cast<long long>(M) + M) % M;
      c += inner_data[k] * twiddle[idx];
      d += outer_data[k] * twiddle[idx];
    }
    c /= static_cast<double>(M);
    d /= static_cast<double>(M);
    if (n == 0) {
      map.A[N] = c;
      map.B[N] = (d - c) / std::log(rho);
    } else {
      double t = std::pow(rho, -std::abs(n));
      complexd B = (c - d * t) / (1.0 - t * t);
      map.A[n + N] = t * (d - c * t) / (1.0 - t * t);
      map.B[n + N] = B;
    }
  }
  return map;
}

ConformalParam conformal_identity() {
  return {"identity", [](complexd z) { return z; }, [](complexd) { return complexd(1.0, 0.0); }};
}

ConformalParam conformal_mobius(double a) {
  return {"mobius",
          [a](complexd z) { return (z - a) / (1.0 - a * z); },
          [a](complexd z) {
            complexd den = 1.0 - a * z;
            return (1.0 - a * a) / (den * den);
          }};
}

ConformalParam conformal_inverse_perturb(double c) {
  return {"inverse-perturb",
          [c](complexd z) { return z + c / z; },
          [c](complexd z) { return 1.0 - c / (z * z); }};
}

AnnulusHarmonicMap construct_h_epsilon(const ConformalParam& f, double R,
                                       double epsilon, int N, int M) {
  if (!(R > 1.0) || !(epsilon >= 0.0))
    throw Error(ErrorKind::InvalidInput, "construct_h_epsilon needs R > 1, epsilon >= 0");
  double rho = (1.0 + epsilon) * R;
  std::vector<complexd> inner(M), outer(M);
  for (int k = 0; k < M; ++k) {
    complexd e = std::polar(1.0, kTwoPi * k / M);
    inner[k] = f.f(e);
    outer[k] = f.f(R * e);
  }
  return solve_annulus_dirichlet(rho, inner, outer, N);
}

namespace {

double polar_margin(const AnnulusHarmonicMap& h) {
  double worst = std::numeric_limits<double>::infinity();
  const int nr = 64, na = 256;
  for (int i = 0; i < nr; ++i) {
    double r = 1.0 + (h.rho - 1.0) * i / (nr - 1);
    for (int j = 0; j < na; ++j) {
      complexd z = std::polar(r, kTwoPi * j / na);
      worst = std::min(worst, std::abs(h.dz(z)) - std::abs(h.dzb(z)));
    }
  }
  return worst;
}

}  // namespace

EpsilonSearchResult max_epsilon(const ConformalParam& f, double R, double tol) {
  EpsilonSearchResult res;
  auto probe = [&](double eps) {
    AnnulusHarmonicMap h = construct_h_epsilon(f, R, eps);
    double m = polar_margin(h);
    res.table.push_back({eps, m, m > 0.0});
    return m > 0.0;
  };
  if (!probe(1e-6))
    throw Error(ErrorKind::ConstructionFailed,
                "Jacobian margin nonpositive at the smallest probed epsilon");
  double lo = 1e-6;
  double hi = -1.0;
  for (int k = 1; k <= 20; ++k) {
    double eps = 0.05 * k;
    if (probe(eps)) {
      lo = eps;
    } else if (hi < 0.0) {
      hi = eps;
    }
  }
  if (hi < 0.0) {
    res.epsilon_1 = 1.0;  // whole probed range passes
    return res;
  }
  if (hi < lo) {
    // A later pass after an earlier fail: keep the widest passing prefix.
    hi = 2.0;
    for (const auto& row : res.table)
      if (!row.pass && row.epsilon > lo) hi = std::min(hi, row.epsilon);
  }
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (probe(mid))
      lo = mid;
    else
      hi = mid;
  }
  res.epsilon_1 = lo;
  return res;
}

std::optional<RadialNitscheMap> radial_nitsche_map(double r, double R, double rstar,
                                                   double Rstar) {
  if (!(r > 0 && R > r && rstar > 0 && Rstar > rstar))
    throw Error(ErrorKind::InvalidInput, "radial map needs 0 < r < R and 0 < r* < R*");
  if (!nitsche_existence(R / r, Rstar / rstar)) return std::nullopt;
  RadialNitscheMap m;
  m.r = r;
  m.R = R;
  m.rstar = rstar;
  m.Rstar = Rstar;
  m.a = (R * Rstar - r * rstar) / (R * R - r * r);
  m.b = r * rstar - m.a * r * r;
  return m;
}

complexd PowerShearMap::eval(complexd z) const {
  if (z.imag() == 0.0) z = complexd(z.real(), +0.0);
  complexd w = std::pow(z, alpha);
  return complexd(w.real(), z.imag());
}

complexd PowerShearMap::dz(complexd z) const {
  if (z.imag() == 0.0) z = complexd(z.real(), +0.0);
  return 0.5 * (alpha * std::pow(z, alpha - 1.0) + 1.0);
}

complexd PowerShearMap::dzb(complexd z) const {
  if (z.imag() == 0.0) z = complexd(z.real(), +0.0);
  return 0.5 * (std::conj(alpha * std::pow(z, alpha - 1.0)) - 1.0);
}

PowerShearResult power_shear_map(double a, double b, double alpha) {
  if (!(a > 0 && b > a && b < 1))
    throw Error(ErrorKind::InvalidInput, "power shear needs 0 < a < b < 1");
  if (!(alpha > 1 && alpha < 1.5))
    throw Error(ErrorKind::InvalidInput, "power shear needs alpha in (1, 3/2)");
  PowerShearResult res;
  res.map.alpha = alpha;
  res.source_ring =
      CanonicalRing::double_teich_unit(std::pow(a, 1.0 / alpha), std::pow(b, 1.0 / alpha));
  res.target_ring = CanonicalRing::double_teich_unit(a, b);
  return res;
}

bool secant_slope_inequality(double a, double b, double alpha) {
  if (!(a > 0 && b > a && b < 1) || !(alpha > 1 && alpha < 1.5))
    throw Error(ErrorKind::InvalidInput, "secant slopes need 0 < a < b < 1, alpha in (1, 3/2)");
  double q = b / a;
  double left = (1.0 - std::pow(b, 1.0 / alpha)) / (1.0 - b);
  double right = (std::pow(q, 1.0 / alpha) - 1.0) / (q - 1.0);
  return left > right;
}

HarmonicMapModel model_of(const AnnulusHarmonicMap& m) {
  return {"annulus-fourier",
          [m](complexd z) { return m.eval(z); },
          [m](complexd z) { return m.dz(z); },
          [m](complexd z) { return m.dzb(z); }};
}

HarmonicMapModel model_of(const RadialNitscheMap& m) {
  return {"radial",
          [m](complexd z) { return m.eval(z); },
          [m](complexd z) { return m.dz(z); },
          [m](complexd z) { return m.dzb(z); }};
}

HarmonicMapModel model_of(const PowerShearMap& m) {
  return {"power-shear",
          [m](complexd z) { return m.eval(z); },
          [m](complexd z) { return m.dz(z); },
          [m](complexd z) { return m.dzb(z); }};
}

// ---------------------------------------------------------------------------
// verification
// ---------------------------------------------------------------------------

namespace {

struct TargetShape {
  enum class Kind { Circle, Segment, Rays, Polygon } kind = Kind::Polygon;
  complexd center{0.0, 0.0};
  double radius = 0.0;
  complexd sa{0.0, 0.0}, sb{0.0, 0.0};
  std::vector<Ray> rays;
  std::vector<complexd> poly;

  double distance(complexd p) const {
    switch (kind) {
      case Kind::Circle:
        return std::abs(std::abs(p - center) - radius);
      case Kind::Segment:
        return point_segment_distance(p, sa, sb);
      case Kind::Rays: {
        double best = std::numeric_limits<double>::infinity();
        for (const Ray& r : rays) best = std::min(best, point_ray_distance(p, r));
        return best;
      }
      case Kind::Polygon:
        return point_polygon_boundary_distance(p, poly);
    }
    return 0.0;
  }

  complexd anchor() const {
    switch (kind) {
      case Kind::Circle:
        return center;
      case Kind::Segment:
        return 0.5 * (sa + sb);
      case Kind::Polygon: {
        complexd c = 0.0;
        for (complexd v : poly) c += v;
        return c / static_cast<double>(poly.size());
      }
      case Kind::Rays:
        return rays.empty() ? complexd(0, 0) : rays[0].from;
    }
    return {0.0, 0.0};
  }
};

// Circumcircle fit: exact center from three spread vertices, accepted when all
// vertices agree with the radius to 1e-9 relative.
std::optional<std::pair<complexd, double>> circle_fit(const std::vector<complexd>& v) {
  if (v.size() < 8) return std::nullopt;
  complexd p0 = v[0], p1 = v[v.size() / 3], p2 = v[2 * v.size() / 3];
  double ax = p1.real() - p0.real(), ay = p1.imag() - p0.imag();
  double bx = p2.real() - p0.real(), by = p2.imag() - p0.imag();
  double det = 2.0 * (ax * by - ay * bx);
  if (std::abs(det) < 1e-14) return std::nullopt;
  double a2 = std::norm(p1) - std::norm(p0);
  double b2 = std::norm(p2) - std::norm(p0);
  complexd c((by * a2 - ay * b2) / det, (ax * b2 - bx * a2) / det);
  double radius = std::abs(v[0] - c);
  for (complexd q : v)
    if (std::abs(std::abs(q - c) - radius) > 1e-9 * std::max(radius, 1.0))
      return std::nullopt;
  return std::make_pair(c, radius);
}

TargetShape shape_of_bounded(const BoundaryComponent& comp) {
  TargetShape s;
  if (comp.is_segment()) {
    s.kind = TargetShape::Kind::Segment;
    s.sa = comp.vertices[0];
    s.sb = comp.vertices[1];
    return s;
  }
  if (auto fit = circle_fit(comp.vertices)) {
    s.kind = TargetShape::Kind::Circle;
    s.center = fit->first;
    s.radius = fit->second;
    return s;
  }
  s.kind = TargetShape::Kind::Polygon;
  s.poly = comp.vertices;
  return s;
}

TargetShape shape_of_unbounded(const UnboundedDescriptor& u) {
  TargetShape s;
  if (u.kind == UnboundedDescriptor::Kind::Rays) {
    s.kind = TargetShape::Kind::Rays;
    s.rays = u.rays;
    return s;
  }
  if (auto fit = circle_fit(u.polygon.vertices)) {
    s.kind = TargetShape::Kind::Circle;
    s.center = fit->first;
    s.radius = fit->second;
    return s;
  }
  s.kind = TargetShape::Kind::Polygon;
  s.poly = u.polygon.vertices;
  return s;
}

struct SampleSets {
  std::vector<complexd> jac;
  std::vector<char> layer;          // parallel to jac
  std::vector<complexd> resid;
  std::vector<double> resid_dist;   // distance to the source boundary
  std::vector<complexd> inner_boundary, outer_boundary;
  std::vector<complexd> winding;    // ordered closed separating curve
};

void annulus_samples(double r, double R, const VerifyOptions& o, SampleSets& s) {
  for (int i = 0; i < o.radial_samples; ++i) {
    double rad = r + (R - r) * i / (o.radial_samples - 1);
    bool layer = (i == 0 || i == o.radial_samples - 1);
    for (int j = 0; j < o.angular_samples; ++j) {
      complexd z = std::polar(rad, kTwoPi * j / o.angular_samples);
      s.jac.push_back(z);
      s.layer.push_back(layer ? 1 : 0);
      if (!layer && i % 2 == 0 && j % 2 == 0) {
        s.resid.push_back(z);
        s.resid_dist.push_back(std::min(rad - r, R - rad));
      }
    }
  }
  for (int j = 0; j < o.boundary_samples; ++j) {
    double t = kTwoPi * j / o.boundary_samples;
    s.inner_boundary.push_back(std::polar(r, t));
    s.outer_boundary.push_back(std::polar(R, t));
  }
  for (int j = 0; j < o.winding_samples; ++j)
    s.winding.push_back(std::polar(0.5 * (r + R), kTwoPi * j / o.winding_samples));
}

double slit_distance(const DoublyConnectedDomain& d, complexd p) {
  double best = point_segment_distance(p, d.bounded.vertices[0], d.bounded.vertices[1]);
  for (const Ray& ry : d.unbounded.rays) best = std::min(best, point_ray_distance(p, ry));
  return best;
}

void slit_samples(const DoublyConnectedDomain& d, const VerifyOptions& o, SampleSets& s) {
  complexd p = d.bounded.vertices[0], q = d.bounded.vertices[1];
  complexd mid = 0.5 * (p + q);
  complexd u = (q - p) / std::abs(q - p);
  complexd v = u * complexd(0.0, 1.0);
  double extent = std::abs(q - p) / 2;
  for (const Ray& ry : d.unbounded.rays)
    extent = std::max(extent, std::abs(ry.from - mid));
  double halfbox = 1.5 * extent;
  int cs = o.cartesian_samples;
  for (int j = 0; j < cs; ++j) {
    for (int i = 0; i < cs; ++i) {
      complexd z = mid + u * (-halfbox + 2 * halfbox * i / (cs - 1)) +
                   v * (-halfbox + 2 * halfbox * j / (cs - 1));
      double dist = slit_distance(d, z);
      if (dist < o.slit_clip) continue;
      s.jac.push_back(z);
      s.layer.push_back(dist < 8 * o.slit_clip ? 1 : 0);
      if (i % 2 == 0 && j % 2 == 0) {
        s.resid.push_back(z);
        s.resid_dist.push_back(dist);
      }
    }
  }
  int nb = o.boundary_samples;
  for (int k = 1; k < nb; ++k) s.inner_boundary.push_back(p + (q - p) * (k / double(nb)));
  int per_ray = nb / std::max<size_t>(1, d.unbounded.rays.size());
  for (const Ray& ry : d.unbounded.rays) {
    complexd dir = ry.dir / std::abs(ry.dir);
    for (int k = 0; k < per_ray; ++k)
      s.outer_boundary.push_back(ry.from + dir * (2.0 * extent * k / (per_ray - 1)));
  }
  SeparationDiameter sd = separation_and_diameter(d);
  double sx = std::abs(q - p) / 2 + sd.d / 2, sy = sd.d / 2;
  for (int j = 0; j < o.winding_samples; ++j) {
    double t = kTwoPi * j / o.winding_samples;
    s.winding.push_back(mid + u * (sx * std::cos(t)) + v * (sy * std::sin(t)));
  }
}

}  // namespace

MapVerificationReport verify_map(const HarmonicMapModel& map,
                                 const DoublyConnectedDomain& source,
                                 const DoublyConnectedDomain& target,
                                 const VerifyOptions& options) {
  SampleSets s;
  if (source.canonical_tag &&
      source.canonical_tag->kind == CanonicalRing::Kind::Annulus) {
    annulus_samples(source.canonical_tag->p0, source.canonical_tag->p1, options, s);
  } else if (source.unbounded.kind == UnboundedDescriptor::Kind::Rays &&
             source.bounded.is_segment()) {
    slit_samples(source, options, s);
  } else {
    throw Error(ErrorKind::UnsupportedGeometry,
                "verification sampling handles annuli and slit rings");
  }

  MapVerificationReport rep;
  long skipped = 0, planned = 0;

  // Jacobian margin.
  double m_all = std::numeric_limits<double>::infinity();
  double m_int = m_all, min_fp = m_all;
  bool worst_in_layer = false;
  for (size_t k = 0; k < s.jac.size(); ++k) {
    ++planned;
    complexd dz = map.dz(s.jac[k]), dzb = map.dzb(s.jac[k]);
    if (!finite(dz) || !finite(dzb)) {
      ++skipped;
      continue;
    }
    double m = std::abs(dz) - std::abs(dzb);
    min_fp = std::min(min_fp, std::abs(dz));
    if (m < m_all) {
      m_all = m;
      worst_in_layer = s.layer[k] != 0;
    }
    if (!s.layer[k]) m_int = std::min(m_int, m);
  }
  rep.jacobian_margin = m_all;
  rep.interior_margin = m_int;
  rep.min_abs_fprime = min_fp;

  // Harmonicity residual: five-point stencil, best arm of a shrinking ladder.
  double worst_resid = 0.0;
  for (size_t k = 0; k < s.resid.size(); ++k) {
    ++planned;
    double H = std::min(options.stencil_scale, s.resid_dist[k] / 4.0);
    if (!(H > 0)) {
      ++skipped;
      continue;
    }
    complexd z = s.resid[k];
    complexd center = map.eval(z);
    if (!finite(center)) {
      ++skipped;
      continue;
    }
    double best = std::numeric_limits<double>::infinity();
    double arm = H;
    for (int l = 0; l < 4; ++l, arm *= 0.5) {
      complexd sum = map.eval(z + arm) + map.eval(z - arm) +
                     map.eval(z + complexd(0, arm)) + map.eval(z - complexd(0, arm));
      if (!finite(sum)) continue;
      best = std::min(best, std::abs(sum - 4.0 * center));
    }
    if (!std::isfinite(best)) {
      ++skipped;
      continue;
    }
    worst_resid = std::max(worst_resid, best);
  }
  rep.harmonicity_residual = worst_resid;

  // Boundary correspondence.
  TargetShape hole = shape_of_bounded(target.bounded);
  TargetShape rim = shape_of_unbounded(target.unbounded);
  double worst_b = 0.0;
  for (complexd z : s.inner_boundary) {
    ++planned;
    complexd w = map.eval(z);
    if (!finite(w)) {
      ++skipped;
      continue;
    }
    worst_b = std::max(worst_b, hole.distance(w));
  }
  for (complexd z : s.outer_boundary) {
    ++planned;
    complexd w = map.eval(z);
    if (!finite(w)) {
      ++skipped;
      continue;
    }
    worst_b = std::max(worst_b, rim.distance(w));
  }
  rep.boundary_distance = worst_b;

  // Winding degree of the separating curve's image about the hole anchor.
  complexd anchor = hole.anchor();
  double total = 0.0;
  bool wind_ok = true;
  complexd prev = map.eval(s.winding.back()) - anchor;
  for (complexd z : s.winding) {
    ++planned;
    complexd w = map.eval(z) - anchor;
    if (!finite(w) || std::abs(w) == 0.0) {
      ++skipped;
      wind_ok = false;
      continue;
    }
    double delta = std::arg(w / prev);
    total += delta;
    prev = w;
  }
  double turns = total / kTwoPi;
  rep.winding_degree = static_cast<int>(std::lround(turns));
  if (std::abs(turns - rep.winding_degree) > 0.05) {
    wind_ok = false;
    rep.reasons.push_back("winding sum far from an integer");
  }

  rep.skipped_fraction = planned > 0 ? double(skipped) / double(planned) : 0.0;

  bool margin_ok = rep.jacobian_margin > 0.0;
  if (!margin_ok && rep.jacobian_margin > -1e-12 && worst_in_layer &&
      rep.interior_margin > 0.0) {
    rep.boundary_degenerate = true;
    margin_ok = true;
    rep.reasons.push_back("margin vanishes on the boundary layer only");
  }
  if (!margin_ok) rep.reasons.push_back("jacobian margin not positive");
  if (rep.winding_degree != 1) rep.reasons.push_back("winding degree is not 1");
  if (!(rep.boundary_distance < options.boundary_tol))
    rep.reasons.push_back("boundary image too far from target boundary");
  if (rep.skipped_fraction > 0.01) rep.reasons.push_back("more than 1% samples skipped");

  rep.pass = margin_ok && wind_ok && rep.winding_degree == 1 &&
             rep.boundary_distance < options.boundary_tol &&
             rep.skipped_fraction <= 0.01;
  return rep;
}

}  // namespace ringmod
