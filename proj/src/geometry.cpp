#include "ringmod/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ringmod/errors.hpp"

namespace ringmod {

namespace {

constexpr double kPi = 3.14159265358979323846;

double cross(complexd o, complexd a, complexd b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) -
         (a.imag() - o.imag()) * (b.real() - o.real());
}

double wrap_angle_pi(double t) {
  t = std::fmod(t, kPi);
  if (t < 0) t += kPi;
  return t;
}

bool segments_intersect(complexd a, complexd b, complexd c, complexd d) {
  double d1 = cross(c, d, a), d2 = cross(c, d, b);
  double d3 = cross(a, b, c), d4 = cross(a, b, d);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  return false;
}

double segment_segment_distance(complexd a, complexd b, complexd c, complexd d) {
  if (segments_intersect(a, b, c, d)) return 0.0;
  return std::min(std::min(point_segment_distance(a, c, d),
                           point_segment_distance(b, c, d)),
                  std::min(point_segment_distance(c, a, b),
                           point_segment_distance(d, a, b)));
}

// Rays are clipped to long segments for distance work; callers pass a length
// that dwarfs every finite feature involved.
complexd ray_far_point(const Ray& ray, double length) {
  complexd d = ray.dir / std::abs(ray.dir);
  return ray.from + d * length;
}

std::vector<std::pair<complexd, complexd>> boundary_segments(
    const BoundaryComponent& comp) {
  std::vector<std::pair<complexd, complexd>> segs;
  const auto& v = comp.vertices;
  if (v.size() == 2) {
    segs.emplace_back(v[0], v[1]);
  } else if (v.size() >= 3) {
    for (size_t i = 0; i < v.size(); ++i)
      segs.emplace_back(v[i], v[(i + 1) % v.size()]);
  } else if (v.size() == 1) {
    segs.emplace_back(v[0], v[0]);
  }
  return segs;
}

}  // namespace

double point_segment_distance(complexd p, complexd a, complexd b) {
  complexd ab = b - a;
  double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  double t = ((p.real() - a.real()) * ab.real() + (p.imag() - a.imag()) * ab.imag()) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

double point_ray_distance(complexd p, const Ray& ray) {
  complexd d = ray.dir / std::abs(ray.dir);
  double t = (p.real() - ray.from.real()) * d.real() +
             (p.imag() - ray.from.imag()) * d.imag();
  if (t <= 0.0) return std::abs(p - ray.from);
  return std::abs(p - (ray.from + t * d));
}

bool point_in_polygon(complexd p, const std::vector<complexd>& poly) {
  bool inside = false;
  size_t n = poly.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    bool straddles = (poly[i].imag() > p.imag()) != (poly[j].imag() > p.imag());
    if (straddles) {
      double x = poly[j].real() + (poly[i].real() - poly[j].real()) *
                                      (p.imag() - poly[j].imag()) /
                                      (poly[i].imag() - poly[j].imag());
      if (p.real() < x) inside = !inside;
    }
  }
  return inside;
}

double point_polygon_boundary_distance(complexd p, const std::vector<complexd>& poly) {
  double best = std::numeric_limits<double>::infinity();
  size_t n = poly.size();
  for (size_t i = 0; i < n; ++i)
    best = std::min(best, point_segment_distance(p, poly[i], poly[(i + 1) % n]));
  return best;
}

std::vector<complexd> convex_hull(std::vector<complexd> pts) {
  std::sort(pts.begin(), pts.end(), [](complexd a, complexd b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  size_t n = pts.size();
  if (n < 3) return pts;
  std::vector<complexd> hull(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  size_t lower = k + 1;
  for (size_t i = n - 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

double width(const BoundaryComponent& component) {
  if (component.vertices.empty())
    throw Error(ErrorKind::InvalidInput, "width: empty vertex list");
  std::vector<complexd> hull = convex_hull(component.vertices);
  if (hull.size() < 3) return 0.0;
  size_t n = hull.size();
  double best = std::numeric_limits<double>::infinity();
  size_t j = 1;
  auto edge_dist = [&](size_t i, size_t jj) {
    complexd a = hull[i], b = hull[(i + 1) % n];
    return std::abs(cross(a, b, hull[jj])) / std::abs(b - a);
  };
  for (size_t i = 0; i < n; ++i) {
    while (edge_dist(i, (j + 1) % n) > edge_dist(i, j)) j = (j + 1) % n;
    best = std::min(best, edge_dist(i, j));
  }
  return best;
}

Interval projection_interval(const BoundaryComponent& component, double theta) {
  if (component.vertices.empty())
    throw Error(ErrorKind::InvalidInput, "projection_interval: empty vertex list");
  complexd e = std::polar(1.0, -theta);
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (complexd v : component.vertices) {
    double x = (e * v).real();
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  return {lo, hi};
}

OverlapResult projections_overlap_all_theta(const DoublyConnectedDomain& domain,
                                            int theta_samples) {
  if (domain.degenerate())
    throw Error(ErrorKind::DegenerateDomain, "overlap: degenerate domain");
  // The exterior of a Jordan polygon projects onto all of R in every
  // direction, so the overlap condition holds outright.
  if (domain.unbounded.kind == UnboundedDescriptor::Kind::PolygonExterior)
    return {true, std::nullopt};

  std::vector<double> thetas;
  for (int k = 0; k < theta_samples; ++k) thetas.push_back(kPi * k / theta_samples);
  const auto& bv = domain.bounded.vertices;
  for (size_t i = 0; i < bv.size(); ++i) {
    complexd e = bv[(i + 1) % bv.size()] - bv[i];
    if (std::abs(e) == 0.0) continue;
    thetas.push_back(wrap_angle_pi(std::arg(e) + kPi / 2));
  }
  for (const Ray& r : domain.unbounded.rays) {
    double a = std::arg(r.dir);
    thetas.push_back(wrap_angle_pi(a));
    thetas.push_back(wrap_angle_pi(a + kPi / 2));
  }
  std::sort(thetas.begin(), thetas.end());

  for (double theta : thetas) {
    Interval b = projection_interval(domain.bounded, theta);
    complexd e = std::polar(1.0, -theta);
    bool overlap = false;
    for (const Ray& r : domain.unbounded.rays) {
      double p0 = (e * r.from).real();
      double slope = (e * r.dir).real();
      // Projection of the ray: [p0, inf), (-inf, p0], or the point {p0}.
      double tol = 1e-12 * (1.0 + std::abs(p0));
      if (std::abs(slope) < tol) {
        if (p0 >= b.lo - tol && p0 <= b.hi + tol) overlap = true;
      } else if (slope > 0) {
        if (b.hi >= p0 - tol) overlap = true;
      } else {
        if (b.lo <= p0 + tol) overlap = true;
      }
      if (overlap) break;
    }
    if (!overlap) return {false, theta};
  }
  return {true, std::nullopt};
}

SeparationDiameter separation_and_diameter(const DoublyConnectedDomain& domain) {
  if (domain.degenerate())
    throw Error(ErrorKind::DegenerateDomain, "separation: degenerate domain");
  const auto& bv = domain.bounded.vertices;
  double d0 = 0.0;
  for (size_t i = 0; i < bv.size(); ++i)
    for (size_t j = i + 1; j < bv.size(); ++j)
      d0 = std::max(d0, std::abs(bv[i] - bv[j]));

  // Far enough that the omitted ray tail cannot come closer than the clip.
  double extent = 0.0;
  for (complexd v : bv) extent = std::max(extent, std::abs(v));
  for (const Ray& r : domain.unbounded.rays)
    extent = std::max(extent, std::abs(r.from));
  double far = 16.0 * (extent + 1.0);

  double d = std::numeric_limits<double>::infinity();
  auto bsegs = boundary_segments(domain.bounded);
  if (domain.unbounded.kind == UnboundedDescriptor::Kind::PolygonExterior) {
    auto usegs = boundary_segments(domain.unbounded.polygon);
    for (auto& s : bsegs)
      for (auto& u : usegs)
        d = std::min(d, segment_segment_distance(s.first, s.second, u.first, u.second));
  } else {
    for (auto& s : bsegs)
      for (const Ray& r : domain.unbounded.rays)
        d = std::min(d, segment_segment_distance(s.first, s.second, r.from,
                                                 ray_far_point(r, far)));
  }
  return {d, d0};
}

AffineMap axis_squeeze(double theta, double alpha) {
  AffineMap m;
  m.a = complexd((1.0 + alpha) / 2.0, 0.0);
  m.b = std::polar((1.0 - alpha) / 2.0, 2.0 * theta);
  return m;
}

AffineMap shear_family(double theta, double alpha) {
  return axis_squeeze(theta + kPi / 2, alpha);
}

AffineMap ShearNormalForm::recompose() const {
  AffineMap s = axis_squeeze(theta, alpha);
  AffineMap out;
  if (conjugate_first) {
    out.a = scale_post * s.b;
    out.b = scale_post * s.a;
  } else {
    out.a = scale_post * s.a;
    out.b = scale_post * s.b;
  }
  out.c = translate;
  return out;
}

ShearNormalForm decompose_affine(const AffineMap& map) {
  double scale = std::abs(map.a) + std::abs(map.b);
  if (scale == 0.0 || std::abs(map.det()) < 1e-14 * scale * scale)
    throw Error(ErrorKind::InvalidInput, "decompose_affine: singular map");

  ShearNormalForm nf;
  complexd a = map.a, b = map.b;
  if (map.det() < 0) {
    nf.conjugate_first = true;
    std::swap(a, b);  // f(conj z) swaps the roles of a and b
  }
  // 2x2 real matrix of z -> a z + b conj(z).
  double m00 = (a + b).real(), m10 = (a + b).imag();
  double m01 = -(a - b).imag(), m11 = (a - b).real();
  double E = (m00 + m11) / 2, F = (m00 - m11) / 2;
  double G = (m10 + m01) / 2, H = (m10 - m01) / 2;
  double Q = std::hypot(E, H), R = std::hypot(F, G);
  double s1 = Q + R, s2 = std::abs(Q - R);
  if (s1 - s2 < 1e-14 * s1) {
    // Conformal: any frame works; canonicalize to theta = 0.
    nf.theta = 0.0;
    nf.alpha = 1.0;
    nf.scale_post = a;
    nf.translate = map.c;
    return nf;
  }
  // Complex coefficients of the (possibly swapped) map: a = E + iH, b = F + iG.
  // Matching s * S_theta_alpha: arg a = arg s, arg b = arg s + 2 theta.
  double a1 = std::atan2(G, F), a2 = std::atan2(H, E);
  nf.theta = wrap_angle_pi((a1 - a2) / 2);
  nf.alpha = s2 / s1;
  nf.scale_post = std::polar(s1, a2);
  // wrap_angle_pi may have flipped the frame by pi; the squeeze is invariant.
  nf.translate = map.c;
  return nf;
}

namespace {

// Signed coordinate of p along the line through origin o with unit direction u.
double line_coord(complexd p, complexd o, complexd u) {
  complexd d = p - o;
  return d.real() * u.real() + d.imag() * u.imag();
}

std::optional<CanonicalRing> image_tag(const AffineMap& map,
                                       const DoublyConnectedDomain& src,
                                       const DoublyConnectedDomain& img) {
  if (!src.canonical_tag) return std::nullopt;
  const CanonicalRing& tag = *src.canonical_tag;
  bool conformal = std::abs(map.b) < 1e-15 * (std::abs(map.a) + 1e-300);
  using K = CanonicalRing::Kind;
  if (conformal) return tag;  // modulus untouched, parameters still valid
  switch (tag.kind) {
    case K::Annulus:
    case K::Grotzsch:
      return std::nullopt;
    case K::Teichmuller: {
      complexd p = img.bounded.vertices[0], q = img.bounded.vertices[1];
      complexd rs = img.unbounded.rays[0].from;
      // Orient the line so the segment is [-1, 0] and the ray start positive.
      if (std::abs(rs - q) < std::abs(rs - p)) std::swap(p, q);
      complexd u = (q - p) / std::abs(q - p);
      double s = line_coord(rs, q, u) / std::abs(q - p);
      return CanonicalRing::teichmuller(s);
    }
    case K::DoubleTeich: {
      complexd p = img.bounded.vertices[0], q = img.bounded.vertices[1];
      complexd u = (q - p) / std::abs(q - p);
      complexd mid = (p + q) * 0.5;
      double half = std::abs(q - p) / 2;
      double l0 = line_coord(img.unbounded.rays[0].from, mid, u) / half;
      double l1 = line_coord(img.unbounded.rays[1].from, mid, u) / half;
      if (l0 > l1) std::swap(l0, l1);
      return CanonicalRing::double_teich(-l0, l1);
    }
    case K::DoubleTeichUnit: {
      complexd p = img.bounded.vertices[0], q = img.bounded.vertices[1];
      complexd r0 = img.unbounded.rays[0].from, r1 = img.unbounded.rays[1].from;
      complexd u = (r1 - r0) / std::abs(r1 - r0);
      double span = std::abs(r1 - r0);
      double la = line_coord(p, r0, u) / span, lb = line_coord(q, r0, u) / span;
      if (la > lb) std::swap(la, lb);
      if (la < 0 || lb > 1) {  // oriented the other way round
        u = -u;
        la = line_coord(p, r1, u) / span;
        lb = line_coord(q, r1, u) / span;
        if (la > lb) std::swap(la, lb);
      }
      return CanonicalRing::double_teich_unit(la, lb);
    }
  }
  return std::nullopt;
}

}  // namespace

DoublyConnectedDomain apply_affine(const AffineMap& map,
                                   const DoublyConnectedDomain& domain) {
  DoublyConnectedDomain out;
  out.bounded.vertices.reserve(domain.bounded.vertices.size());
  for (complexd v : domain.bounded.vertices) out.bounded.vertices.push_back(map(v));
  out.unbounded.kind = domain.unbounded.kind;
  for (complexd v : domain.unbounded.polygon.vertices)
    out.unbounded.polygon.vertices.push_back(map(v));
  for (const Ray& r : domain.unbounded.rays) {
    Ray ir;
    ir.from = map(r.from);
    ir.dir = map.a * r.dir + map.b * std::conj(r.dir);
    out.unbounded.rays.push_back(ir);
  }
  out.canonical_tag = image_tag(map, domain, out);
  return out;
}

DoublyConnectedDomain realize_canonical(const CanonicalRing& ring) {
  auto circle = [](complexd center, double radius, int n) {
    BoundaryComponent c;
    c.vertices.reserve(n);
    for (int k = 0; k < n; ++k)
      c.vertices.push_back(center + std::polar(radius, 2.0 * kPi * k / n));
    return c;
  };
  DoublyConnectedDomain d;
  d.canonical_tag = ring;
  using K = CanonicalRing::Kind;
  switch (ring.kind) {
    case K::Annulus: {
      if (!(ring.p0 > 0 && ring.p1 > ring.p0))
        throw Error(ErrorKind::InvalidInput, "annulus needs 0 < r < R");
      d.bounded = circle(0.0, ring.p0, 256);
      d.unbounded.kind = UnboundedDescriptor::Kind::PolygonExterior;
      d.unbounded.polygon = circle(0.0, ring.p1, 256);
      break;
    }
    case K::Grotzsch: {
      if (!(ring.p0 > 1))
        throw Error(ErrorKind::InvalidInput, "grotzsch needs s > 1");
      d.bounded = circle(0.0, 1.0, 256);
      d.unbounded.kind = UnboundedDescriptor::Kind::Rays;
      d.unbounded.rays = {{complexd(ring.p0, 0.0), complexd(1.0, 0.0)}};
      break;
    }
    case K::Teichmuller: {
      if (!(ring.p0 > 0))
        throw Error(ErrorKind::InvalidInput, "teichmuller needs s > 0");
      d.bounded.vertices = {complexd(-1.0, 0.0), complexd(0.0, 0.0)};
      d.unbounded.kind = UnboundedDescriptor::Kind::Rays;
      d.unbounded.rays = {{complexd(ring.p0, 0.0), complexd(1.0, 0.0)}};
      break;
    }
    case K::DoubleTeich: {
      if (!(ring.p0 > 1 && ring.p1 > 1))
        throw Error(ErrorKind::InvalidInput, "double teichmuller needs s, t > 1");
      d.bounded.vertices = {complexd(-1.0, 0.0), complexd(1.0, 0.0)};
      d.unbounded.kind = UnboundedDescriptor::Kind::Rays;
      d.unbounded.rays = {{complexd(-ring.p0, 0.0), complexd(-1.0, 0.0)},
                          {complexd(ring.p1, 0.0), complexd(1.0, 0.0)}};
      break;
    }
    case K::DoubleTeichUnit: {
      if (!(ring.p0 > 0 && ring.p1 > ring.p0 && ring.p1 < 1))
        throw Error(ErrorKind::InvalidInput, "unit form needs 0 < a < b < 1");
      d.bounded.vertices = {complexd(ring.p0, 0.0), complexd(ring.p1, 0.0)};
      d.unbounded.kind = UnboundedDescriptor::Kind::Rays;
      d.unbounded.rays = {{complexd(0.0, 0.0), complexd(-1.0, 0.0)},
                          {complexd(1.0, 0.0), complexd(1.0, 0.0)}};
      break;
    }
  }
  return d;
}

bool complement_collinear(const DoublyConnectedDomain& domain, double tol) {
  if (domain.unbounded.kind != UnboundedDescriptor::Kind::Rays) return false;
  if (domain.bounded.vertices.size() > 2) return false;
  // Gather a line from the first ray, then check every feature against it.
  if (domain.unbounded.rays.empty()) return false;
  complexd o = domain.unbounded.rays[0].from;
  complexd u = domain.unbounded.rays[0].dir / std::abs(domain.unbounded.rays[0].dir);
  double scale = 1.0;
  for (complexd v : domain.bounded.vertices) scale = std::max(scale, std::abs(v - o));
  auto on_line = [&](complexd p) {
    return std::abs(cross(o, o + u, p)) <= tol * scale;
  };
  for (complexd v : domain.bounded.vertices)
    if (!on_line(v)) return false;
  for (const Ray& r : domain.unbounded.rays) {
    if (!on_line(r.from) || !on_line(r.from + r.dir / std::abs(r.dir))) return false;
  }
  return true;
}

}  // namespace ringmod
