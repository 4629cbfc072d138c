#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "ringmod/canonical.hpp"

namespace ringmod {

using complexd = std::complex<double>;

// A polygon (>= 3 vertices, implicitly closed), a segment (2 vertices), or a
// single point (1 vertex, degenerate).
struct BoundaryComponent {
  std::vector<complexd> vertices;

  bool is_polygon() const { return vertices.size() >= 3; }
  bool is_segment() const { return vertices.size() == 2; }
  bool is_point() const { return vertices.size() == 1; }
};

struct Ray {
  complexd from;
  complexd dir;  // unit not required; normalized on use
};

// How the unbounded complement component is described.
struct UnboundedDescriptor {
  enum class Kind { PolygonExterior, Rays };
  Kind kind = Kind::Rays;
  BoundaryComponent polygon;  // PolygonExterior: domain lies inside this polygon
  std::vector<Ray> rays;      // Rays: one or two half-lines
};

struct DoublyConnectedDomain {
  BoundaryComponent bounded;
  UnboundedDescriptor unbounded;
  std::optional<CanonicalRing> canonical_tag;

  bool degenerate() const {
    return bounded.vertices.size() < 2 ||
           (bounded.vertices.size() == 2 && bounded.vertices[0] == bounded.vertices[1]);
  }
};

// z -> a z + b conj(z) + c.  Orientation sign = sign(|a|^2 - |b|^2).
struct AffineMap {
  complexd a{1.0, 0.0};
  complexd b{0.0, 0.0};
  complexd c{0.0, 0.0};

  complexd operator()(complexd z) const { return a * z + b * std::conj(z) + c; }
  double det() const { return std::norm(a) - std::norm(b); }
};

// Canonical factorization  map = (conformal) o squeeze o (conformal).
// theta is the PRESERVED axis direction in [0, pi): the squeeze keeps the
// e^{i theta} axis and scales the perpendicular one by alpha in (0, 1].
// Recomposition: z -> scale_post * S_theta_alpha(z') + translate, where
// z' = conj(z) if conjugate_first, and S is the axis squeeze in the theta frame.
struct ShearNormalForm {
  double theta = 0.0;
  double alpha = 1.0;
  complexd scale_post{1.0, 0.0};
  complexd translate{0.0, 0.0};
  bool conjugate_first = false;

  AffineMap recompose() const;
};

// Axis squeeze as an affine map: keeps direction e^{i theta}, multiplies the
// perpendicular direction by alpha.
AffineMap axis_squeeze(double theta, double alpha);

// The shear search family: COMPRESSES direction e^{i theta} by alpha and
// preserves the perpendicular.  (f_theta_alpha(z) with theta the squeezed
// direction; equals axis_squeeze(theta + pi/2, alpha).)
AffineMap shear_family(double theta, double alpha);

// Smallest distance between two parallel supporting lines (rotating calipers
// on the convex hull).  0 for segments and points.
double width(const BoundaryComponent& component);

// [min, max] of Re(e^{-i theta} v) over the component's vertices.
struct Interval {
  double lo = 0.0, hi = 0.0;
};
Interval projection_interval(const BoundaryComponent& component, double theta);

// Checks pi_theta(bounded) intersects pi_theta(unbounded) for every theta on a
// uniform grid plus all edge-normal directions; reports the first failure.
struct OverlapResult {
  bool holds = true;
  std::optional<double> witness_theta;
};
OverlapResult projections_overlap_all_theta(const DoublyConnectedDomain& domain,
                                            int theta_samples = 720);

// d  = min distance between the two complement components' boundaries,
// d0 = diameter of the bounded component.
struct SeparationDiameter {
  double d = 0.0;
  double d0 = 0.0;
};
SeparationDiameter separation_and_diameter(const DoublyConnectedDomain& domain);

ShearNormalForm decompose_affine(const AffineMap& map);

// Vertex-wise image; canonical tags survive only when the image provably stays
// in the same closed-form family (collinear slit families always; Annulus and
// Grotzsch only under conformal maps).
DoublyConnectedDomain apply_affine(const AffineMap& map,
                                   const DoublyConnectedDomain& domain);

// Geometric realization of a canonical ring (circles as 256-gons, slits as
// segments/rays), carrying the canonical tag.
DoublyConnectedDomain realize_canonical(const CanonicalRing& ring);

// True when the whole complement lies on one line within tol (the affine-
// invariance situation for slit rings).
bool complement_collinear(const DoublyConnectedDomain& domain, double tol = 1e-12);

// Convex hull (Andrew monotone chain), exposed for tests.
std::vector<complexd> convex_hull(std::vector<complexd> pts);

// Distance from a point to a segment [a, b].
double point_segment_distance(complexd p, complexd a, complexd b);

// Distance from a point to a ray.
double point_ray_distance(complexd p, const Ray& ray);

// Crossing-number membership test (boundary points may land either way).
bool point_in_polygon(complexd p, const std::vector<complexd>& poly);

// Distance from a point to a polygon's boundary.
double point_polygon_boundary_distance(complexd p, const std::vector<complexd>& poly);

}  // namespace ringmod
