#include "ringmod/condenser.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>

#include "ringmod/errors.hpp"

namespace ringmod {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct PlateGeom {
  std::vector<complexd> fill_poly;  // filled region when non-empty
  bool outside_of_poly = false;     // plate is the exterior of fill_poly
  std::vector<std::pair<complexd, complexd>> segments;
  std::vector<Ray> rays;
  bool unbounded = false;

  bool covers(complexd p, double h) const {
    if (!fill_poly.empty()) {
      bool in = point_in_polygon(p, fill_poly);
      if (outside_of_poly ? !in : in) return true;
      if (point_polygon_boundary_distance(p, fill_poly) <= h) return true;
    }
    for (const auto& s : segments)
      if (point_segment_distance(p, s.first, s.second) <= h) return true;
    for (const Ray& r : rays)
      if (point_ray_distance(p, r) <= h) return true;
    return false;
  }
};

struct RasterPlan {
  PlateGeom plate0;  // bounded complement component (potential 0)
  PlateGeom plate1;  // unbounded complement component (potential 1)
  bool clipped = false;      // true when a clip circle truncates the picture
  complexd center{0.0, 0.0};
  double extent = 0.0;       // finite-feature radius about center
};

void fill_bounded_plate(const BoundaryComponent& comp, PlateGeom& plate) {
  if (comp.is_polygon()) {
    plate.fill_poly = comp.vertices;
  } else {
    plate.segments.push_back({comp.vertices[0], comp.vertices[1]});
  }
}

RasterPlan plan_raster(const DoublyConnectedDomain& domain) {
  RasterPlan plan;
  if (domain.unbounded.kind == UnboundedDescriptor::Kind::PolygonExterior) {
    fill_bounded_plate(domain.bounded, plan.plate0);
    plan.plate1.fill_poly = domain.unbounded.polygon.vertices;
    plan.plate1.outside_of_poly = true;
    plan.plate1.unbounded = true;
    plan.clipped = false;
    return plan;
  }
  if (domain.unbounded.rays.empty())
    throw Error(ErrorKind::InvalidInput, "ray descriptor without rays");
  if (complement_collinear(domain)) {
    // Invert about the midpoint of the bounded segment: the ray pair (with
    // its point at infinity) becomes a bounded plate through the origin and
    // the segment becomes the unbounded ray pair.
    complexd p = domain.bounded.vertices[0], q = domain.bounded.vertices[1];
    complexd m = 0.5 * (p + q);
    auto inv = [m](complexd z) { return 1.0 / (z - m); };
    complexd wp = inv(p), wq = inv(q);
    plan.plate0.rays.push_back({wp, wp});
    plan.plate0.rays.push_back({wq, wq});
    plan.plate0.unbounded = true;
    for (const Ray& r : domain.unbounded.rays)
      plan.plate1.segments.push_back({complexd(0.0, 0.0), inv(r.from)});
    plan.clipped = true;
    plan.center = complexd(0.0, 0.0);
    double e = std::max(std::abs(wp), std::abs(wq));
    for (const auto& s : plan.plate1.segments) e = std::max(e, std::abs(s.second));
    plan.extent = e;
    return plan;
  }
  fill_bounded_plate(domain.bounded, plan.plate0);
  plan.plate1.rays = domain.unbounded.rays;
  plan.plate1.unbounded = true;
  complexd c = 0.0;
  for (complexd v : domain.bounded.vertices) c += v;
  c /= static_cast<double>(domain.bounded.vertices.size());
  plan.center = c;
  double e = 0.0;
  for (complexd v : domain.bounded.vertices) e = std::max(e, std::abs(v - c));
  for (const Ray& r : domain.unbounded.rays) e = std::max(e, std::abs(r.from - c));
  plan.clipped = true;
  plan.extent = e;
  return plan;
}

Grid rasterize(const DoublyConnectedDomain& domain, const RasterPlan& plan,
               int cells, double clip_factor) {
  if (cells < 16) throw Error(ErrorKind::InvalidInput, "grid resolution too small");
  double h, half;
  complexd center;
  double clip_r = std::numeric_limits<double>::infinity();
  if (plan.clipped) {
    if (!(plan.extent > 0))
      throw Error(ErrorKind::DegenerateDomain, "domain has no spatial extent");
    clip_r = clip_factor * plan.extent;
    h = 2.0 * clip_r / (cells - 4);
    half = clip_r + 2.0 * h;
    center = plan.center;
  } else {
    const auto& pv = domain.unbounded.polygon.vertices;
    double xlo = pv[0].real(), xhi = xlo, ylo = pv[0].imag(), yhi = ylo;
    for (complexd v : pv) {
      xlo = std::min(xlo, v.real());
      xhi = std::max(xhi, v.real());
      ylo = std::min(ylo, v.imag());
      yhi = std::max(yhi, v.imag());
    }
    double side = std::max(xhi - xlo, yhi - ylo);
    if (!(side > 0))
      throw Error(ErrorKind::DegenerateDomain, "outer polygon has no extent");
    h = side / (cells - 4);
    half = side / 2 + 2.0 * h;
    center = complexd((xlo + xhi) / 2, (ylo + yhi) / 2);
  }

  Grid g;
  g.init(cells + 1, h, center.real() - half, center.imag() - half);
  std::uint8_t far_label = plan.plate0.unbounded ? kPlate0 : kPlate1;
  int n = g.n;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      complexd p(g.node_x(i), g.node_y(j));
      int k = g.idx(i, j);
      if (plan.clipped && std::abs(p - center) >= clip_r) {
        g.label[k] = far_label;
        continue;
      }
      bool c0 = plan.plate0.covers(p, h);
      bool c1 = plan.plate1.covers(p, h);
      if (c0 && c1)
        throw Error(ErrorKind::ResolutionTooCoarse,
                    "complement components overlap after rasterization");
      g.label[k] = c0 ? kPlate0 : (c1 ? kPlate1 : kInterior);
    }
  }

  // Plates must both appear, must not touch, and must be linked by interior.
  bool has0 = false, has1 = false;
  for (std::uint8_t l : g.label) {
    has0 |= (l == kPlate0);
    has1 |= (l == kPlate1);
  }
  if (!has0 || !has1)
    throw Error(ErrorKind::ResolutionTooCoarse, "a plate vanished after rasterization");
  auto lab = [&](int i, int j) { return g.label[g.idx(i, j)]; };
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (i + 1 < n) {
        int a = lab(i, j), b = lab(i + 1, j);
        if ((a == kPlate0 && b == kPlate1) || (a == kPlate1 && b == kPlate0))
          throw Error(ErrorKind::ResolutionTooCoarse, "complement components touch on the grid");
      }
      if (j + 1 < n) {
        int a = lab(i, j), b = lab(i, j + 1);
        if ((a == kPlate0 && b == kPlate1) || (a == kPlate1 && b == kPlate0))
          throw Error(ErrorKind::ResolutionTooCoarse, "complement components touch on the grid");
      }
    }
  }
  std::vector<char> seen(g.label.size(), 0);
  std::deque<int> queue;
  for (int j = 1; j < n - 1; ++j)
    for (int i = 1; i < n - 1; ++i) {
      int k = g.idx(i, j);
      if (g.label[k] != kInterior) continue;
      if (lab(i - 1, j) == kPlate0 || lab(i + 1, j) == kPlate0 ||
          lab(i, j - 1) == kPlate0 || lab(i, j + 1) == kPlate0) {
        seen[k] = 1;
        queue.push_back(k);
      }
    }
  bool linked = false;
  while (!queue.empty() && !linked) {
    int k = queue.front();
    queue.pop_front();
    int i = k % n, j = k / n;
    const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
    for (int t = 0; t < 4; ++t) {
      int ii = i + di[t], jj = j + dj[t];
      if (ii < 0 || jj < 0 || ii >= n || jj >= n) continue;
      int kk = g.idx(ii, jj);
      if (g.label[kk] == kPlate1) {
        linked = true;
        break;
      }
      if (g.label[kk] == kInterior && !seen[kk]) {
        seen[kk] = 1;
        queue.push_back(kk);
      }
    }
  }
  if (!linked)
    throw Error(ErrorKind::ResolutionTooCoarse,
                "no conducting path between the plates");
  return g;
}

double solve_level(const DoublyConnectedDomain& domain, const RasterPlan& plan,
                   int cells, double clip_factor, const Grid* coarse, Grid* out) {
  Grid g = rasterize(domain, plan, cells, clip_factor);
  if (coarse) prolong_bilinear(*coarse, g);
  sor_solve(g);
  double energy = dirichlet_energy(g);
  if (!(energy > 0))
    throw Error(ErrorKind::SolverFailure, "vanishing condenser energy");
  double value = 2.0 * kPi / energy;
  if (out) *out = std::move(g);
  return value;
}

}  // namespace

Grid condenser_grid(const DoublyConnectedDomain& domain, int cells, double clip_factor) {
  if (domain.degenerate())
    throw Error(ErrorKind::DegenerateDomain, "degenerate domain has no grid");
  RasterPlan plan = plan_raster(domain);
  Grid g = rasterize(domain, plan, cells, clip_factor);
  sor_solve(g);
  return g;
}

CondenserResult modulus_numeric_detailed(const DoublyConnectedDomain& domain,
                                         const CondenserOptions& opts) {
  CondenserResult res;
  if (domain.degenerate()) {
    res.estimate.value = std::numeric_limits<double>::infinity();
    res.estimate.error = 0.0;
    res.estimate.method = "degenerate";
    return res;
  }
  if (opts.levels < 2 || opts.base_resolution < (16 << (opts.levels - 1)))
    throw Error(ErrorKind::InvalidInput, "condenser needs >= 2 levels and a large enough base grid");

  RasterPlan plan = plan_raster(domain);
  std::vector<int> cells_per_level;
  for (int l = opts.levels - 1; l >= 0; --l)
    cells_per_level.push_back(opts.base_resolution >> l);

  std::vector<double> v;
  Grid prev;
  for (size_t l = 0; l < cells_per_level.size(); ++l) {
    Grid g;
    double vl = solve_level(domain, plan, cells_per_level[l], opts.clip_factor,
                            l ? &prev : nullptr, &g);
    v.push_back(vl);
    res.per_level.push_back({cells_per_level[l], g.h, vl});
    prev = std::move(g);
  }

  // The snapped-boundary scheme is first order in h, so each adjacent pair of
  // levels yields the extrapolant 2*v_{k+1} - v_k; the spread of the last two
  // extrapolants is the discretization error bar.
  std::vector<double> extrap;
  for (size_t k = 0; k + 1 < v.size(); ++k)
    extrap.push_back(2.0 * v[k + 1] - v[k]);
  // The extrapolant spread estimates the same-order term that remains in the
  // final value, so it needs a coverage factor to serve as a bound.
  double value = extrap.back();
  double err = extrap.size() >= 2
                   ? 2.0 * std::abs(extrap.back() - extrap[extrap.size() - 2])
                   : std::abs(v[1] - v[0]);
  err += 1e-9;

  if (plan.clipped) {
    // Truncation control: redo one level with the clip circle twice as far
    // out. The coarsest grid that can still hold the doubled box is enough.
    for (size_t l = 0; l < cells_per_level.size(); ++l) {
      try {
        double v_wide = solve_level(domain, plan, cells_per_level[l],
                                    opts.clip_factor * 2.0, nullptr, nullptr);
        err += std::abs(v_wide - v[l]);
        break;
      } catch (const Error&) {
        if (l + 1 == cells_per_level.size()) throw;
      }
    }
  }

  std::ostringstream m;
  m << "condenser(" << opts.base_resolution << "," << opts.levels << ")";
  res.estimate.value = value;
  res.estimate.error = err;
  res.estimate.method = m.str();
  return res;
}

ModulusEstimate modulus_numeric(const DoublyConnectedDomain& domain,
                                const CondenserOptions& opts) {
  return modulus_numeric_detailed(domain, opts).estimate;
}

ExtremalBoundReport verify_extremal_bound(const DoublyConnectedDomain& domain,
                                          const CondenserOptions& opts) {
  ExtremalBoundReport rep;
  SeparationDiameter sd = separation_and_diameter(domain);
  if (!(sd.d0 > 0))
    throw Error(ErrorKind::DegenerateDomain, "bounded component has zero diameter");
  ModulusEstimate lhs;
  if (domain.canonical_tag) {
    lhs = modulus_canonical(*domain.canonical_tag);
  } else {
    lhs = modulus_numeric(domain, opts);
  }
  rep.lhs = lhs.value;
  rep.lhs_error = lhs.error;
  rep.rhs = modulus_canonical(CanonicalRing::teichmuller(sd.d / sd.d0)).value;
  rep.holds = rep.lhs <= rep.rhs + rep.lhs_error + 1e-10;
  return rep;
}

}  // namespace ringmod
