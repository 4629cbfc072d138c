#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "ringmod/affine_opt.hpp"
#include "ringmod/canonical.hpp"
#include "ringmod/condenser.hpp"
#include "ringmod/errors.hpp"
#include "ringmod/geometry.hpp"
#include "ringmod/harmonic.hpp"
#include "ringmod/sc_construction.hpp"

using namespace ringmod;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

int g_total = 0;
int g_failed = 0;

void check(bool ok, const char* id, const char* fmt, ...) {
  ++g_total;
  if (!ok) ++g_failed;
  char buf[768];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, ap);
  va_end(ap);
  std::printf("[%s] %s: %s\n", ok ? "PASS" : "FAIL", id, buf);
  std::fflush(stdout);
}

void note(const char* fmt, ...) {
  char buf[768];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, ap);
  va_end(ap);
  std::printf("       %s\n", buf);
  std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double urand(std::mt19937& gen) { return gen() / 4294967296.0; }

// ---- 1: grid solver vs closed forms on the canonical families --------------

void criterion1() {
  struct Case {
    const char* name;
    CanonicalRing ring;
    double exact;
  };
  const Case cases[] = {
      {"annulus(1,2)", CanonicalRing::annulus(1.0, 2.0), std::log(2.0)},
      {"annulus(1,e)", CanonicalRing::annulus(1.0, std::exp(1.0)), 1.0},
      {"teichmuller(1)", CanonicalRing::teichmuller(1.0), kPi},
      {"double_teichmuller(3,3)", CanonicalRing::double_teich(3.0, 3.0),
       modulus_canonical(CanonicalRing::double_teich(3.0, 3.0)).value},
  };
  const auto t0 = std::chrono::steady_clock::now();
  for (const Case& c : cases) {
    const ModulusEstimate est = modulus_numeric(realize_canonical(c.ring));
    const double dv = std::abs(est.value - c.exact);
    char id[96];
    std::snprintf(id, sizeof id, "C1.within-error[%s]", c.name);
    check(dv <= est.error, id, "value=%.10f exact=%.10f |dv|=%.3e err=%.3e", est.value,
          c.exact, dv, est.error);
    std::snprintf(id, sizeof id, "C1.within-5pct[%s]", c.name);
    check(dv <= 0.05 * c.exact, id, "|dv|/exact=%.3f%% (cap 5%%)", 100.0 * dv / c.exact);
  }
  const double wall = seconds_since(t0);
  check(wall < 120.0, "C1.runtime", "%.1f s for all four solves (cap 120 s)", wall);
}

// ---- 2: slit-ring reduction identity under the grid solver -----------------

void criterion2() {
  std::mt19937 gen(7202);
  for (int k = 0; k < 20; ++k) {
    const double s = 1.0 + 9.0 * urand(gen);
    const double t = 1.0 + 9.0 * urand(gen);
    const CanonicalRing ring = CanonicalRing::double_teich(s, t);
    const double exact = modulus_canonical(ring).value;
    const ModulusEstimate est = modulus_numeric(realize_canonical(ring));
    const double dv = std::abs(est.value - exact);
    char id[48];
    std::snprintf(id, sizeof id, "C2.draw-%02d", k);
    check(dv <= 2.0 * est.error, id,
          "s=%.4f t=%.4f value=%.8f exact=%.8f |dv|=%.3e 2*err=%.3e", s, t, est.value,
          exact, dv, 2.0 * est.error);
  }
}

// ---- 3: radial-map existence boundary on the ratio grid --------------------

void criterion3() {
  int mismatch = 0, false_exist = 0, vfail = 0, exist_count = 0;
  double min_margin = kInf;
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 20; ++j) {
      const double x = 1.0 + 4.0 * (i + 1) / 20.0;
      const double y = 1.0 + 4.0 * (j + 1) / 20.0;
      const double thr = 0.5 * (x + 1.0 / x);
      const auto m = radial_nitsche_map(1.0, x, 1.0, y);
      const bool should = y >= thr - 1e-12;
      if (static_cast<bool>(m) != should) {
        ++mismatch;
        if (m && !should) ++false_exist;
        note("cell (x=%.2f, y=%.2f): map %s but threshold %.6f says %s", x, y,
             m ? "exists" : "missing", thr, should ? "exists" : "missing");
        continue;
      }
      if (!m) continue;
      ++exist_count;
      const MapVerificationReport rep =
          verify_map(model_of(*m), realize_canonical(CanonicalRing::annulus(1.0, x)),
                     realize_canonical(CanonicalRing::annulus(1.0, y)));
      min_margin = std::min(min_margin, rep.jacobian_margin);
      const bool strict = y > thr + 1e-9;
      if (!(rep.pass && rep.winding_degree == 1 && (!strict || rep.jacobian_margin > 0))) {
        ++vfail;
        note("cell (x=%.2f, y=%.2f): pass=%d degree=%d margin=%.3e", x, y, rep.pass,
             rep.winding_degree, rep.jacobian_margin);
      }
    }
  }
  check(mismatch == 0, "C3.existence-set", "%d/400 cells disagree with the threshold rule",
        mismatch);
  check(false_exist == 0, "C3.no-false-existence",
        "%d maps produced below the threshold", false_exist);
  check(vfail == 0, "C3.existing-maps-verified",
        "%d maps verified, %d failures, min jacobian margin %.3e", exist_count, vfail,
        min_margin);
  for (double x : {1.5, 2.0, 3.0}) {
    const double y = 0.5 * (x + 1.0 / x);
    const auto m = radial_nitsche_map(1.0, x, 1.0, y);
    char id[64];
    std::snprintf(id, sizeof id, "C3.equality-case[x=%.1f]", x);
    if (!m) {
      check(false, id, "map missing at the exact threshold y=%.6f", y);
      continue;
    }
    const MapVerificationReport rep =
        verify_map(model_of(*m), realize_canonical(CanonicalRing::annulus(1.0, x)),
                   realize_canonical(CanonicalRing::annulus(1.0, y)));
    check(rep.pass && rep.boundary_degenerate, id,
          "pass=%d boundary_degenerate=%d margin=%.2e interior_margin=%.3e", rep.pass,
          rep.boundary_degenerate, rep.jacobian_margin, rep.interior_margin);
  }
}

// ---- 4: inflated-annulus construction pipeline ------------------------------

DoublyConnectedDomain conformal_image_target(const ConformalParam& f, double R) {
  DoublyConnectedDomain t;
  const int n = 256;
  for (int k = 0; k < n; ++k) {
    const double th = 2.0 * kPi * k / n;
    t.bounded.vertices.push_back(f.f(std::polar(1.0, th)));
    t.unbounded.polygon.vertices.push_back(f.f(std::polar(R, th)));
  }
  t.unbounded.kind = UnboundedDescriptor::Kind::PolygonExterior;
  return t;
}

void criterion4() {
  const auto t0 = std::chrono::steady_clock::now();
  struct Fam {
    const char* name;
    ConformalParam f;
  };
  const Fam fams[] = {{"identity", conformal_identity()},
                      {"mobius(0.3)", conformal_mobius(0.3)}};
  for (const Fam& fam : fams) {
    const EpsilonSearchResult search = max_epsilon(fam.f, 2.0);
    char id[64];
    std::snprintf(id, sizeof id, "C4.epsilon1-positive[%s]", fam.name);
    check(search.epsilon_1 > 0, id, "epsilon_1=%.6f over %zu probes", search.epsilon_1,
          search.table.size());

    const double eps = 0.5 * search.epsilon_1;
    const AnnulusHarmonicMap h = construct_h_epsilon(fam.f, 2.0, eps);
    const MapVerificationReport rep =
        verify_map(model_of(h), realize_canonical(CanonicalRing::annulus(1.0, h.rho)),
                   conformal_image_target(fam.f, 2.0));
    std::snprintf(id, sizeof id, "C4.verified-at-half-eps1[%s]", fam.name);
    check(rep.pass && rep.jacobian_margin > 0 && rep.winding_degree == 1 &&
              rep.boundary_distance < 1e-4,
          id, "eps=%.4f pass=%d margin=%.3e degree=%d bdist=%.2e", eps, rep.pass,
          rep.jacobian_margin, rep.winding_degree, rep.boundary_distance);

    double sup[4], dzb[4];
    const double eps_grid[4] = {0.2, 0.1, 0.05, 0.025};
    for (int e = 0; e < 4; ++e) {
      const AnnulusHarmonicMap he = construct_h_epsilon(fam.f, 2.0, eps_grid[e]);
      sup[e] = dzb[e] = 0.0;
      for (double r = 1.0; r <= (1.0 + eps_grid[e]) * 2.0 + 1e-12; r += 0.1) {
        for (int k = 0; k < 32; ++k) {
          const complexd z = std::polar(r, 2.0 * kPi * k / 32.0);
          sup[e] = std::max(sup[e], std::abs(he.eval(z) - fam.f.f(z)));
          dzb[e] = std::max(dzb[e], std::abs(he.dzb(z)));
        }
      }
    }
    std::snprintf(id, sizeof id, "C4.sup-difference-decreasing[%s]", fam.name);
    check(sup[0] > sup[1] && sup[1] > sup[2] && sup[2] > sup[3], id,
          "%.4f > %.4f > %.4f > %.4f", sup[0], sup[1], sup[2], sup[3]);
    std::snprintf(id, sizeof id, "C4.antiholomorphic-decreasing[%s]", fam.name);
    check(dzb[0] > dzb[1] && dzb[1] > dzb[2] && dzb[2] > dzb[3], id,
          "%.4f > %.4f > %.4f > %.4f", dzb[0], dzb[1], dzb[2], dzb[3]);
  }
  const double wall = seconds_since(t0);
  check(wall < 60.0, "C4.runtime", "%.1f s (cap 60 s)", wall);
}

// ---- 5: power-shear family between unit slit rings --------------------------

void criterion5() {
  std::vector<std::array<double, 3>> triples = {{0.25, 0.5, 1.25}};
  std::mt19937 gen(1405);
  for (int k = 0; k < 100; ++k) {
    const double a = 0.05 + 0.80 * urand(gen);
    const double b = a + 0.05 + (0.90 - a) * urand(gen);
    const double alpha = 1.01 + 0.48 * urand(gen);
    triples.push_back({a, b, alpha});
  }
  int vfail = 0, sfail = 0;
  double min_margin = kInf;
  for (const auto& tr : triples) {
    const PowerShearResult res = power_shear_map(tr[0], tr[1], tr[2]);
    const MapVerificationReport rep =
        verify_map(model_of(res.map), realize_canonical(res.source_ring),
                   realize_canonical(res.target_ring));
    if (!(rep.pass && rep.winding_degree == 1 && rep.jacobian_margin > 0)) {
      ++vfail;
      note("triple (%.4f, %.4f, %.4f): pass=%d degree=%d margin=%.3e", tr[0], tr[1],
           tr[2], rep.pass, rep.winding_degree, rep.jacobian_margin);
    }
    if (!secant_slope_inequality(tr[0], tr[1], tr[2])) {
      ++sfail;
      note("triple (%.4f, %.4f, %.4f): secant slope inequality failed", tr[0], tr[1],
           tr[2]);
    }
    min_margin = std::min(min_margin, modulus_canonical(res.source_ring).value -
                                          modulus_canonical(res.target_ring).value);
  }
  check(vfail == 0, "C5.maps-verified", "%zu triples, %d verification failures",
        triples.size(), vfail);
  check(sfail == 0, "C5.secant-slope-holds", "%zu triples, %d failures", triples.size(),
        sfail);
  check(min_margin > 1e-10, "C5.modulus-strictly-increases",
        "min source-target modulus gap %.3e (needs > 1e-10)", min_margin);
}

// ---- 6: bent-strip shear construction ---------------------------------------

// Raw five-point defect at on-seam points, best arm of a shrinking ladder
// capped by the distance to the gap ends (the verification stencil protocol).
double seam_residual(const SCShearMap& m) {
  double worst = 0.0;
  const double gaps[2][2] = {{1.0, m.sc.t_b}, {-m.sc.s_b, -1.0}};
  for (const auto& g : gaps) {
    for (double f : {0.35, 0.5, 0.65}) {
      const complexd z(g[0] + f * (g[1] - g[0]), 0.0);
      const double dist = std::min(f, 1.0 - f) * (g[1] - g[0]);
      double arm = std::min(1e-2, dist / 4.0);
      double best = kInf;
      const complexd center = m.eval(z);
      for (int l = 0; l < 4; ++l, arm *= 0.5) {
        const complexd sum = m.eval(z + arm) + m.eval(z - arm) +
                             m.eval(z + complexd(0, arm)) + m.eval(z - complexd(0, arm));
        best = std::min(best, std::abs(sum - 4.0 * center));
      }
      worst = std::max(worst, best);
    }
  }
  return worst;
}

void criterion6() {
  const double cap = modulus_canonical(CanonicalRing::double_teich(2.0, 2.0)).value;
  const double target = 0.5 * cap;
  const SolveBResult sol = solve_b(target, 2.0, 2.0);
  const double resid = std::abs(sol.sc.modulus - target);
  check(resid < 1e-6, "C6.bend-solve",
        "b=%.9f s_b=%.7f t_b=%.7f modulus=%.9f target=%.9f resid=%.2e", sol.b,
        sol.sc.s_b, sol.sc.t_b, sol.sc.modulus, target, resid);

  const SCShearMap m = assemble_shear_harmonic(sol.model, sol.sc, 2.0, 2.0);
  const MapVerificationReport rep =
      verify_map(model_of(m), sc_source_domain(m), sc_target_domain(m));
  check(rep.pass && rep.winding_degree == 1 && rep.jacobian_margin > 0 &&
            rep.harmonicity_residual < 1e-6,
        "C6.map-verified", "pass=%d degree=%d margin=%.4f harmonicity=%.2e (cap 1e-6)",
        rep.pass, rep.winding_degree, rep.jacobian_margin, rep.harmonicity_residual);

  const double seam = seam_residual(m);
  check(seam < 1e-6, "C6.seam-harmonicity",
        "max 5-point residual over seam gap points %.3e (cap 1e-6)", seam);

  const SCResult lo = solve_preimages(build_gb(1e-3), 2.0, 2.0);
  const double lo_gap = std::abs(lo.modulus - cap);
  check(lo_gap < 1e-3, "C6.endpoint-small-bend",
        "modulus=%.10f unbent-limit=%.10f |gap|=%.3e (cap 1e-3)", lo.modulus, cap,
        lo_gap);

  const SCResult hi = solve_preimages(build_gb(100.0), 2.0, 2.0);
  check(hi.modulus < 0.05, "C6.endpoint-large-bend",
        "modulus=%.10f at bend height 100 (cap 0.05)", hi.modulus);
}

// ---- 7: shear-family supremum on bounded rings and the ray family ----------

void criterion7() {
  struct Case {
    const char* name;
    DoublyConnectedDomain dom;
  };
  std::vector<Case> cases;
  {
    DoublyConnectedDomain d;
    d.bounded.vertices = {{-1, -1}, {1, -1}, {1, 1}, {-1, 1}};
    d.unbounded.kind = UnboundedDescriptor::Kind::PolygonExterior;
    d.unbounded.polygon.vertices = {{-3, -3}, {3, -3}, {3, 3}, {-3, 3}};
    cases.push_back({"square-in-square", d});
  }
  {
    DoublyConnectedDomain d;
    d.bounded.vertices = {{-1.2, -0.5}, {1.2, -0.5}, {1.2, 0.5}, {-1.2, 0.5}};
    d.unbounded.kind = UnboundedDescriptor::Kind::PolygonExterior;
    for (int k = 0; k < 6; ++k)
      d.unbounded.polygon.vertices.push_back(std::polar(3.2, kPi * k / 3.0));
    cases.push_back({"rect-in-hexagon", d});
  }
  {
    DoublyConnectedDomain d;
    d.bounded.vertices = {{-0.5, -0.6}, {1.0, -0.2}, {0.0, 0.9}};
    d.unbounded.kind = UnboundedDescriptor::Kind::PolygonExterior;
    d.unbounded.polygon.vertices = {{-3, -3}, {3, -3}, {3, 3}, {-3, 3}};
    cases.push_back({"triangle-in-square", d});
  }

  for (const Case& c : cases) {
    const AffineModulusResult res = affine_modulus(c.dom);
    char id[64];
    std::snprintf(id, sizeof id, "C7.attained[%s]", c.name);
    const bool ok = res.attained_flag == Attained::Attained && res.maximizer &&
                    res.maximizer->alpha > 0.01;
    check(ok, id, "flag=%s alpha*=%.4f theta*=%.4f value=%.6f err=%.1e",
          attained_name(res.attained_flag), res.maximizer ? res.maximizer->alpha : 0.0,
          res.maximizer ? res.maximizer->theta : 0.0, res.value.value, res.value.error);
  }

  const DoublyConnectedDomain g2 = realize_canonical(CanonicalRing::grotzsch(2.0));
  const AffineModulusResult res = affine_modulus(g2);
  check(res.attained_flag == Attained::BoundaryLimit && !res.maximizer,
        "C7.ray-family-boundary-limit", "flag=%s value=%.6f err=%.1e",
        attained_name(res.attained_flag), res.value.value, res.value.error);

  // Best value per sweep compression level, walking from no shear toward the
  // alpha floor.
  const AffineOptions def;
  std::vector<double> level_best(static_cast<size_t>(def.alpha_grid), -kInf);
  for (const TracePoint& t : res.trace) {
    for (int i = 0; i < def.alpha_grid; ++i) {
      const double la = std::log(def.alpha_floor) * (1.0 - double(i) / (def.alpha_grid - 1));
      if (std::abs(std::log(t.alpha) - la) < 1e-9) {
        level_best[static_cast<size_t>(i)] =
            std::max(level_best[static_cast<size_t>(i)], t.modulus);
        break;
      }
    }
  }
  const double slack = 0.05;
  int present = 0, violations = 0;
  double prev = -kInf, first = 0.0, last = 0.0, worst_step = 0.0;
  for (int i = def.alpha_grid - 1; i >= 0; --i) {  // alpha = 1 down to the floor
    const double v = level_best[static_cast<size_t>(i)];
    if (v == -kInf) continue;
    if (present == 0) first = v;
    if (present > 0 && v < prev - slack) {
      ++violations;
      worst_step = std::max(worst_step, prev - v);
    }
    prev = std::max(prev, v);
    last = v;
    ++present;
  }
  check(present >= 12 && violations == 0 && last - first > 0.2,
        "C7.ray-family-profile-climbs",
        "levels=%d unsheared-best=%.4f floor-best=%.4f climb=%.4f violations=%d "
        "(step slack %.2f)",
        present, first, last, last - first, violations, slack);

  double worst_excess = -kInf;
  for (const TracePoint& t : res.trace)
    worst_excess = std::max(worst_excess, t.modulus - degeneration_rhs(g2, t.theta, t.alpha));
  const double bound_slack = 0.25;
  check(worst_excess <= bound_slack, "C7.degeneration-bound",
        "max(value - separation bound) = %.4f over %zu trace points "
        "(slack %.2f for coarse-sweep estimates)",
        worst_excess, res.trace.size(), bound_slack);
}

// ---- 8: affine-invariance classes and shear constancy -----------------------

void criterion8() {
  {
    DoublyConnectedDomain punctured;
    punctured.bounded.vertices = {{0.0, 0.0}};
    punctured.unbounded.kind = UnboundedDescriptor::Kind::PolygonExterior;
    punctured.unbounded.polygon.vertices = {{-2, -2}, {2, -2}, {2, 2}, {-2, 2}};
    const auto cls = classify_affine_invariance(punctured);
    check(cls == AffineInvarianceClass::Degenerate, "C8.class[point-in-square]",
          "got %s", invariance_class_name(cls));
  }
  {
    const auto cls =
        classify_affine_invariance(realize_canonical(CanonicalRing::teichmuller(2.0)));
    check(cls == AffineInvarianceClass::TeichmullerAffine, "C8.class[teichmuller(2)]",
          "got %s", invariance_class_name(cls));
  }
  {
    const auto cls = classify_affine_invariance(
        realize_canonical(CanonicalRing::double_teich(2.0, 3.0)));
    check(cls == AffineInvarianceClass::DoubleTeichmullerAffine,
          "C8.class[double_teichmuller(2,3)]", "got %s", invariance_class_name(cls));
  }
  {
    const auto cls =
        classify_affine_invariance(realize_canonical(CanonicalRing::annulus(1.0, 2.0)));
    check(cls == AffineInvarianceClass::NotInvariant, "C8.class[annulus(1,2)]", "got %s",
          invariance_class_name(cls));
  }
  {
    AffineMap skew;
    skew.a = complexd(1.1, 0.3);
    skew.b = complexd(0.25, -0.1);
    skew.c = complexd(2.0, 5.0);
    const auto cls = classify_affine_invariance(
        apply_affine(skew, realize_canonical(CanonicalRing::teichmuller(2.0))));
    check(cls == AffineInvarianceClass::TeichmullerAffine,
          "C8.class[affine-image-of-teichmuller(2)]", "got %s",
          invariance_class_name(cls));
  }

  struct Fam {
    const char* name;
    CanonicalRing ring;
  };
  const Fam fams[] = {{"teichmuller(2)", CanonicalRing::teichmuller(2.0)},
                      {"double_teichmuller(2,3)", CanonicalRing::double_teich(2.0, 3.0)}};
  for (const Fam& fam : fams) {
    const DoublyConnectedDomain dom = realize_canonical(fam.ring);
    double vmin = kInf, vmax = -kInf, emax = 0.0;
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) {
        const ModulusEstimate e =
            shear_objective(dom, kPi * i / 5.0, 0.2 * (j + 1));
        vmin = std::min(vmin, e.value);
        vmax = std::max(vmax, e.value);
        emax = std::max(emax, e.error);
      }
    }
    char id[64];
    std::snprintf(id, sizeof id, "C8.shear-constancy[%s]", fam.name);
    check(vmax - vmin <= 2.0 * emax, id, "spread=%.3e over 5x5 grid, 2*err=%.3e",
          vmax - vmin, 2.0 * emax);
  }
}

// ---- 9: obstruction bound consistency ---------------------------------------

void criterion9() {
  double prev = -1.0, min_step = kInf;
  for (int k = 0; k <= 100; ++k) {
    const double tau = std::pow(10.0, -2.0 + 0.1 * k);
    const double v = phi_lower(tau);
    if (k) min_step = std::min(min_step, v - prev);
    prev = v;
  }
  check(min_step >= 0.0, "C9.lower-bound-nondecreasing",
        "101-point log grid on [1e-2, 1e8], min successive step %.3e", min_step);

  const double at_1e6 = phi_lower(1e6);
  check(at_1e6 > 0.9, "C9.value-at-1e6", "phi_lower(1e6)=%.16f (needs > 0.9)", at_1e6);
  const double at_small = phi_lower(1e-2);
  check(at_small < 1e-3, "C9.value-at-1e-2", "phi_lower(1e-2)=%.3e (needs < 1e-3)",
        at_small);

  // Pairs from the radial existence grid (closed-form moduli on both sides).
  int obstructed = 0, pairs = 0;
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 20; ++j) {
      const double x = 1.0 + 4.0 * (i + 1) / 20.0;
      const double y = 1.0 + 4.0 * (j + 1) / 20.0;
      if (y < 0.5 * (x + 1.0 / x) - 1e-12) continue;
      ++pairs;
      if (necessary_obstruction(std::log(x), std::log(y)).obstructed) ++obstructed;
    }
  }
  check(obstructed == 0, "C9.radial-grid-pairs", "%d pairs, %d obstructed", pairs,
        obstructed);

  // Pairs from the inflated-annulus pipeline.
  obstructed = 0;
  pairs = 0;
  for (const ConformalParam& f : {conformal_identity(), conformal_mobius(0.3)}) {
    const double eps1 = max_epsilon(f, 2.0).epsilon_1;
    for (double eps : {0.2, 0.1, 0.05, 0.025, 0.5 * eps1}) {
      ++pairs;
      if (necessary_obstruction(std::log((1.0 + eps) * 2.0), std::log(2.0)).obstructed)
        ++obstructed;
    }
  }
  check(obstructed == 0, "C9.inflated-annulus-pairs", "%d pairs, %d obstructed", pairs,
        obstructed);

  // Pairs from the power-shear family (same draws as the family criterion).
  obstructed = 0;
  std::vector<std::array<double, 3>> triples = {{0.25, 0.5, 1.25}};
  std::mt19937 gen(1405);
  for (int k = 0; k < 100; ++k) {
    const double a = 0.05 + 0.80 * urand(gen);
    const double b = a + 0.05 + (0.90 - a) * urand(gen);
    const double alpha = 1.01 + 0.48 * urand(gen);
    triples.push_back({a, b, alpha});
  }
  for (const auto& tr : triples) {
    const PowerShearResult res = power_shear_map(tr[0], tr[1], tr[2]);
    if (necessary_obstruction(modulus_canonical(res.source_ring).value,
                              modulus_canonical(res.target_ring).value)
            .obstructed)
      ++obstructed;
  }
  check(obstructed == 0, "C9.power-shear-pairs", "%zu pairs, %d obstructed",
        triples.size(), obstructed);

  // The bent-strip pair: source ring at half the target ring's modulus.
  const double cap = modulus_canonical(CanonicalRing::double_teich(2.0, 2.0)).value;
  const auto rep = necessary_obstruction(0.5 * cap, cap);
  check(!rep.obstructed, "C9.bent-strip-pair", "ratio=%.4f threshold=%.3e obstructed=%d",
        rep.ratio, rep.threshold, rep.obstructed);
}

}  // namespace

int main(int argc, char** argv) {
  int which = 0;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--criterion") && i + 1 < argc) {
      which = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]   (N in 1..9; default all)\n",
                   argv[0]);
      return 2;
    }
  }
  if (which < 0 || which > 9) {
    std::fprintf(stderr, "criterion must be in 1..9\n");
    return 2;
  }

  using Fn = void (*)();
  const Fn table[9] = {criterion1, criterion2, criterion3, criterion4, criterion5,
                       criterion6, criterion7, criterion8, criterion9};
  try {
    if (which == 0) {
      for (const Fn fn : table) fn();
    } else {
      table[which - 1]();
    }
  } catch (const Error& e) {
    ++g_total;
    ++g_failed;
    std::printf("[FAIL] unhandled-error: [%s] %s\n", error_kind_name(e.kind()), e.what());
  } catch (const std::exception& e) {
    ++g_total;
    ++g_failed;
    std::printf("[FAIL] unhandled-error: %s\n", e.what());
  }
  std::printf("acceptance: %d/%d sub-checks passed\n", g_total - g_failed, g_total);
  return g_failed == 0 ? 0 : 1;
}
