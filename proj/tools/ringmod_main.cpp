#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ringmod/affine_opt.hpp"
#include "ringmod/canonical.hpp"
#include "ringmod/condenser.hpp"
#include "ringmod/domain_io.hpp"
#include "ringmod/errors.hpp"
#include "ringmod/geometry.hpp"
#include "ringmod/harmonic.hpp"
#include "ringmod/sc_construction.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ringmod;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Ctx {
  std::string out_dir = ".";
  bool emit_csv = false;
  bool emit_svg = false;
};

void emit(const Ctx& ctx, const std::string& name, const std::string& text) {
  fs::create_directories(ctx.out_dir);
  write_text((fs::path(ctx.out_dir) / name).string(), text);
}

void print_modulus(const ModulusEstimate& e) {
  std::printf("Mod = %.15g ± %.3g (%s)\n", e.value, e.error, e.method.c_str());
}

CanonicalRing ring_from_flags(const std::string& name, double r, double R, double s,
                              double t, double a, double b) {
  const auto need = [&](double v, const char* flag) {
    if (std::isnan(v))
      throw Error(ErrorKind::InvalidInput,
                  "ring '" + name + "' needs --" + flag);
    return v;
  };
  if (name == "annulus") return CanonicalRing::annulus(need(r, "r"), need(R, "R"));
  if (name == "grotzsch") return CanonicalRing::grotzsch(need(s, "s"));
  if (name == "teichmuller") return CanonicalRing::teichmuller(need(s, "s"));
  if (name == "double_teichmuller")
    return CanonicalRing::double_teich(need(s, "s"), need(t, "t"));
  if (name == "double_teichmuller_unit")
    return CanonicalRing::double_teich_unit(need(a, "a"), need(b, "b"));
  throw Error(ErrorKind::InvalidInput, "unknown ring '" + name + "'");
}

ConformalParam family_from_flags(const std::string& family, double param) {
  if (family == "identity") return conformal_identity();
  if (family == "mobius") return conformal_mobius(param);
  if (family == "inverse-perturb") return conformal_inverse_perturb(param);
  throw Error(ErrorKind::InvalidInput, "unknown boundary family '" + family + "'");
}

void emit_verification(const Ctx& ctx, const HarmonicMapModel& model,
                       const DoublyConnectedDomain& source,
                       const DoublyConnectedDomain& target,
                       const std::string& map_json, json& summary) {
  const MapVerificationReport report = verify_map(model, source, target);
  emit(ctx, "map.json", map_json);
  emit(ctx, "report.json", report_to_json(report));
  if (ctx.emit_svg) {
    emit(ctx, "source.svg", svg_domain(source));
    emit(ctx, "grid.svg", svg_image_grid(model, source));
  }
  summary["verified"] = report.pass;
  summary["jacobian_margin"] = report.jacobian_margin;
  summary["harmonicity_residual"] = report.harmonicity_residual;
  summary["winding_degree"] = report.winding_degree;
}

int run_cli(const std::vector<std::string>& args, int depth);

void add_common(CLI::App* cmd, Ctx& ctx) {
  cmd->add_option("--out", ctx.out_dir, "artifact directory");
  cmd->add_flag("--emit-csv", ctx.emit_csv, "write CSV artifacts");
  cmd->add_flag("--emit-svg", ctx.emit_svg, "write SVG figures");
}

int run_cli(const std::vector<std::string>& args, int depth) {
  CLI::App app{"moduli of doubly connected domains and harmonic map checks"};
  app.require_subcommand(1);
  Ctx ctx;

  // ---- canonical ----------------------------------------------------------
  auto* canonical = app.add_subcommand("canonical", "closed-form ring modulus");
  std::string ring_name_flag;
  double fr = kNaN, fR = kNaN, fs = kNaN, ft = kNaN, fa = kNaN, fb = kNaN;
  canonical->add_option("--ring", ring_name_flag, "ring family")->required();
  canonical->add_option("--r", fr, "inner radius");
  canonical->add_option("--R", fR, "outer radius");
  canonical->add_option("--s", fs, "ray parameter");
  canonical->add_option("--t", ft, "second ray parameter");
  canonical->add_option("--a", fa, "segment start");
  canonical->add_option("--b", fb, "segment end");
  add_common(canonical, ctx);
  canonical->callback([&] {
    const CanonicalRing ring = ring_from_flags(ring_name_flag, fr, fR, fs, ft, fa, fb);
    const ModulusEstimate est = modulus_canonical(ring);
    print_modulus(est);
    emit(ctx, "result.json", modulus_to_json(est));
  });

  // ---- modulus ------------------------------------------------------------
  auto* modulus = app.add_subcommand("modulus", "condenser modulus of a domain");
  std::string domain_path;
  CondenserOptions cond;
  modulus->add_option("--domain", domain_path, "domain JSON")->required();
  modulus->add_option("--resolution", cond.base_resolution, "finest grid cells");
  modulus->add_option("--levels", cond.levels, "refinement levels");
  modulus->add_option("--clip-factor", cond.clip_factor, "far-field clip factor");
  add_common(modulus, ctx);
  modulus->callback([&] {
    const DoublyConnectedDomain d = read_domain(domain_path);
    const CondenserResult res = modulus_numeric_detailed(d, cond);
    print_modulus(res.estimate);
    emit(ctx, "result.json", modulus_to_json(res.estimate));
    if (ctx.emit_csv) {
      std::vector<std::vector<double>> rows;
      for (size_t i = 0; i < res.per_level.size(); ++i)
        rows.push_back({static_cast<double>(i),
                        static_cast<double>(res.per_level[i].cells),
                        res.per_level[i].h, res.per_level[i].value});
      emit(ctx, "levels.csv",
           csv_table("modulus-levels-v1", {"level", "cells", "h", "value"}, rows));
    }
    if (ctx.emit_svg) emit(ctx, "domain.svg", svg_domain(d));
  });

  // ---- affine-modulus -----------------------------------------------------
  auto* affine = app.add_subcommand("affine-modulus", "sup of modulus over shears");
  std::string affine_domain;
  AffineOptions aopt;
  int affine_levels = aopt.final_cond.levels;
  int affine_res = aopt.final_cond.base_resolution;
  affine->add_option("--domain", affine_domain, "domain JSON")->required();
  affine->add_option("--theta-samples", aopt.theta_grid, "direction grid size");
  affine->add_option("--alpha-samples", aopt.alpha_grid, "compression grid size");
  affine->add_option("--alpha-floor", aopt.alpha_floor, "smallest compression");
  affine->add_option("--levels", affine_levels, "condenser levels for the result");
  affine->add_option("--resolution", affine_res, "condenser cells for the result");
  add_common(affine, ctx);
  affine->callback([&] {
    aopt.final_cond.levels = affine_levels;
    aopt.final_cond.base_resolution = affine_res;
    const DoublyConnectedDomain d = read_domain(affine_domain);
    const AffineModulusResult res = affine_modulus(d, aopt);
    json out;
    out["value"] = res.value.value;
    out["error"] = res.value.error;
    out["method"] = res.value.method;
    out["attained_flag"] = attained_name(res.attained_flag);
    if (res.maximizer) {
      out["theta"] = res.maximizer->theta;
      out["alpha"] = res.maximizer->alpha;
    }
    std::printf("%s\n", out.dump(2).c_str());
    emit(ctx, "result.json", out.dump(2) + "\n");
    if (ctx.emit_csv) {
      std::vector<std::vector<double>> rows;
      for (const TracePoint& t : res.trace)
        rows.push_back({t.theta, t.alpha, t.modulus});
      emit(ctx, "trace.csv",
           csv_table("affine-trace-v1", {"theta", "alpha", "modulus"}, rows));
    }
  });

  // ---- classify -----------------------------------------------------------
  auto* classify = app.add_subcommand("classify", "affine-invariance class");
  std::string classify_domain;
  classify->add_option("--domain", classify_domain, "domain JSON")->required();
  add_common(classify, ctx);
  classify->callback([&] {
    const DoublyConnectedDomain d = read_domain(classify_domain);
    const AffineInvarianceClass cls = classify_affine_invariance(d);
    std::printf("%s\n", invariance_class_name(cls));
    json out;
    out["class"] = invariance_class_name(cls);
    emit(ctx, "result.json", out.dump(2) + "\n");
  });

  // ---- construct ----------------------------------------------------------
  auto* construct = app.add_subcommand("construct", "build a harmonic map");
  construct->require_subcommand(1);

  auto* nitsche = construct->add_subcommand("nitsche", "radial map between annuli");
  double nr = 1.0, nR = 2.0, nrs = kNaN, nRs = kNaN;
  nitsche->add_option("--r", nr, "source inner radius")->required();
  nitsche->add_option("--R", nR, "source outer radius")->required();
  nitsche->add_option("--rstar", nrs, "target inner radius")->required();
  nitsche->add_option("--Rstar", nRs, "target outer radius")->required();
  add_common(nitsche, ctx);
  nitsche->callback([&] {
    const auto m = radial_nitsche_map(nr, nR, nrs, nRs);
    if (!m) {
      char msg[256];
      std::snprintf(msg, sizeof msg,
                    "no harmonic homeomorphism A(%g,%g) -> A(%g,%g): target ratio "
                    "%.12g is below the existence threshold (R/r + r/R)/2 = %.12g",
                    nr, nR, nrs, nRs, nRs / nrs, 0.5 * (nR / nr + nr / nR));
      throw Error(ErrorKind::HypothesisViolated, msg);
    }
    json out;
    out["a"] = m->a;
    out["b"] = m->b;
    emit_verification(ctx, model_of(*m),
                      realize_canonical(CanonicalRing::annulus(nr, nR)),
                      realize_canonical(CanonicalRing::annulus(nrs, nRs)),
                      map_to_json(*m), out);
    std::printf("%s\n", out.dump(2).c_str());
  });

  auto* pshear = construct->add_subcommand("power-shear", "Re(z^alpha) + i Im z");
  double pa = kNaN, pb = kNaN, palpha = kNaN;
  pshear->add_option("--a", pa, "target slit start")->required();
  pshear->add_option("--b", pb, "target slit end")->required();
  pshear->add_option("--alpha", palpha, "power exponent")->required();
  add_common(pshear, ctx);
  pshear->callback([&] {
    const PowerShearResult res = power_shear_map(pa, pb, palpha);
    json out;
    out["alpha"] = res.map.alpha;
    out["source_params"] = {res.source_ring.p0, res.source_ring.p1};
    out["secant_slope_holds"] = secant_slope_inequality(pa, pb, palpha);
    emit_verification(ctx, model_of(res.map), realize_canonical(res.source_ring),
                      realize_canonical(res.target_ring),
                      map_to_json(res.map, res.source_ring, res.target_ring), out);
    std::printf("%s\n", out.dump(2).c_str());
  });

  auto* adir = construct->add_subcommand("annulus-dirichlet",
                                         "Fourier harmonic extension of boundary data");
  double aR = 2.0, aeps = 0.0, aparam = 0.0;
  int aN = 64, aM = 512;
  std::string afam = "identity";
  adir->add_option("--R", aR, "conformal outer radius");
  adir->add_option("--epsilon", aeps, "outer inflation (0 = search for the largest)");
  adir->add_option("--family", afam, "identity | mobius | inverse-perturb");
  adir->add_option("--param", aparam, "family parameter");
  adir->add_option("--N", aN, "Fourier truncation");
  adir->add_option("--M", aM, "boundary samples");
  add_common(adir, ctx);
  adir->callback([&] {
    const ConformalParam f = family_from_flags(afam, aparam);
    double eps = aeps;
    json out;
    if (eps <= 0.0) {
      const EpsilonSearchResult search = max_epsilon(f, aR);
      eps = 0.5 * search.epsilon_1;
      out["epsilon_1"] = search.epsilon_1;
    }
    const AnnulusHarmonicMap h = construct_h_epsilon(f, aR, eps, aN, aM);
    out["epsilon"] = eps;
    out["rho"] = h.rho;
    out["spectral_tail"] = h.spectral_tail();

    DoublyConnectedDomain source =
        realize_canonical(CanonicalRing::annulus(1.0, h.rho));
    DoublyConnectedDomain target;
    const int n = 256;
    for (int k = 0; k < n; ++k) {
      const double th = 2.0 * 3.14159265358979323846 * k / n;
      target.bounded.vertices.push_back(f.f(std::polar(1.0, th)));
      target.unbounded.polygon.vertices.push_back(f.f(std::polar(aR, th)));
    }
    target.unbounded.kind = UnboundedDescriptor::Kind::PolygonExterior;
    emit_verification(ctx, model_of(h), source, target, map_to_json(h), out);
    std::printf("%s\n", out.dump(2).c_str());
  });

  auto* scs = construct->add_subcommand("sc-shear", "bent-strip shear with target modulus");
  double sc_sp = kNaN, sc_tp = kNaN, sc_target = kNaN;
  scs->add_option("--s-prime", sc_sp, "left ray endpoint")->required();
  scs->add_option("--t-prime", sc_tp, "right ray endpoint")->required();
  scs->add_option("--target-modulus", sc_target, "modulus for the source ring")->required();
  add_common(scs, ctx);
  scs->callback([&] {
    const SolveBResult sol = solve_b(sc_target, sc_sp, sc_tp);
    const SCShearMap m = assemble_shear_harmonic(sol.model, sol.sc, sc_sp, sc_tp);
    json out;
    out["b"] = sol.b;
    out["mu"] = sol.model.mu;
    out["C"] = sol.model.C;
    out["s_b"] = sol.sc.s_b;
    out["t_b"] = sol.sc.t_b;
    out["modulus"] = sol.sc.modulus;
    out["modulus_residual"] = std::abs(sol.sc.modulus - sc_target);
    emit_verification(ctx, model_of(m), sc_source_domain(m), sc_target_domain(m),
                      map_to_json(m), out);
    std::printf("%s\n", out.dump(2).c_str());
  });

  // ---- verify -------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "check a map between two domains");
  std::string vmap, vsource, vtarget;
  verify->add_option("--map", vmap, "map descriptor JSON")->required();
  verify->add_option("--source", vsource, "source domain JSON")->required();
  verify->add_option("--target", vtarget, "target domain JSON")->required();
  add_common(verify, ctx);
  verify->callback([&] {
    const LoadedMap lm = read_map(vmap);
    const DoublyConnectedDomain source = read_domain(vsource);
    const DoublyConnectedDomain target = read_domain(vtarget);
    const MapVerificationReport report = verify_map(lm.model, source, target);
    const std::string text = report_to_json(report);
    std::printf("%s", text.c_str());
    emit(ctx, "report.json", text);
    if (ctx.emit_svg) {
      emit(ctx, "source.svg", svg_domain(source));
      emit(ctx, "grid.svg", svg_image_grid(lm.model, source));
    }
  });

  // ---- obstruction --------------------------------------------------------
  auto* obstruction = app.add_subcommand(
      "obstruction", "modulus-ratio nonexistence certificate");
  std::string odomain, otarget;
  CondenserOptions ocond;
  obstruction->add_option("--domain", odomain, "source domain JSON")->required();
  obstruction->add_option("--target", otarget, "target domain JSON")->required();
  obstruction->add_option("--resolution", ocond.base_resolution, "finest grid cells");
  obstruction->add_option("--levels", ocond.levels, "refinement levels");
  add_common(obstruction, ctx);
  obstruction->callback([&] {
    const DoublyConnectedDomain source = read_domain(odomain);
    const DoublyConnectedDomain target = read_domain(otarget);
    const ModulusEstimate src_mod =
        source.canonical_tag ? modulus_canonical(*source.canonical_tag)
                             : modulus_numeric(source, ocond);
    AffineOptions aop;
    aop.final_cond = ocond;
    const AffineModulusResult aff = affine_modulus(target, aop);
    const ObstructionReport rep = necessary_obstruction(
        src_mod.value, aff.value.value, src_mod.error, aff.value.error);
    json out;
    out["source_modulus"] = src_mod.value;
    out["target_affine_modulus"] = aff.value.value;
    out["ratio"] = rep.ratio;
    out["threshold"] = rep.threshold;
    out["obstructed"] = rep.obstructed;
    std::printf("%s\n", out.dump(2).c_str());
    emit(ctx, "result.json", out.dump(2) + "\n");
  });

  // ---- sweep --------------------------------------------------------------
  auto* sweep = app.add_subcommand("sweep", "parameter grid to CSV");
  std::string sweep_kind;
  int sweep_n = 20;
  double sw_R = 2.0, sw_param = 0.0, sw_sp = 2.0, sw_tp = 2.0;
  double sw_b0 = 0.125, sw_b1 = 8.0;
  std::string sw_family = "identity";
  sweep->add_option("--kind", sweep_kind, "nitsche | epsilon | sc")->required();
  sweep->add_option("--n", sweep_n, "grid size / sample count");
  sweep->add_option("--R", sw_R, "outer radius (epsilon sweep)");
  sweep->add_option("--family", sw_family, "boundary family (epsilon sweep)");
  sweep->add_option("--param", sw_param, "family parameter (epsilon sweep)");
  sweep->add_option("--s-prime", sw_sp, "left ray endpoint (sc sweep)");
  sweep->add_option("--t-prime", sw_tp, "right ray endpoint (sc sweep)");
  sweep->add_option("--b0", sw_b0, "first bend height (sc sweep)");
  sweep->add_option("--b1", sw_b1, "last bend height (sc sweep)");
  add_common(sweep, ctx);
  sweep->callback([&] {
    std::vector<std::vector<double>> rows;
    std::string schema;
    std::vector<std::string> columns;
    if (sweep_kind == "nitsche") {
      schema = "nitsche-grid-v1";
      columns = {"ratio_source", "ratio_target", "exists", "inner_margin"};
      rows.resize(static_cast<size_t>(sweep_n) * sweep_n);
      for (int i = 0; i < sweep_n; ++i) {
        for (int j = 0; j < sweep_n; ++j) {
          const double x = 1.0 + 4.0 * (i + 1) / sweep_n;
          const double y = 1.0 + 4.0 * (j + 1) / sweep_n;
          const auto m = radial_nitsche_map(1.0, x, 1.0, y);
          const double margin = m ? m->a - std::abs(m->b) : 0.0;
          rows[static_cast<size_t>(i) * sweep_n + j] = {x, y, m ? 1.0 : 0.0, margin};
        }
      }
    } else if (sweep_kind == "epsilon") {
      schema = "epsilon-probe-v1";
      columns = {"epsilon", "margin", "pass"};
      const EpsilonSearchResult search =
          max_epsilon(family_from_flags(sw_family, sw_param), sw_R);
      for (const EpsilonProbe& p : search.table)
        rows.push_back({p.epsilon, p.margin, p.pass ? 1.0 : 0.0});
    } else if (sweep_kind == "sc") {
      if (!(sw_b0 > 0.0) || !(sw_b1 > sw_b0) || sweep_n < 2)
        throw Error(ErrorKind::InvalidInput, "sc sweep needs 0 < b0 < b1, n >= 2");
      schema = "sc-bend-v1";
      columns = {"b", "s_b", "t_b", "modulus"};
      rows.resize(static_cast<size_t>(sweep_n));
#pragma omp parallel for schedule(dynamic)
      for (int i = 0; i < sweep_n; ++i) {
        const double bv =
            sw_b0 * std::pow(sw_b1 / sw_b0, double(i) / (sweep_n - 1));
        const GbModel model = build_gb(bv);
        const SCResult sc = solve_preimages(model, sw_sp, sw_tp);
        rows[static_cast<size_t>(i)] = {bv, sc.s_b, sc.t_b, sc.modulus};
      }
    } else {
      throw Error(ErrorKind::InvalidInput, "unknown sweep kind '" + sweep_kind + "'");
    }
    const std::string text = csv_table(schema, columns, rows);
    emit(ctx, "sweep.csv", text);
    std::printf("wrote %zu rows to %s/sweep.csv\n", rows.size(), ctx.out_dir.c_str());
  });

  // ---- rerun --------------------------------------------------------------
  auto* rerun = app.add_subcommand("rerun", "re-execute a run from its manifest");
  std::string manifest_path;
  rerun->add_option("--manifest", manifest_path, "manifest JSON")->required();
  int rerun_status = 0;
  rerun->callback([&] {
    if (depth > 3)
      throw Error(ErrorKind::InvalidInput, "rerun nesting too deep");
    json m = json::parse(read_text(manifest_path), nullptr, false);
    if (m.is_discarded() || !m.contains("argv") || !m["argv"].is_array())
      throw Error(ErrorKind::InvalidInput, "manifest missing argv");
    std::vector<std::string> argv2;
    for (const auto& e : m["argv"]) argv2.push_back(e.get<std::string>());
    rerun_status = run_cli(argv2, depth + 1);
  });

  std::vector<const char*> argv;
  argv.push_back("ringmod");
  for (const std::string& a : args) argv.push_back(a.c_str());

  const auto t0 = std::chrono::steady_clock::now();
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (rerun->parsed()) return rerun_status;

  json manifest;
  manifest["argv"] = args;
  manifest["versions"] = {{"ringmod", kVersion}};
  manifest["wall_time_seconds"] = wall;
  emit(ctx, "manifest.json", manifest.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return run_cli(args, 0);
  } catch (const Error& e) {
    std::fprintf(stderr, "error [%s]: %s\n", error_kind_name(e.kind()), e.what());
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
