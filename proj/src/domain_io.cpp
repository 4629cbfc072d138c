#include "ringmod/domain_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "ringmod/errors.hpp"

namespace ringmod {

using nlohmann::json;

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

json point_json(complexd p) { return json::array({p.real(), p.imag()}); }

complexd point_from(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw Error(ErrorKind::InvalidInput,
                std::string(what) + ": expected a [x, y] pair");
  return complexd(j[0].get<double>(), j[1].get<double>());
}

std::vector<complexd> point_list(const json& j, const char* what) {
  if (!j.is_array())
    throw Error(ErrorKind::InvalidInput,
                std::string(what) + ": expected an array of points");
  std::vector<complexd> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(point_from(e, what));
  return out;
}

json try_parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded())
    throw Error(ErrorKind::InvalidInput, "malformed JSON");
  return j;
}

struct SvgSheet {
  std::ostringstream body;
  double min_x = 1e300, min_y = 1e300, max_x = -1e300, max_y = -1e300;

  void grow(complexd p) {
    min_x = std::min(min_x, p.real());
    max_x = std::max(max_x, p.real());
    min_y = std::min(min_y, -p.imag());
    max_y = std::max(max_y, -p.imag());
  }

  void polyline(const std::vector<complexd>& pts, const char* stroke, bool close) {
    if (pts.size() < 2) return;
    body << (close ? "<polygon" : "<polyline") << " fill=\"none\" stroke=\""
         << stroke << "\" stroke-width=\"0.7%\" points=\"";
    for (size_t i = 0; i < pts.size(); ++i) {
      grow(pts[i]);
      if (i) body << ' ';
      body << fmt6(pts[i].real()) << ',' << fmt6(-pts[i].imag());
    }
    body << "\"/>\n";
  }

  void dot(complexd p, const char* fill) {
    grow(p);
    body << "<circle cx=\"" << fmt6(p.real()) << "\" cy=\"" << fmt6(-p.imag())
         << "\" r=\"0.9%\" fill=\"" << fill << "\"/>\n";
  }

  std::string finish() {
    if (min_x > max_x) {
      min_x = min_y = -1.0;
      max_x = max_y = 1.0;
    }
    const double pad = 0.08 * std::max(max_x - min_x, max_y - min_y) + 1e-9;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\""
        << fmt6(min_x - pad) << ' ' << fmt6(min_y - pad) << ' '
        << fmt6(max_x - min_x + 2 * pad) << ' ' << fmt6(max_y - min_y + 2 * pad)
        << "\">\n"
        << body.str() << "</svg>\n";
    return out.str();
  }
};

double domain_extent(const DoublyConnectedDomain& d) {
  double e = 0.0;
  for (complexd v : d.bounded.vertices) e = std::max(e, std::abs(v));
  if (d.unbounded.kind == UnboundedDescriptor::Kind::PolygonExterior) {
    for (complexd v : d.unbounded.polygon.vertices) e = std::max(e, std::abs(v));
  } else {
    for (const Ray& r : d.unbounded.rays) e = std::max(e, std::abs(r.from));
  }
  return std::max(e, 1e-9);
}

double slit_distance(const DoublyConnectedDomain& d, complexd p) {
  double dist = 1e300;
  const auto& bv = d.bounded.vertices;
  if (bv.size() == 1) dist = std::abs(p - bv[0]);
  for (size_t i = 0; i + 1 < bv.size(); ++i)
    dist = std::min(dist, point_segment_distance(p, bv[i], bv[i + 1]));
  if (bv.size() > 2)
    dist = std::min(dist, point_segment_distance(p, bv.back(), bv.front()));
  for (const Ray& r : d.unbounded.rays)
    dist = std::min(dist, point_ray_distance(p, r));
  return dist;
}

}  // namespace

std::string ring_name(CanonicalRing::Kind kind) {
  switch (kind) {
    case CanonicalRing::Kind::Annulus: return "annulus";
    case CanonicalRing::Kind::Grotzsch: return "grotzsch";
    case CanonicalRing::Kind::Teichmuller: return "teichmuller";
    case CanonicalRing::Kind::DoubleTeich: return "double_teichmuller";
    case CanonicalRing::Kind::DoubleTeichUnit: return "double_teichmuller_unit";
  }
  return "annulus";
}

std::optional<CanonicalRing> ring_from_json_fields(const std::string& name,
                                                   const std::vector<double>& p) {
  const auto need = [&](size_t n) {
    if (p.size() != n)
      throw Error(ErrorKind::InvalidInput,
                  "ring '" + name + "' takes " + std::to_string(n) + " parameter(s)");
  };
  if (name == "annulus") { need(2); return CanonicalRing::annulus(p[0], p[1]); }
  if (name == "grotzsch") { need(1); return CanonicalRing::grotzsch(p[0]); }
  if (name == "teichmuller") { need(1); return CanonicalRing::teichmuller(p[0]); }
  if (name == "double_teichmuller") { need(2); return CanonicalRing::double_teich(p[0], p[1]); }
  if (name == "double_teichmuller_unit") { need(2); return CanonicalRing::double_teich_unit(p[0], p[1]); }
  return std::nullopt;
}

DoublyConnectedDomain parse_domain_json(const std::string& text) {
  json j = try_parse(text);
  if (!j.is_object()) throw Error(ErrorKind::InvalidInput, "domain: expected an object");
  const std::string kind = j.value("kind", std::string());

  std::optional<CanonicalRing> tag;
  if (j.contains("canonical")) {
    const json& c = j["canonical"];
    if (!c.is_object() || !c.contains("ring") || !c.contains("params"))
      throw Error(ErrorKind::InvalidInput, "canonical: expected {ring, params}");
    std::vector<double> params;
    for (const auto& e : c["params"]) {
      if (!e.is_number())
        throw Error(ErrorKind::InvalidInput, "canonical params must be numbers");
      params.push_back(e.get<double>());
    }
    tag = ring_from_json_fields(c["ring"].get<std::string>(), params);
    if (!tag)
      throw Error(ErrorKind::InvalidInput,
                  "unknown ring '" + c["ring"].get<std::string>() + "'");
  }

  if (kind == "canonical") {
    if (!tag) throw Error(ErrorKind::InvalidInput, "canonical domain without a ring");
    return realize_canonical(*tag);
  }
  if (kind != "polygonal")
    throw Error(ErrorKind::InvalidInput, "domain kind must be polygonal or canonical");

  if (!j.contains("bounded") || !j.contains("unbounded"))
    throw Error(ErrorKind::InvalidInput, "polygonal domain needs bounded and unbounded");

  DoublyConnectedDomain d;
  d.bounded.vertices = point_list(j["bounded"], "bounded");
  if (d.bounded.vertices.empty())
    throw Error(ErrorKind::InvalidInput, "bounded component has no vertices");

  const json& u = j["unbounded"];
  if (u.is_object() && u.contains("polygon")) {
    d.unbounded.kind = UnboundedDescriptor::Kind::PolygonExterior;
    d.unbounded.polygon.vertices = point_list(u["polygon"], "unbounded.polygon");
    if (d.unbounded.polygon.vertices.size() < 3)
      throw Error(ErrorKind::InvalidInput, "unbounded polygon needs >= 3 vertices");
  } else if (u.is_object() && u.contains("rays")) {
    d.unbounded.kind = UnboundedDescriptor::Kind::Rays;
    for (const auto& e : u["rays"]) {
      if (!e.is_object() || !e.contains("from") || !e.contains("dir"))
        throw Error(ErrorKind::InvalidInput, "ray: expected {from, dir}");
      Ray r;
      r.from = point_from(e["from"], "ray.from");
      r.dir = point_from(e["dir"], "ray.dir");
      if (std::abs(r.dir) == 0.0)
        throw Error(ErrorKind::InvalidInput, "ray direction must be nonzero");
      d.unbounded.rays.push_back(r);
    }
    if (d.unbounded.rays.empty() || d.unbounded.rays.size() > 2)
      throw Error(ErrorKind::UnsupportedGeometry,
                  "unbounded component must be one or two rays");
  } else {
    throw Error(ErrorKind::InvalidInput, "unbounded: expected {polygon} or {rays}");
  }
  d.canonical_tag = tag;
  return d;
}

DoublyConnectedDomain read_domain(const std::string& path) {
  return parse_domain_json(read_text(path));
}

std::string domain_to_json(const DoublyConnectedDomain& d) {
  json j;
  j["kind"] = "polygonal";
  if (d.canonical_tag) {
    json params = json::array({d.canonical_tag->p0});
    if (d.canonical_tag->kind != CanonicalRing::Kind::Grotzsch &&
        d.canonical_tag->kind != CanonicalRing::Kind::Teichmuller)
      params.push_back(d.canonical_tag->p1);
    j["canonical"] = {{"ring", ring_name(d.canonical_tag->kind)}, {"params", params}};
  }
  json bounded = json::array();
  for (complexd v : d.bounded.vertices) bounded.push_back(point_json(v));
  j["bounded"] = bounded;
  if (d.unbounded.kind == UnboundedDescriptor::Kind::PolygonExterior) {
    json poly = json::array();
    for (complexd v : d.unbounded.polygon.vertices) poly.push_back(point_json(v));
    j["unbounded"] = {{"polygon", poly}};
  } else {
    json rays = json::array();
    for (const Ray& r : d.unbounded.rays)
      rays.push_back({{"from", point_json(r.from)}, {"dir", point_json(r.dir)}});
    j["unbounded"] = {{"rays", rays}};
  }
  return j.dump(2) + "\n";
}

void write_domain(const DoublyConnectedDomain& d, const std::string& path) {
  write_text(path, domain_to_json(d));
}

std::string map_to_json(const RadialNitscheMap& m) {
  json j;
  j["type"] = "radial";
  j["r"] = m.r;
  j["R"] = m.R;
  j["rstar"] = m.rstar;
  j["Rstar"] = m.Rstar;
  j["a"] = m.a;
  j["b"] = m.b;
  return j.dump(2) + "\n";
}

std::string map_to_json(const PowerShearMap& m, const CanonicalRing& source_ring,
                        const CanonicalRing& target_ring) {
  json j;
  j["type"] = "power-shear";
  j["alpha"] = m.alpha;
  j["a"] = target_ring.p0;
  j["b"] = target_ring.p1;
  j["source_params"] = json::array({source_ring.p0, source_ring.p1});
  return j.dump(2) + "\n";
}

std::string map_to_json(const AnnulusHarmonicMap& m) {
  json j;
  j["type"] = "annulus-fourier";
  j["rho"] = m.rho;
  j["N"] = m.N;
  json A = json::array(), B = json::array();
  for (complexd c : m.A) A.push_back(point_json(c));
  for (complexd c : m.B) B.push_back(point_json(c));
  j["A"] = A;
  j["B"] = B;
  return j.dump(2) + "\n";
}

std::string map_to_json(const SCShearMap& m) {
  json j;
  j["type"] = "sc-shear";
  j["b"] = m.model.b;
  j["mu"] = m.model.mu;
  j["C"] = m.model.C;
  j["s_b"] = m.sc.s_b;
  j["t_b"] = m.sc.t_b;
  j["modulus"] = m.sc.modulus;
  j["s_prime"] = m.s_prime;
  j["t_prime"] = m.t_prime;
  return j.dump(2) + "\n";
}

LoadedMap parse_map_json(const std::string& text) {
  json j = try_parse(text);
  if (!j.is_object() || !j.contains("type"))
    throw Error(ErrorKind::InvalidInput, "map descriptor needs a type");
  const auto num = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_number())
      throw Error(ErrorKind::InvalidInput,
                  std::string("map descriptor needs numeric '") + key + "'");
    return j[key].get<double>();
  };

  LoadedMap out;
  out.type = j["type"].get<std::string>();
  if (out.type == "radial") {
    RadialNitscheMap m;
    m.r = num("r");
    m.R = num("R");
    m.rstar = num("rstar");
    m.Rstar = num("Rstar");
    m.a = num("a");
    m.b = num("b");
    out.model = model_of(m);
    out.source = realize_canonical(CanonicalRing::annulus(m.r, m.R));
    out.target = realize_canonical(CanonicalRing::annulus(m.rstar, m.Rstar));
    return out;
  }
  if (out.type == "power-shear") {
    PowerShearResult res = power_shear_map(num("a"), num("b"), num("alpha"));
    out.model = model_of(res.map);
    out.source = realize_canonical(res.source_ring);
    out.target = realize_canonical(res.target_ring);
    return out;
  }
  if (out.type == "annulus-fourier") {
    AnnulusHarmonicMap m;
    m.rho = num("rho");
    if (!j.contains("N") || !j["N"].is_number_integer())
      throw Error(ErrorKind::InvalidInput, "map descriptor needs integer 'N'");
    m.N = j["N"].get<int>();
    if (m.N < 0 || !j.contains("A") || !j.contains("B"))
      throw Error(ErrorKind::InvalidInput, "annulus-fourier needs N, A, B");
    m.A = point_list(j["A"], "A");
    m.B = point_list(j["B"], "B");
    if (m.A.size() != static_cast<size_t>(2 * m.N + 1) || m.B.size() != m.A.size())
      throw Error(ErrorKind::InvalidInput, "coefficient tables must have 2N+1 entries");
    out.model = model_of(m);
    out.source = realize_canonical(CanonicalRing::annulus(1.0, m.rho));
    return out;
  }
  if (out.type == "sc-shear") {
    const GbModel model = build_gb(num("b"));
    SCResult sc;
    sc.s_b = num("s_b");
    sc.t_b = num("t_b");
    sc.modulus =
        modulus_canonical(CanonicalRing::double_teich(sc.s_b, sc.t_b)).value;
    const SCShearMap m =
        assemble_shear_harmonic(model, sc, num("s_prime"), num("t_prime"));
    out.model = model_of(m);
    out.source = sc_source_domain(m);
    out.target = sc_target_domain(m);
    return out;
  }
  throw Error(ErrorKind::InvalidInput, "unknown map type '" + out.type + "'");
}

LoadedMap read_map(const std::string& path) { return parse_map_json(read_text(path)); }

std::string report_to_json(const MapVerificationReport& r) {
  json j;
  j["pass"] = r.pass;
  j["harmonicity_residual"] = r.harmonicity_residual;
  j["jacobian_margin"] = r.jacobian_margin;
  j["interior_margin"] = r.interior_margin;
  j["boundary_distance"] = r.boundary_distance;
  j["winding_degree"] = r.winding_degree;
  j["boundary_degenerate"] = r.boundary_degenerate;
  j["skipped_fraction"] = r.skipped_fraction;
  j["min_abs_fprime"] = r.min_abs_fprime;
  j["reasons"] = r.reasons;
  return j.dump(2) + "\n";
}

std::string modulus_to_json(const ModulusEstimate& e) {
  json j;
  j["value"] = e.value;
  j["error"] = e.error;
  j["method"] = e.method;
  return j.dump(2) + "\n";
}

std::string csv_table(const std::string& schema,
                      const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows) {
  std::ostringstream out;
  out << "#schema=" << schema << "\n";
  for (size_t i = 0; i < columns.size(); ++i)
    out << (i ? "," : "") << columns[i];
  out << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << fmt17(row[i]);
    out << "\n";
  }
  return out.str();
}

std::string svg_domain(const DoublyConnectedDomain& d) {
  SvgSheet sheet;
  const double extent = domain_extent(d);
  const auto& bv = d.bounded.vertices;
  if (bv.size() == 1) {
    sheet.dot(bv[0], "#a33");
  } else {
    sheet.polyline(bv, "#a33", bv.size() > 2);
  }
  if (d.unbounded.kind == UnboundedDescriptor::Kind::PolygonExterior) {
    sheet.polyline(d.unbounded.polygon.vertices, "#339", true);
  } else {
    for (const Ray& r : d.unbounded.rays) {
      const complexd dir = r.dir / std::abs(r.dir);
      sheet.polyline({r.from, r.from + 3.0 * extent * dir}, "#339", false);
    }
  }
  return sheet.finish();
}

std::string svg_image_grid(const HarmonicMapModel& m,
                           const DoublyConnectedDomain& source) {
  SvgSheet sheet;
  const auto safe_eval = [&](complexd z, complexd& out) {
    out = m.eval(z);
    return std::isfinite(out.real()) && std::isfinite(out.imag());
  };

  if (source.unbounded.kind == UnboundedDescriptor::Kind::PolygonExterior) {
    // Polar grid between the hole and the rim.
    double r = 0.0, R = 1e300;
    for (complexd v : source.bounded.vertices) r = std::max(r, std::abs(v));
    for (complexd v : source.unbounded.polygon.vertices)
      R = std::min(R, std::abs(v));
    if (!(R > r)) return sheet.finish();
    for (int k = 0; k < 12; ++k) {
      const double th = 2.0 * 3.14159265358979323846 * k / 12;
      std::vector<complexd> line;
      for (int i = 0; i <= 64; ++i) {
        const double rad = r + (R - r) * i / 64.0;
        complexd w;
        if (safe_eval(std::polar(rad, th), w)) line.push_back(w);
      }
      sheet.polyline(line, "#575", false);
    }
    for (int c = 0; c <= 6; ++c) {
      const double rad = r + (R - r) * c / 6.0;
      std::vector<complexd> line;
      for (int i = 0; i <= 128; ++i) {
        const double th = 2.0 * 3.14159265358979323846 * i / 128.0;
        complexd w;
        if (safe_eval(std::polar(rad, th), w)) line.push_back(w);
      }
      sheet.polyline(line, "#357", false);
    }
    return sheet.finish();
  }

  // Slit complement: Cartesian grid lines, broken near the slits.
  const double e = 1.5 * domain_extent(source);
  const int lines = 13, samples = 128;
  for (int axis = 0; axis < 2; ++axis) {
    for (int k = 0; k < lines; ++k) {
      const double c = -e + 2.0 * e * k / (lines - 1);
      std::vector<complexd> run;
      for (int i = 0; i <= samples; ++i) {
        const double s = -e + 2.0 * e * i / samples;
        const complexd z = axis ? complexd(c, s) : complexd(s, c);
        complexd w;
        if (slit_distance(source, z) > 2e-3 && safe_eval(z, w)) {
          run.push_back(w);
        } else {
          sheet.polyline(run, axis ? "#357" : "#575", false);
          run.clear();
        }
      }
      sheet.polyline(run, axis ? "#357" : "#575", false);
    }
  }
  return sheet.finish();
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidInput, "cannot write '" + path + "'");
  out << text;
}

}  // namespace ringmod
