#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ringmod/canonical.hpp"
#include "ringmod/geometry.hpp"
#include "ringmod/harmonic.hpp"
#include "ringmod/sc_construction.hpp"

namespace ringmod {

// Domain JSON:
// {"kind":"polygonal"|"canonical",
//  "canonical":{"ring":"annulus|grotzsch|teichmuller|double_teichmuller|
//               double_teichmuller_unit","params":[...]},
//  "bounded":[[x,y],...],
//  "unbounded":{"polygon":[[x,y],...]} | {"rays":[{"from":[x,y],"dir":[dx,dy]},...]}}
DoublyConnectedDomain parse_domain_json(const std::string& text);
DoublyConnectedDomain read_domain(const std::string& path);
std::string domain_to_json(const DoublyConnectedDomain& d);
void write_domain(const DoublyConnectedDomain& d, const std::string& path);

std::string ring_name(CanonicalRing::Kind kind);
std::optional<CanonicalRing> ring_from_json_fields(const std::string& name,
                                                   const std::vector<double>& params);

// Map descriptor JSON: {"type": ..., parameters...}.  Fourier maps carry the
// full coefficient table; the others are closed-form and carry parameters only.
std::string map_to_json(const RadialNitscheMap& m);
std::string map_to_json(const PowerShearMap& m, const CanonicalRing& source_ring,
                        const CanonicalRing& target_ring);
std::string map_to_json(const AnnulusHarmonicMap& m);
std::string map_to_json(const SCShearMap& m);

// A map reconstructed from its descriptor, with the domains implied by its
// parameters when the descriptor pins them (all types except annulus-fourier
// targets, which depend on the boundary data used at construction time).
struct LoadedMap {
  std::string type;
  HarmonicMapModel model;
  std::optional<DoublyConnectedDomain> source;
  std::optional<DoublyConnectedDomain> target;
};
LoadedMap parse_map_json(const std::string& text);
LoadedMap read_map(const std::string& path);

std::string report_to_json(const MapVerificationReport& r);
std::string modulus_to_json(const ModulusEstimate& e);

// One CSV table: "#schema=<tag>" line, then a header row, then data rows.
std::string csv_table(const std::string& schema,
                      const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows);

// Static figures.
std::string svg_domain(const DoublyConnectedDomain& d);
std::string svg_image_grid(const HarmonicMapModel& m, const DoublyConnectedDomain& source);

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

}  // namespace ringmod
