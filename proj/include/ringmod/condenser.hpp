#pragma once

#include <vector>

#include "ringmod/canonical.hpp"
#include "ringmod/geometry.hpp"
#include "ringmod/laplace_grid.hpp"

namespace ringmod {

struct CondenserOptions {
  int base_resolution = 512;  // finest grid, cells per side
  int levels = 3;             // grids at base, base/2, base/4, ...
  double clip_factor = 4.0;   // clip radius as a multiple of domain extent
};

struct LevelRecord {
  int cells = 0;
  double h = 0.0;
  double value = 0.0;
};

struct CondenserResult {
  ModulusEstimate estimate;
  std::vector<LevelRecord> per_level;
};

// Conformal modulus by condenser capacity: 5-point Laplace solve between the
// two complement components, Mod = 2*pi / (discrete Dirichlet energy),
// Richardson-extrapolated across levels.  Degenerate domains return the
// +infinity sentinel.
ModulusEstimate modulus_numeric(const DoublyConnectedDomain& domain,
                                const CondenserOptions& opts = {});
CondenserResult modulus_numeric_detailed(const DoublyConnectedDomain& domain,
                                         const CondenserOptions& opts = {});

struct ExtremalBoundReport {
  bool holds = false;
  double lhs = 0.0;  // Mod of the domain
  double rhs = 0.0;  // Mod T(d/d0)
  double lhs_error = 0.0;
};

// Checks Mod(domain) <= Mod T(d/d0), d = component separation, d0 = diameter
// of the bounded component.
ExtremalBoundReport verify_extremal_bound(const DoublyConnectedDomain& domain,
                                          const CondenserOptions& opts = {});

// One rasterized and solved level, exposed for potential-field tests.
Grid condenser_grid(const DoublyConnectedDomain& domain, int cells,
                    double clip_factor = 4.0);

}  // namespace ringmod
