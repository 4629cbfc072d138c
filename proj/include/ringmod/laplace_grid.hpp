#pragma once

#include <cstdint>
#include <vector>

namespace ringmod {

// Node labels for the condenser grid.
inline constexpr std::uint8_t kInterior = 0;
inline constexpr std::uint8_t kPlate0 = 1;  // potential 0
inline constexpr std::uint8_t kPlate1 = 2;  // potential 1

struct Grid {
  int n = 0;       // nodes per side
  double h = 0.0;  // spacing
  double x0 = 0.0, y0 = 0.0;
  std::vector<std::uint8_t> label;
  std::vector<double> u;

  int idx(int i, int j) const { return j * n + i; }
  double node_x(int i) const { return x0 + i * h; }
  double node_y(int j) const { return y0 + j * h; }
  void init(int nodes, double spacing, double ox, double oy);
};

// Number of relaxation threads: RINGMOD_THREADS if set, else the OpenMP default.
int relax_threads();

// Red-black SOR to max 5-point residual < tol. Returns sweeps used.
// Results are bitwise identical for any thread count and to sor_solve_ref.
int sor_solve(Grid& grid, double tol = 1e-10, int max_sweep_factor = 40);
int sor_solve_ref(Grid& grid, double tol = 1e-10, int max_sweep_factor = 40);

// Sum of (u_a - u_b)^2 over all grid edges (h-free in two dimensions).
double dirichlet_energy(const Grid& grid);
double dirichlet_energy_ref(const Grid& grid);

// Bilinear sample of the coarse solution as the fine grid's starting guess.
void prolong_bilinear(const Grid& coarse, Grid& fine);

}  // namespace ringmod
