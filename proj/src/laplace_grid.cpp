#include "ringmod/laplace_grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ringmod/errors.hpp"

namespace ringmod {

void Grid::init(int nodes, double spacing, double ox, double oy) {
  n = nodes;
  h = spacing;
  x0 = ox;
  y0 = oy;
  label.assign(static_cast<size_t>(n) * n, kInterior);
  u.assign(static_cast<size_t>(n) * n, 0.0);
}

int relax_threads() {
  if (const char* env = std::getenv("RINGMOD_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_grid(const Grid& g) {
  int n = g.n;
  if (n < 3) throw Error(ErrorKind::InvalidInput, "relaxation grid too small");
  for (int i = 0; i < n; ++i) {
    if (g.label[g.idx(i, 0)] == kInterior || g.label[g.idx(i, n - 1)] == kInterior ||
        g.label[g.idx(0, i)] == kInterior || g.label[g.idx(n - 1, i)] == kInterior)
      throw Error(ErrorKind::InvalidInput, "relaxation grid has unlabeled edge nodes");
  }
}

void pin_plates(Grid& g) {
  size_t total = g.u.size();
  for (size_t k = 0; k < total; ++k) {
    if (g.label[k] == kPlate0) g.u[k] = 0.0;
    else if (g.label[k] == kPlate1) g.u[k] = 1.0;
  }
}

void sweep_color(Grid& g, int color, double omega, int nthreads) {
  int n = g.n;
  double* u = g.u.data();
  const std::uint8_t* lab = g.label.data();
#pragma omp parallel for schedule(static) num_threads(nthreads)
  for (int j = 1; j < n - 1; ++j) {
    int i0 = 1 + (((1 + j) & 1) ^ color);
    for (int i = i0; i < n - 1; i += 2) {
      int k = j * n + i;
      if (lab[k] != kInterior) continue;
      double s = u[k - 1] + u[k + 1] + u[k - n] + u[k + n];
      u[k] += omega * 0.25 * (s - 4.0 * u[k]);
    }
  }
}

double max_residual(const Grid& g, int nthreads) {
  int n = g.n;
  const double* u = g.u.data();
  const std::uint8_t* lab = g.label.data();
  double worst = 0.0;
#pragma omp parallel for schedule(static) num_threads(nthreads) reduction(max : worst)
  for (int j = 1; j < n - 1; ++j) {
    double row = 0.0;
    for (int i = 1; i < n - 1; ++i) {
      int k = j * n + i;
      if (lab[k] != kInterior) continue;
      double r = std::abs(u[k - 1] + u[k + 1] + u[k - n] + u[k + n] - 4.0 * u[k]);
      if (r > row) row = r;
    }
    if (row > worst) worst = row;
  }
  return worst;
}

}  // namespace

int sor_solve(Grid& grid, double tol, int max_sweep_factor) {
  check_grid(grid);
  pin_plates(grid);
  int n = grid.n;
  int nthreads = relax_threads();
  double omega = 2.0 / (1.0 + std::sin(kPi / n));
  long max_sweeps = static_cast<long>(max_sweep_factor) * n;
  for (long sweep = 1; sweep <= max_sweeps; ++sweep) {
    sweep_color(grid, 0, omega, nthreads);
    sweep_color(grid, 1, omega, nthreads);
    if (sweep % 32 == 0 || sweep == max_sweeps) {
      if (max_residual(grid, nthreads) < tol) return static_cast<int>(sweep);
    }
  }
  throw Error(ErrorKind::SolverFailure, "relaxation did not reach the residual target");
}

int sor_solve_ref(Grid& grid, double tol, int max_sweep_factor) {
  check_grid(grid);
  pin_plates(grid);
  int n = grid.n;
  double omega = 2.0 / (1.0 + std::sin(kPi / n));
  double* u = grid.u.data();
  const std::uint8_t* lab = grid.label.data();
  long max_sweeps = static_cast<long>(max_sweep_factor) * n;
  for (long sweep = 1; sweep <= max_sweeps; ++sweep) {
    for (int color = 0; color < 2; ++color) {
      for (int j = 1; j < n - 1; ++j) {
        for (int i = 1; i < n - 1; ++i) {
          if (((i + j) & 1) != color) continue;
          int k = j * n + i;
          if (lab[k] != kInterior) continue;
          double s = u[k - 1] + u[k + 1] + u[k - n] + u[k + n];
          u[k] += omega * 0.25 * (s - 4.0 * u[k]);
        }
      }
    }
    if (sweep % 32 == 0 || sweep == max_sweeps) {
      double worst = 0.0;
      for (int j = 1; j < n - 1; ++j) {
        for (int i = 1; i < n - 1; ++i) {
          int k = j * n + i;
          if (lab[k] != kInterior) continue;
          double r = std::abs(u[k - 1] + u[k + 1] + u[k - n] + u[k + n] - 4.0 * u[k]);
          if (r > worst) worst = r;
        }
      }
      if (worst < tol) return static_cast<int>(sweep);
    }
  }
  throw Error(ErrorKind::SolverFailure, "relaxation did not reach the residual target");
}

// Row partials are accumulated serially in row order so the result does not
// depend on the thread count.
double dirichlet_energy(const Grid& grid) {
  int n = grid.n;
  const double* u = grid.u.data();
  std::vector<double> row_sum(n, 0.0);
  int nthreads = relax_threads();
#pragma omp parallel for schedule(static) num_threads(nthreads)
  for (int j = 0; j < n; ++j) {
    double acc = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
      double d = u[j * n + i + 1] - u[j * n + i];
      acc += d * d;
    }
    if (j + 1 < n) {
      for (int i = 0; i < n; ++i) {
        double d = u[(j + 1) * n + i] - u[j * n + i];
        acc += d * d;
      }
    }
    row_sum[j] = acc;
  }
  double total = 0.0;
  for (int j = 0; j < n; ++j) total += row_sum[j];
  return total;
}

double dirichlet_energy_ref(const Grid& grid) {
  int n = grid.n;
  const double* u = grid.u.data();
  double total = 0.0;
  for (int j = 0; j < n; ++j) {
    double acc = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
      double d = u[j * n + i + 1] - u[j * n + i];
      acc += d * d;
    }
    if (j + 1 < n) {
      for (int i = 0; i < n; ++i) {
        double d = u[(j + 1) * n + i] - u[j * n + i];
        acc += d * d;
      }
    }
    total += acc;
  }
  return total;
}

void prolong_bilinear(const Grid& coarse, Grid& fine) {
  int cn = coarse.n;
  for (int j = 0; j < fine.n; ++j) {
    for (int i = 0; i < fine.n; ++i) {
      int k = fine.idx(i, j);
      if (fine.label[k] == kPlate0) {
        fine.u[k] = 0.0;
        continue;
      }
      if (fine.label[k] == kPlate1) {
        fine.u[k] = 1.0;
        continue;
      }
      double gx = (fine.node_x(i) - coarse.x0) / coarse.h;
      double gy = (fine.node_y(j) - coarse.y0) / coarse.h;
      int ci = std::clamp(static_cast<int>(std::floor(gx)), 0, cn - 2);
      int cj = std::clamp(static_cast<int>(std::floor(gy)), 0, cn - 2);
      double fx = std::clamp(gx - ci, 0.0, 1.0);
      double fy = std::clamp(gy - cj, 0.0, 1.0);
      double v00 = coarse.u[coarse.idx(ci, cj)];
      double v10 = coarse.u[coarse.idx(ci + 1, cj)];
      double v01 = coarse.u[coarse.idx(ci, cj + 1)];
      double v11 = coarse.u[coarse.idx(ci + 1, cj + 1)];
      fine.u[k] = (1 - fx) * (1 - fy) * v00 + fx * (1 - fy) * v10 +
                  (1 - fx) * fy * v01 + fx * fy * v11;
    }
  }
}

}  // namespace ringmod
