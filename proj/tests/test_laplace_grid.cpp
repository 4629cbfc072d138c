#include <cmath>
#include <cstdlib>
#include <cstring>

#include "doctest.h"
#include "ringmod/condenser.hpp"
#include "ringmod/errors.hpp"
#include "ringmod/geometry.hpp"
#include "ringmod/laplace_grid.hpp"

using namespace ringmod;

namespace {
const double kPi = 3.14159265358979323846;

Grid annulus_grid(int cells) {
  return condenser_grid(realize_canonical(CanonicalRing::annulus(1.0, 2.0)), cells);
}
}  // namespace

TEST_SUITE("laplace_grid") {
  TEST_CASE("init and node coordinates") {
    Grid g;
    g.init(5, 0.5, -1.0, 2.0);
    CHECK(g.n == 5);
    CHECK(g.label.size() == 25);
    CHECK(g.u.size() == 25);
    CHECK(g.node_x(0) == doctest::Approx(-1.0));
    CHECK(g.node_x(4) == doctest::Approx(1.0));
    CHECK(g.node_y(2) == doctest::Approx(3.0));
    CHECK(g.idx(1, 2) == 11);
    CHECK(g.label[7] == kInterior);
  }

  TEST_CASE("unlabeled frame is rejected") {
    Grid g;
    g.init(8, 1.0, 0.0, 0.0);
    CHECK_THROWS_AS(sor_solve(g), Error);
    try {
      Grid g2;
      g2.init(8, 1.0, 0.0, 0.0);
      sor_solve(g2);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::InvalidInput);
    }
  }

  TEST_CASE("solver reaches the residual target") {
    Grid g = annulus_grid(64);
    int sweeps = sor_solve(g);
    CHECK(sweeps > 0);
    // Direct restatement of the stopping criterion.
    double worst = 0.0;
    for (int j = 1; j < g.n - 1; ++j)
      for (int i = 1; i < g.n - 1; ++i) {
        int k = g.idx(i, j);
        if (g.label[k] != kInterior) continue;
        worst = std::max(worst, std::abs(g.u[k - 1] + g.u[k + 1] + g.u[k - g.n] +
                                         g.u[k + g.n] - 4.0 * g.u[k]));
      }
    CHECK(worst < 1e-10);
    // Plates stay pinned and the solution stays in [0, 1].
    for (size_t k = 0; k < g.u.size(); ++k) {
      if (g.label[k] == kPlate0) CHECK(g.u[k] == 0.0);
      if (g.label[k] == kPlate1) CHECK(g.u[k] == 1.0);
      CHECK(g.u[k] >= 0.0);
      CHECK(g.u[k] <= 1.0);
    }
  }

  TEST_CASE("parallel and reference solvers agree bitwise") {
    Grid a = annulus_grid(96);
    Grid b = a;
    setenv("RINGMOD_THREADS", "3", 1);
    int sa = sor_solve(a);
    unsetenv("RINGMOD_THREADS");
    int sb = sor_solve_ref(b);
    CHECK(sa == sb);
    REQUIRE(a.u.size() == b.u.size());
    CHECK(std::memcmp(a.u.data(), b.u.data(), a.u.size() * sizeof(double)) == 0);
    CHECK(dirichlet_energy(a) == dirichlet_energy_ref(b));
  }

  TEST_CASE("relax_threads honors the environment") {
    setenv("RINGMOD_THREADS", "3", 1);
    CHECK(relax_threads() == 3);
    setenv("RINGMOD_THREADS", "0", 1);  // invalid: fall through to the default
    CHECK(relax_threads() >= 1);
    unsetenv("RINGMOD_THREADS");
    CHECK(relax_threads() >= 1);
  }

  TEST_CASE("dirichlet_energy hand value") {
    Grid g;
    g.init(3, 1.0, 0.0, 0.0);
    // u = x on a 3x3 grid: 6 horizontal edges each d=1, 6 vertical edges d=0.
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 3; ++i) g.u[g.idx(i, j)] = i;
    CHECK(dirichlet_energy(g) == doctest::Approx(6.0));
    CHECK(dirichlet_energy_ref(g) == doctest::Approx(6.0));
  }

  TEST_CASE("dirichlet_energy matches reference on irregular data") {
    Grid g;
    g.init(17, 0.25, -2.0, -2.0);
    unsigned s = 123456789;
    for (size_t k = 0; k < g.u.size(); ++k) {
      s = s * 1664525u + 1013904223u;
      g.u[k] = (s >> 8) * (1.0 / (1 << 24));
    }
    CHECK(dirichlet_energy(g) == dirichlet_energy_ref(g));
  }

  TEST_CASE("annulus capacity approximates the continuum") {
    Grid g = annulus_grid(128);
    sor_solve(g);
    double cap = dirichlet_energy(g);
    double want = 2.0 * kPi / std::log(2.0);
    CHECK(std::abs(cap - want) / want < 0.05);
  }

  TEST_CASE("prolong_bilinear reproduces bilinear fields") {
    Grid coarse;
    coarse.init(5, 0.5, -1.0, -1.0);
    auto f = [](double x, double y) { return 2.0 + 3.0 * x - y + 0.7 * x * y; };
    for (int j = 0; j < 5; ++j)
      for (int i = 0; i < 5; ++i)
        coarse.u[coarse.idx(i, j)] = f(coarse.node_x(i), coarse.node_y(j));
    Grid fine;
    fine.init(9, 0.25, -1.0, -1.0);
    fine.label[fine.idx(3, 4)] = kPlate0;
    fine.label[fine.idx(5, 4)] = kPlate1;
    prolong_bilinear(coarse, fine);
    for (int j = 0; j < 9; ++j)
      for (int i = 0; i < 9; ++i) {
        int k = fine.idx(i, j);
        if (fine.label[k] == kPlate0) {
          CHECK(fine.u[k] == 0.0);
        } else if (fine.label[k] == kPlate1) {
          CHECK(fine.u[k] == 1.0);
        } else {
          CHECK(fine.u[k] ==
                doctest::Approx(f(fine.node_x(i), fine.node_y(j))).epsilon(1e-13));
        }
      }
  }

  TEST_CASE("prolongation accelerates the fine solve") {
    // condenser_grid returns a solved grid; reset the interior so the cold
    // run measures a genuine from-scratch solve.
    Grid cold = annulus_grid(96);
    for (size_t k = 0; k < cold.u.size(); ++k)
      if (cold.label[k] == kInterior) cold.u[k] = 0.0;
    Grid warm = cold;
    Grid coarse = annulus_grid(48);
    prolong_bilinear(coarse, warm);
    int cold_sweeps = sor_solve(cold);
    int warm_sweeps = sor_solve(warm);
    CHECK(warm_sweeps <= cold_sweeps);
  }
}
