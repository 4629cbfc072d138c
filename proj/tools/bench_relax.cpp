#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "ringmod/canonical.hpp"
#include "ringmod/condenser.hpp"
#include "ringmod/geometry.hpp"
#include "ringmod/laplace_grid.hpp"

using namespace ringmod;

namespace {

template <typename F>
double timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void reset(Grid& g) {
  for (size_t k = 0; k < g.u.size(); ++k) g.u[k] = 0.0;
}

}  // namespace

int main(int argc, char** argv) {
  int sizes[] = {128, 256, 512};
  int nsizes = 3;
  if (argc > 1) {
    sizes[0] = std::atoi(argv[1]);
    nsizes = 1;
  }

  const DoublyConnectedDomain ring =
      realize_canonical(CanonicalRing::annulus(1.0, 2.0));

  std::printf("threads = %d\n", relax_threads());
  std::printf("%6s %8s %12s %12s %9s %9s %7s\n", "n", "sweeps", "parallel[s]",
              "serial[s]", "speedup", "bitwise", "energy");

  bool all_ok = true;
  for (int si = 0; si < nsizes; ++si) {
    const int n = sizes[si];
    Grid base = condenser_grid(ring, n, 4.0);
    Grid par = base, ser = base;
    reset(par);
    reset(ser);

    int sweeps_par = 0, sweeps_ser = 0;
    const double tp = timed([&] { sweeps_par = sor_solve(par); });
    const double ts = timed([&] { sweeps_ser = sor_solve_ref(ser); });

    const bool bitwise =
        sweeps_par == sweeps_ser &&
        std::memcmp(par.u.data(), ser.u.data(), par.u.size() * sizeof(double)) == 0;
    const double ep = dirichlet_energy(par);
    const double es = dirichlet_energy_ref(ser);
    const bool energy_eq = ep == es;
    all_ok = all_ok && bitwise && energy_eq;

    std::printf("%6d %8d %12.4f %12.4f %9.2f %9s %7s\n", n, sweeps_par, tp, ts,
                ts / tp, bitwise ? "yes" : "NO", energy_eq ? "yes" : "NO");
  }
  return all_ok ? 0 : 1;
}
