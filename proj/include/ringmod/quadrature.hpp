#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace ringmod {

struct QuadRule {
  std::vector<double> x;
  std::vector<double> w;
};

// Nodes and weights on [-1, 1].
QuadRule gauss_legendre(int n);

// Weight (1-x)^alpha (1+x)^beta on [-1, 1]; alpha, beta > -1.
QuadRule gauss_jacobi(int n, double alpha, double beta);

// Jacobi polynomial P_n^{(alpha,beta)} and its derivative at x.
void jacobi_poly(int n, double alpha, double beta, double x, double* p, double* dp);

// Adaptive Gauss-Legendre on [a, b] for a smooth complex integrand.
std::complex<double> integrate(const std::function<std::complex<double>(double)>& f,
                               double a, double b, double tol = 1e-13,
                               int max_depth = 36);

}  // namespace ringmod
