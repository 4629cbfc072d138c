#include "ringmod/quadrature.hpp"

#include <cmath>

#include "ringmod/errors.hpp"

namespace ringmod {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kNewtonMax = 80;
constexpr double kNewtonTol = 1e-15;

}  // namespace

void jacobi_poly(int n, double alpha, double beta, double x, double* p, double* dp) {
  if (n == 0) {
    if (p) *p = 1.0;
    if (dp) *dp = 0.0;
    return;
  }
  double pm2 = 1.0;
  double pm1 = 0.5 * (alpha - beta + (alpha + beta + 2.0) * x);
  double pk = pm1;
  double apb = alpha + beta;
  for (int k = 2; k <= n; ++k) {
    double a1 = 2.0 * k * (k + apb) * (2.0 * k + apb - 2.0);
    double a2 = (2.0 * k + apb - 1.0) * (alpha * alpha - beta * beta);
    double a3 = (2.0 * k + apb - 2.0) * (2.0 * k + apb - 1.0) * (2.0 * k + apb);
    double a4 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * (2.0 * k + apb);
    pk = ((a2 + a3 * x) * pm1 - a4 * pm2) / a1;
    pm2 = pm1;
    pm1 = pk;
  }
  if (p) *p = pk;
  if (dp) {
    double b1 = n * (alpha - beta);
    double b2 = n * (2.0 * n + apb);
    double b3 = 2.0 * (n + alpha) * (n + beta);
    double b4 = 2.0 * n + apb;
    *dp = ((b1 - b2 * x) * pk + b3 * pm2) / (b4 * (1.0 - x * x));
  }
}

QuadRule gauss_jacobi(int n, double alpha, double beta) {
  if (n < 1 || alpha <= -1.0 || beta <= -1.0)
    throw Error(ErrorKind::InvalidInput, "gauss_jacobi: need n >= 1, alpha, beta > -1");
  QuadRule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  double dth = kPi / (2.0 * n);
  double rlast = 0.0;
  for (int k = 0; k < n; ++k) {
    double r = -std::cos((2.0 * k + 1.0) * dth);
    if (k) r = 0.5 * (r + rlast);
    for (int it = 0; it < kNewtonMax; ++it) {
      double p, dp;
      jacobi_poly(n, alpha, beta, r, &p, &dp);
      double sum = 0.0;
      for (int i = 0; i < k; ++i) sum += 1.0 / (r - rule.x[i]);
      double delta = -p / (dp - sum * p);
      r += delta;
      if (std::abs(delta) < kNewtonTol) break;
    }
    rule.x[k] = r;
    rlast = r;
  }
  double lfac = (alpha + beta + 1.0) * std::log(2.0) + std::lgamma(alpha + n + 1.0) +
                std::lgamma(beta + n + 1.0) - std::lgamma(n + 1.0) -
                std::lgamma(alpha + beta + n + 1.0);
  double fac = std::exp(lfac);
  for (int k = 0; k < n; ++k) {
    double dp;
    jacobi_poly(n, alpha, beta, rule.x[k], nullptr, &dp);
    rule.w[k] = fac / (dp * dp * (1.0 - rule.x[k] * rule.x[k]));
  }
  return rule;
}

QuadRule gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

namespace {

// 15-point Gauss-Legendre base rule, built once.
const QuadRule& gl15() {
  static const QuadRule rule = gauss_legendre(15);
  return rule;
}

std::complex<double> gl_apply(const std::function<std::complex<double>(double)>& f,
                              double a, double b) {
  const QuadRule& r = gl15();
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  std::complex<double> acc = 0.0;
  for (size_t i = 0; i < r.x.size(); ++i) acc += r.w[i] * f(mid + half * r.x[i]);
  return half * acc;
}

std::complex<double> integrate_rec(const std::function<std::complex<double>(double)>& f,
                                   double a, double b, std::complex<double> whole,
                                   double tol, int depth) {
  double mid = 0.5 * (a + b);
  std::complex<double> left = gl_apply(f, a, mid);
  std::complex<double> right = gl_apply(f, mid, b);
  std::complex<double> delta = left + right - whole;
  if (std::abs(delta) <= tol || depth <= 0) return left + right;
  return integrate_rec(f, a, mid, left, 0.5 * tol, depth - 1) +
         integrate_rec(f, mid, b, right, 0.5 * tol, depth - 1);
}

}  // namespace

std::complex<double> integrate(const std::function<std::complex<double>(double)>& f,
                               double a, double b, double tol, int max_depth) {
  if (a == b) return 0.0;
  return integrate_rec(f, a, b, gl_apply(f, a, b), tol, max_depth);
}

}  // namespace ringmod
