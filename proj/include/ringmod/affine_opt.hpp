#pragma once

#include <optional>
#include <vector>

#include "ringmod/canonical.hpp"
#include "ringmod/condenser.hpp"
#include "ringmod/geometry.hpp"

namespace ringmod {

struct AffineOptions {
  int theta_grid = 36;
  int alpha_grid = 24;
  double alpha_floor = 1e-3;
  int refine_iters = 200;
  double simplex_tol = 1e-6;
  CondenserOptions sweep_cond{128, 2, 4.0};   // grid-sweep ranking
  CondenserOptions refine_cond{256, 2, 4.0};  // local refinement
  CondenserOptions final_cond{512, 3, 4.0};   // reported value
};

struct TracePoint {
  double theta = 0.0;
  double alpha = 1.0;
  double modulus = 0.0;
};

enum class Attained { Attained, BoundaryLimit, Inconclusive };
const char* attained_name(Attained a);

struct AffineModulusResult {
  ModulusEstimate value;
  std::optional<ShearNormalForm> maximizer;
  Attained attained_flag = Attained::Inconclusive;
  std::vector<TracePoint> trace;
};

// Modulus of f_theta_alpha(domain): closed form when the complement lies on a
// line (the affine-invariant families), condenser otherwise.
ModulusEstimate shear_objective(const DoublyConnectedDomain& domain, double theta,
                                double alpha, const CondenserOptions& cond = {});

// sup over the shear family by coarse sweep + Nelder-Mead refinement.
AffineModulusResult affine_modulus(const DoublyConnectedDomain& domain,
                                   const AffineOptions& options = {});

struct AttainabilityReport {
  bool sufficient = false;
  std::optional<int> failed_condition;  // 1 = zero width, 2 = projection gap
  std::optional<double> witness_theta;
};
// Sufficient (not necessary) conditions for the sup to be attained:
// the bounded component is not a segment, and its projection meets the
// unbounded component's projection in every direction.
AttainabilityReport attainability_sufficient(const DoublyConnectedDomain& domain);

enum class AffineInvarianceClass {
  Degenerate,
  TeichmullerAffine,
  DoubleTeichmullerAffine,
  NotInvariant
};
const char* invariance_class_name(AffineInvarianceClass c);
AffineInvarianceClass classify_affine_invariance(const DoublyConnectedDomain& domain);

// Certified lower bound for the modulus-ratio obstruction function:
// t = coth(pi^2/(2 tau)), bound = max(0, (log t - log(1+log t))/(2+log t)).
double phi_lower(double tau);

struct ObstructionReport {
  bool obstructed = false;
  double ratio = 0.0;
  double threshold = 0.0;
};
// obstructed certifies NO harmonic homeomorphism exists; false is inconclusive.
// Error bars widen the comparison so noise never certifies.
ObstructionReport necessary_obstruction(double mod_omega, double mod_aff_target,
                                        double err_omega = 0.0, double err_target = 0.0);

// Upper bound Mod T(d_image / width(bounded)) for the sheared domain's modulus.
double degeneration_rhs(const DoublyConnectedDomain& domain, double theta, double alpha);

// Recover a slit-family ring description from an untagged collinear domain.
std::optional<CanonicalRing> canonical_from_collinear(const DoublyConnectedDomain& domain);

}  // namespace ringmod
