#pragma once

#include <utility>

#include "dcs/grid.hpp"
#include "dcs/initial_data.hpp"

namespace dcs {

// Regularization constants: gamma0 floors the kappa_x denominator at gamma0/2,
// m0 is the gradient bound feeding the truncation threshold 2*m0.
struct RegParams {
  double gamma0 = 0.5;
  double m0 = 1.0;
};

// One time level of the coupled pair.
struct StatePair {
  ScalarField rho;
  ScalarField kappa;
  double time = 0.0;
};

// Gradient pair theta_pm = (kappa_x +- rho_x) / 2.
struct ThetaPair {
  ScalarField theta_plus;
  ScalarField theta_minus;
};

// Odd clamp: y on |y| < zeta, sign(y)*zeta outside.
double truncate(double y, double zeta);

// (1+eps) rho_xx - tau kappa_x
ScalarField rhs_rho(const StatePair& state, const ModelParams& params);

// eps kappa_xx + rho_xx * truncate(rho_x, 2 m0) / (gamma0/2 + max(kappa_x - gamma0/2, 0))
//   - tau rho_x
ScalarField rhs_kappa_regularized(const StatePair& state, const ModelParams& params,
                                  const RegParams& reg);

// eps kappa_xx + rho_x rho_xx / kappa_x - tau rho_x; throws SingularDenominator
// when kappa_x <= 0 at some node.
ScalarField rhs_kappa_exact(const StatePair& state, const ModelParams& params);

ThetaPair to_theta(const StatePair& state);

// Discrete residual of the divergence-form gradient system,
//   theta_pm_t = eps theta_pm_xx +- d/dx[((theta_plus_x - theta_minus_x)
//                / (theta_plus + theta_minus) - tau) theta_pm],
// with backward time difference (theta - theta_prev)/dt and grid stencils for
// every spatial derivative.  Throws SingularDenominator when
// theta_plus + theta_minus <= 0 at some node.
std::pair<ScalarField, ScalarField> residual_theta(const ThetaPair& theta,
                                                   const ThetaPair& theta_prev, double dt,
                                                   const ModelParams& params);

}  // namespace dcs
