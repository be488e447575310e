#pragma once

#include <functional>

#include "dcs/grid.hpp"

namespace dcs {

// Physical parameters of the coupled system: diffusion eps > 0, drift tau.
struct ModelParams {
  double epsilon = 1.0;
  double tau = 0.0;
};

// Closed-form spatial profile with its first two derivatives.  Carried along
// with the sampled fields so endpoint compatibility can be checked as an
// algebraic identity instead of through stencil truncation error.
struct AnalyticProfile {
  std::function<double(double)> value;
  std::function<double(double)> d1;
  std::function<double(double)> d2;
};

struct InitialData {
  ScalarField rho0;
  ScalarField kappa0;
  double gamma0 = 0.0;  // in (0,1); floor parameter for the gradient margin
  AnalyticProfile rho;
  AnalyticProfile kappa;
};

// Endpoint residuals of the compatibility conditions and boundary anchors,
// plus the nodal gradient margin.  Reported, never asserted.
struct CompatibilityReport {
  // (1+eps) * rho0_xx - tau * kappa0_x at x = 0 and x = 1
  double compat_rho_left = 0.0;
  double compat_rho_right = 0.0;
  // (1+eps) * kappa0_xx - tau * rho0_x at x = 0 and x = 1
  double compat_kappa_left = 0.0;
  double compat_kappa_right = 0.0;
  // boundary anchors rho0(0), rho0(1), kappa0(0), kappa0(1) - 1
  double bc_rho_left = 0.0;
  double bc_rho_right = 0.0;
  double bc_kappa_left = 0.0;
  double bc_kappa_right = 0.0;
  // min over nodes of kappa0_x - sqrt(gamma0^2 + rho0_x^2)
  double min_margin = 0.0;

  double max_compat_residual() const;
  double max_bc_residual() const;
};

// Sinusoid-plus-quintic family: rho0 = amplitude*sin(pi x) + q_rho,
// kappa0 = x + q_kappa, where the quintic corrections vanish together with
// their first derivatives at the endpoints and their endpoint curvatures are
// chosen (by a 4x4 linear solve) so both compatibility conditions hold
// exactly at x = 0 and x = 1.  Throws ConstraintInfeasible when the
// constructed pair violates kappa0_x > |rho0_x| at some node.
InitialData build_initial_data(const ModelParams& params, double amplitude, const Grid& grid);

// General entry point for closed-form data: samples the profiles, pins the
// boundary anchors (which must already hold to 1e-12), checks strict gradient
// dominance, and assigns gamma0 = 0.9 * min sqrt(kappa_x^2 - rho_x^2) clamped
// into (0,1).
InitialData make_initial_data(const AnalyticProfile& rho, const AnalyticProfile& kappa,
                              const Grid& grid);

CompatibilityReport verify_initial_data(const InitialData& data, const ModelParams& params);

// Absolute tolerance used when a caller wants to treat the report as a gate.
inline constexpr double kCompatibilityTol = 1e-10;

}  // namespace dcs
