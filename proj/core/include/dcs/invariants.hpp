#pragma once

#include <string>
#include <vector>

#include "dcs/solver.hpp"

namespace dcs {

// Absolute slack applied to every certified inequality check.
inline constexpr double kComparisonTol = 1e-6;

// Constants of the weighted-margin comparison monitor.  The decay rate c0 is
// the smaller of an interior and a boundary constant, both determined by
// (beta, eps, tau).
struct MonitorParams {
  double beta = 2.0;
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;

  // c1 = beta^2/4 + tau^2/(8 eps) + eps beta^2, c2 = tau^2 cosh(beta)/(4 eps),
  // c0 = min(c1, c2).
  static MonitorParams make(double beta, const ModelParams& params);
};

// Smallest beta in {1, 2, 4, 8, ...} with beta*tanh(beta) > |tau|/(1+eps) + 1.
double choose_beta(const ModelParams& params);

struct Violation {
  double time = 0.0;
  int node = -1;  // -1 when the violated quantity is a per-time scalar
  std::string quantity;
};

struct InvariantReport {
  std::vector<double> times;
  std::vector<double> m_bar;         // min over nodes of the weighted margin
  std::vector<double> gamma;         // certified floor series
  std::vector<double> ratio_sup;     // max |rho_x / kappa_x| per time
  std::vector<double> rho_xxx_sup;   // max |rho_xxx| per time
  std::vector<Violation> violations;
};

// gamma_{k+1} = gamma_k * exp(-(c0 + sup|rho_xxx(t_k)|) * (t_{k+1} - t_k)),
// one entry per trajectory state, gamma[0] = gamma_init.
std::vector<double> gamma_from_trajectory(const Trajectory& traj, const MonitorParams& mon,
                                          double gamma_init);

// Evaluates the weighted margin cosh(beta(2x-1)) * (kappa_x - sqrt(gamma^2 + rho_x^2))
// per state, together with the gradient-ratio and third-derivative series, and
// records violations of m_bar >= gamma^2 - tol and of the nodal bound
// kappa_x >= sqrt(gamma^2 + rho_x^2) - tol.
InvariantReport comparison_monitor(const Trajectory& traj, const MonitorParams& mon,
                                   const std::vector<double>& gamma_series);

// Logarithmic decay model gamma' = -E (1 + |log gamma|) gamma, gamma < 1.
double gamma_log_closed_form(double E, double gamma_init, double t);

struct GammaOdeResult {
  std::vector<double> times;
  std::vector<double> closed_form;
  std::vector<double> rk4;
  double max_gap() const;
};

GammaOdeResult gamma_log_ode(double E, double gamma_init, double t_end, double dt);

// Smallest b >= 0 (bisection to 1e-6) such that min_x kappa_x(., t) stays
// above exp(-exp(exp(b (t+1)))) at every sampled time.  Diagnostic only.
double fit_triple_exponential(const Trajectory& traj);

struct RatioCheck {
  std::vector<double> times;
  std::vector<double> ratio_sup;
  bool within_unit_bound = false;  // all ratios <= 1 + kComparisonTol
};

// Per-time sup of |rho_x / kappa_x|; throws SingularDenominator on
// kappa_x <= 0.
RatioCheck ratio_bound_check(const Trajectory& traj);

}  // namespace dcs
