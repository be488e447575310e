#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "dcs/initial_data.hpp"
#include "dcs/system.hpp"

namespace dcs {

struct StepperConfig {
  double dt = 1e-3;
  double picard_tol = 1e-10;
  int picard_max_iters = 50;
  double dt_backoff = 0.5;
};

struct Trajectory {
  std::vector<StatePair> states;  // includes the t = 0 state; times strictly increase
  ModelParams params;
  RegParams reg;
  const Grid& grid() const { return states.front().rho.grid; }
};

struct StepResult {
  StatePair state;
  int iterations = 0;
  // last gap over previous gap; 0 when the first sweep already meets the tolerance
  double contraction_ratio = 0.0;
};

// Optional extra sources on the right-hand sides, evaluated at the new time
// level like the rest of the backward-Euler step.
struct Forcing {
  std::function<double(double x, double t)> rho;
  std::function<double(double x, double t)> kappa;
};

// One backward-Euler step of length cfg.dt via frozen-coefficient sweeps:
// solve rho implicitly with drift from the frozen kappa, then kappa
// implicitly with the freshly solved rho curvature against the truncated,
// floored gradient quotient of the frozen iterate.  Boundary rows hold the
// incoming endpoint values exactly.  Throws PicardDiverged when the gap does
// not drop below cfg.picard_tol within cfg.picard_max_iters sweeps.
StepResult step_picard(const StatePair& state, const StepperConfig& cfg,
                       const ModelParams& params, const RegParams& reg,
                       const Forcing* forcing = nullptr, std::vector<double>* gap_trace = nullptr);

struct SolveStats {
  std::vector<int> iterations;           // per accepted step
  std::vector<double> contraction_ratios;  // per accepted step
  int backoffs = 0;
  double final_dt = 0.0;
};

// March from t = 0 to t_end.  On PicardDiverged the step width is multiplied
// by cfg.dt_backoff and never regrown; StepCollapse below 1e-12 * t_end.
Trajectory solve(const InitialData& init, double t_end, const StepperConfig& cfg,
                 const ModelParams& params, SolveStats* stats = nullptr);

// Dirichlet heat solution u_t = eps u_xx with u = phi at t = 0 and the
// endpoint values of phi held fixed, evaluated by a discrete sine expansion
// (up to 200 modes, exact in time, no time stepping).
ScalarField heat_reference(const ScalarField& phi, double t_end, double eps);

// Closed-form space-time field with the derivatives the forced equations need.
struct ManufacturedField {
  std::function<double(double x, double t)> value;
  std::function<double(double x, double t)> ddt;
  std::function<double(double x, double t)> ddx;
  std::function<double(double x, double t)> d2dx;
};

struct MmsPoint {
  int n_nodes = 0;
  double dt = 0.0;
  double err_rho = 0.0;
  double err_kappa = 0.0;
};

// Integrate the forced system whose exact solution is (rho_star, kappa_star)
// for one (n_nodes, dt) pair and return the terminal max-norm errors.
// Requires kappa_star_x > 0 and time-constant boundary values.
MmsPoint run_manufactured(const ManufacturedField& rho_star, const ManufacturedField& kappa_star,
                          int n_nodes, double dt, double t_end, const StepperConfig& cfg,
                          const ModelParams& params, Trajectory* trajectory = nullptr);

// Error table over a refinement ladder of (n_nodes, dt) pairs.
std::vector<MmsPoint> solve_manufactured(const ManufacturedField& rho_star,
                                         const ManufacturedField& kappa_star, double t_end,
                                         const StepperConfig& cfg, const ModelParams& params,
                                         const std::vector<std::pair<int, double>>& ladder);

// Least-squares slope of log(err) against log(scale).
double observed_order(const std::vector<double>& errors, const std::vector<double>& scales);

}  // namespace dcs
