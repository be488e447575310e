#include "dcs/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dcs/errors.hpp"

namespace dcs {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Solve (I - dt*coef*D2) u = rhs with Dirichlet rows u_0 = left,
// u_{n-1} = right by direct tridiagonal elimination.
ScalarField implicit_heat_solve(const ScalarField& rhs, double dt, double coef, double left,
                                double right) {
  const int n = rhs.grid.n_nodes;
  const double h = rhs.grid.h;
  const double mu = dt * coef / (h * h);
  const int m = n - 2;  // interior unknowns
  std::vector<double> cp(static_cast<size_t>(m)), dp(static_cast<size_t>(m));
  const double b = 1.0 + 2.0 * mu;

  auto d_of = [&](int k) {
    double d = rhs[k + 1];
    if (k == 0) d += mu * left;
    if (k == m - 1) d += mu * right;
    return d;
  };

  cp[0] = -mu / b;
  dp[0] = d_of(0) / b;
  for (int k = 1; k < m; ++k) {
    const double w = b + mu * cp[k - 1];
    cp[static_cast<size_t>(k)] = -mu / w;
    dp[static_cast<size_t>(k)] = (d_of(k) + mu * dp[static_cast<size_t>(k - 1)]) / w;
  }

  ScalarField u(rhs.grid);
  u[0] = left;
  u[n - 1] = right;
  u[n - 2] = dp[static_cast<size_t>(m - 1)];
  for (int k = m - 2; k >= 0; --k)
    u[k + 1] = dp[static_cast<size_t>(k)] - cp[static_cast<size_t>(k)] * u[k + 2];
  return u;
}

double pair_gap(const ScalarField& a, const ScalarField& a_prev, const ScalarField& b,
                const ScalarField& b_prev) {
  double g = 0.0;
  for (int i = 0; i < a.size(); ++i) {
    g = std::max(g, std::abs(a[i] - a_prev[i]));
    g = std::max(g, std::abs(b[i] - b_prev[i]));
  }
  return g;
}

RegParams reg_from_fields(double gamma0, const ScalarField& rho0) {
  RegParams reg;
  reg.gamma0 = gamma0;
  reg.m0 = 2.0 * linf_norm(diff1(rho0)) + 1.0;
  return reg;
}

void check_cfg(const StepperConfig& cfg) {
  if (!(cfg.dt > 0.0 && cfg.picard_tol > 0.0 && cfg.picard_max_iters > 0 &&
        cfg.dt_backoff > 0.0 && cfg.dt_backoff < 1.0))
    throw std::invalid_argument("StepperConfig: invalid entries");
}

StepResult step_once(const StatePair& state, double dt, const StepperConfig& cfg,
                     const ModelParams& params, const RegParams& reg, const Forcing* forcing,
                     std::vector<double>* gap_trace) {
  const Grid& grid = state.rho.grid;
  const int n = grid.n_nodes;
  const double t_new = state.time + dt;
  const double rho_left = state.rho[0], rho_right = state.rho[n - 1];
  const double kap_left = state.kappa[0], kap_right = state.kappa[n - 1];
  const double floor_half = 0.5 * reg.gamma0;

  ScalarField rho_hat = state.rho;
  ScalarField kappa_hat = state.kappa;
  double prev_gap = -1.0;
  double ratio = 0.0;
  double gap = 0.0;

  for (int sweep = 0; sweep < cfg.picard_max_iters; ++sweep) {
    const ScalarField kx_hat = diff1(kappa_hat);
    ScalarField rhs_r(grid);
    for (int i = 0; i < n; ++i) {
      double src = -params.tau * kx_hat[i];
      if (forcing && forcing->rho) src += forcing->rho(grid.node(i), t_new);
      rhs_r[i] = state.rho[i] + dt * src;
    }
    ScalarField rho_new =
        implicit_heat_solve(rhs_r, dt, 1.0 + params.epsilon, rho_left, rho_right);

    const ScalarField rx_hat = diff1(rho_hat);
    const ScalarField rxx_new = diff2(rho_new);
    ScalarField rhs_k(grid);
    for (int i = 0; i < n; ++i) {
      const double denom = floor_half + std::max(kx_hat[i] - floor_half, 0.0);
      double src = rxx_new[i] * truncate(rx_hat[i], 2.0 * reg.m0) / denom - params.tau * rx_hat[i];
      if (forcing && forcing->kappa) src += forcing->kappa(grid.node(i), t_new);
      rhs_k[i] = state.kappa[i] + dt * src;
    }
    ScalarField kappa_new = implicit_heat_solve(rhs_k, dt, params.epsilon, kap_left, kap_right);

    gap = pair_gap(rho_new, rho_hat, kappa_new, kappa_hat);
    if (gap_trace) gap_trace->push_back(gap);
    if (!std::isfinite(gap))
      throw PicardDiverged("step_picard: non-finite iterate gap", sweep + 1, gap);
    if (prev_gap >= 0.0) ratio = prev_gap > 0.0 ? gap / prev_gap : 0.0;
    rho_hat = std::move(rho_new);
    kappa_hat = std::move(kappa_new);
    if (gap < cfg.picard_tol)
      return {{std::move(rho_hat), std::move(kappa_hat), t_new}, sweep + 1, ratio};
    prev_gap = gap;
  }
  throw PicardDiverged("step_picard: no convergence within the sweep budget",
                       cfg.picard_max_iters, gap);
}

}  // namespace

StepResult step_picard(const StatePair& state, const StepperConfig& cfg,
                       const ModelParams& params, const RegParams& reg, const Forcing* forcing,
                       std::vector<double>* gap_trace) {
  check_cfg(cfg);
  if (!(state.rho.grid == state.kappa.grid))
    throw std::invalid_argument("step_picard: grid mismatch");
  return step_once(state, cfg.dt, cfg, params, reg, forcing, gap_trace);
}

Trajectory solve(const InitialData& init, double t_end, const StepperConfig& cfg,
                 const ModelParams& params, SolveStats* stats) {
  check_cfg(cfg);
  if (!(t_end > 0.0)) throw std::invalid_argument("solve: need t_end > 0");
  const CompatibilityReport rep = verify_initial_data(init, params);
  if (rep.max_bc_residual() > 1e-12 || rep.max_compat_residual() > 1e-8 || rep.min_margin < 0.0)
    throw ConstraintInfeasible("solve: initial data fails verification");

  Trajectory traj;
  traj.params = params;
  traj.reg = reg_from_fields(init.gamma0, init.rho0);
  traj.states.push_back({init.rho0, init.kappa0, 0.0});

  double dt = std::min(cfg.dt, t_end);
  const double collapse = 1e-12 * t_end;
  int backoffs = 0;

  while (true) {
    const StatePair& cur = traj.states.back();
    const double remaining = t_end - cur.time;
    if (remaining <= collapse) break;
    const double step_dt = std::min(dt, remaining);
    try {
      std::vector<double>* trace = nullptr;
      StepResult res = step_once(cur, step_dt, cfg, params, traj.reg, nullptr, trace);
      if (stats) {
        stats->iterations.push_back(res.iterations);
        stats->contraction_ratios.push_back(res.contraction_ratio);
      }
      traj.states.push_back(std::move(res.state));
    } catch (const PicardDiverged&) {
      dt *= cfg.dt_backoff;  // permanent: the step width is never regrown
      ++backoffs;
      if (dt < collapse)
        throw StepCollapse("solve: step width collapsed below 1e-12 * t_end after backoff");
    }
  }
  if (stats) {
    stats->backoffs = backoffs;
    stats->final_dt = dt;
  }
  return traj;
}

ScalarField heat_reference(const ScalarField& phi, double t_end, double eps) {
  if (!(t_end >= 0.0) || !(eps > 0.0))
    throw std::invalid_argument("heat_reference: need t_end >= 0 and eps > 0");
  const Grid& grid = phi.grid;
  const int n = grid.n_nodes;
  const double h = grid.h;
  const double left = phi[0], right = phi[n - 1];

  std::vector<double> v(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = phi[i] - (left + (right - left) * grid.node(i));

  // Discrete sine coefficients: exact interpolation of the interior samples
  // when all n-2 modes are kept, so truncation only drops unresolved modes.
  const int modes = std::min(200, n - 2);
  std::vector<double> b(static_cast<size_t>(modes) + 1, 0.0);
  for (int k = 1; k <= modes; ++k) {
    double s = 0.0;
    for (int j = 1; j < n - 1; ++j) s += v[static_cast<size_t>(j)] * std::sin(k * kPi * grid.node(j));
    b[static_cast<size_t>(k)] = 2.0 * h * s;
  }

  ScalarField out(grid);
  for (int i = 0; i < n; ++i) {
    double u = left + (right - left) * grid.node(i);
    const double x = grid.node(i);
    for (int k = 1; k <= modes; ++k)
      u += b[static_cast<size_t>(k)] * std::exp(-eps * k * k * kPi * kPi * t_end) *
           std::sin(k * kPi * x);
    out[i] = u;
  }
  out[0] = left;
  out[n - 1] = right;
  return out;
}

MmsPoint run_manufactured(const ManufacturedField& rho_star, const ManufacturedField& kappa_star,
                          int n_nodes, double dt, double t_end, const StepperConfig& cfg,
                          const ModelParams& params, Trajectory* trajectory) {
  if (!(dt > 0.0 && t_end > 0.0))
    throw std::invalid_argument("run_manufactured: need dt > 0 and t_end > 0");
  const Grid grid = Grid::uniform(n_nodes);

  // boundary values must not move in time; the stepper holds them fixed
  for (double t : {0.0, 0.5 * t_end, t_end}) {
    if (std::abs(rho_star.value(0.0, t) - rho_star.value(0.0, 0.0)) > 1e-12 ||
        std::abs(rho_star.value(1.0, t) - rho_star.value(1.0, 0.0)) > 1e-12 ||
        std::abs(kappa_star.value(0.0, t) - kappa_star.value(0.0, 0.0)) > 1e-12 ||
        std::abs(kappa_star.value(1.0, t) - kappa_star.value(1.0, 0.0)) > 1e-12)
      throw std::invalid_argument("run_manufactured: boundary values drift in time");
  }

  StatePair cur;
  cur.rho = ScalarField::sample(grid, [&](double x) { return rho_star.value(x, 0.0); });
  cur.kappa = ScalarField::sample(grid, [&](double x) { return kappa_star.value(x, 0.0); });
  cur.time = 0.0;

  // same floor and truncation policy as the data-driven entry point
  double min_sq = std::numeric_limits<double>::infinity();
  const ScalarField kx0 = diff1(cur.kappa);
  const ScalarField rx0 = diff1(cur.rho);
  for (int i = 0; i < grid.n_nodes; ++i) {
    if (!(kx0[i] > 0.0))
      throw SingularDenominator("run_manufactured: kappa_star_x <= 0 at t = 0");
    min_sq = std::min(min_sq, kx0[i] * kx0[i] - rx0[i] * rx0[i]);
  }
  RegParams reg;
  reg.gamma0 = std::clamp(0.9 * std::sqrt(std::max(min_sq, 0.0)), 1e-12, 0.99);
  reg.m0 = 2.0 * linf_norm(rx0) + 1.0;

  const double eps = params.epsilon, tau = params.tau;
  Forcing forcing;
  forcing.rho = [&rho_star, &kappa_star, eps, tau](double x, double t) {
    return rho_star.ddt(x, t) - (1.0 + eps) * rho_star.d2dx(x, t) + tau * kappa_star.ddx(x, t);
  };
  forcing.kappa = [&rho_star, &kappa_star, eps, tau](double x, double t) {
    const double kx = kappa_star.ddx(x, t);
    if (!(kx > 0.0))
      throw SingularDenominator("run_manufactured: kappa_star_x <= 0 in forcing");
    return kappa_star.ddt(x, t) - eps * kappa_star.d2dx(x, t) -
           rho_star.ddx(x, t) * rho_star.d2dx(x, t) / kx + tau * rho_star.ddx(x, t);
  };

  Trajectory traj;
  traj.params = params;
  traj.reg = reg;
  traj.states.push_back(cur);

  const long steps = std::max<long>(1, std::lround(t_end / dt));
  const double dt_eff = t_end / static_cast<double>(steps);
  StepperConfig cfg_run = cfg;
  cfg_run.dt = dt_eff;
  for (long s = 0; s < steps; ++s) {
    StepResult res = step_picard(traj.states.back(), cfg_run, params, reg, &forcing);
    traj.states.push_back(std::move(res.state));
  }

  const StatePair& fin = traj.states.back();
  MmsPoint pt;
  pt.n_nodes = n_nodes;
  pt.dt = dt_eff;
  double er = 0.0, ek = 0.0;
  for (int i = 0; i < grid.n_nodes; ++i) {
    const double x = grid.node(i);
    er = std::max(er, std::abs(fin.rho[i] - rho_star.value(x, fin.time)));
    ek = std::max(ek, std::abs(fin.kappa[i] - kappa_star.value(x, fin.time)));
  }
  pt.err_rho = er;
  pt.err_kappa = ek;
  if (trajectory) *trajectory = std::move(traj);
  return pt;
}

std::vector<MmsPoint> solve_manufactured(const ManufacturedField& rho_star,
                                         const ManufacturedField& kappa_star, double t_end,
                                         const StepperConfig& cfg, const ModelParams& params,
                                         const std::vector<std::pair<int, double>>& ladder) {
  std::vector<MmsPoint> table;
  table.reserve(ladder.size());
  for (const auto& [n_nodes, dt] : ladder)
    table.push_back(run_manufactured(rho_star, kappa_star, n_nodes, dt, t_end, cfg, params));
  return table;
}

double observed_order(const std::vector<double>& errors, const std::vector<double>& scales) {
  if (errors.size() != scales.size() || errors.size() < 2)
    throw std::invalid_argument("observed_order: need matching lists of length >= 2");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double m = static_cast<double>(errors.size());
  for (size_t i = 0; i < errors.size(); ++i) {
    const double x = std::log(scales[i]);
    const double y = std::log(std::max(errors[i], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace dcs
