#include "dcs/system.hpp"

#include <cmath>
#include <stdexcept>

#include "dcs/errors.hpp"

namespace dcs {

namespace {

void require_same_grid(const ScalarField& a, const ScalarField& b, const char* who) {
  if (!(a.grid == b.grid)) throw std::invalid_argument(std::string(who) + ": grid mismatch");
}

void require_reg(const RegParams& reg) {
  if (!(reg.gamma0 > 0.0 && reg.gamma0 < 1.0 && reg.m0 > 0.0))
    throw std::invalid_argument("RegParams: need gamma0 in (0,1) and m0 > 0");
}

}  // namespace

double truncate(double y, double zeta) {
  if (y > zeta) return zeta;
  if (y < -zeta) return -zeta;
  return y;
}

ScalarField rhs_rho(const StatePair& state, const ModelParams& params) {
  require_same_grid(state.rho, state.kappa, "rhs_rho");
  const ScalarField rxx = diff2(state.rho);
  const ScalarField kx = diff1(state.kappa);
  ScalarField out(state.rho.grid);
  for (int i = 0; i < out.size(); ++i)
    out[i] = (1.0 + params.epsilon) * rxx[i] - params.tau * kx[i];
  return out;
}

ScalarField rhs_kappa_regularized(const StatePair& state, const ModelParams& params,
                                  const RegParams& reg) {
  require_same_grid(state.rho, state.kappa, "rhs_kappa_regularized");
  require_reg(reg);
  const ScalarField rx = diff1(state.rho);
  const ScalarField rxx = diff2(state.rho);
  const ScalarField kx = diff1(state.kappa);
  const ScalarField kxx = diff2(state.kappa);
  const double floor_half = 0.5 * reg.gamma0;
  ScalarField out(state.rho.grid);
  for (int i = 0; i < out.size(); ++i) {
    const double denom = floor_half + std::max(kx[i] - floor_half, 0.0);
    out[i] = params.epsilon * kxx[i] + rxx[i] * truncate(rx[i], 2.0 * reg.m0) / denom -
             params.tau * rx[i];
  }
  return out;
}

ScalarField rhs_kappa_exact(const StatePair& state, const ModelParams& params) {
  require_same_grid(state.rho, state.kappa, "rhs_kappa_exact");
  const ScalarField rx = diff1(state.rho);
  const ScalarField rxx = diff2(state.rho);
  const ScalarField kx = diff1(state.kappa);
  const ScalarField kxx = diff2(state.kappa);
  ScalarField out(state.rho.grid);
  for (int i = 0; i < out.size(); ++i) {
    if (!(kx[i] > 0.0))
      throw SingularDenominator("rhs_kappa_exact: kappa_x <= 0 at node " + std::to_string(i));
    out[i] = params.epsilon * kxx[i] + rx[i] * rxx[i] / kx[i] - params.tau * rx[i];
  }
  return out;
}

ThetaPair to_theta(const StatePair& state) {
  require_same_grid(state.rho, state.kappa, "to_theta");
  const ScalarField rx = diff1(state.rho);
  const ScalarField kx = diff1(state.kappa);
  ThetaPair th{ScalarField(state.rho.grid), ScalarField(state.rho.grid)};
  for (int i = 0; i < rx.size(); ++i) {
    th.theta_plus[i] = 0.5 * (kx[i] + rx[i]);
    th.theta_minus[i] = 0.5 * (kx[i] - rx[i]);
  }
  return th;
}

std::pair<ScalarField, ScalarField> residual_theta(const ThetaPair& theta,
                                                   const ThetaPair& theta_prev, double dt,
                                                   const ModelParams& params) {
  require_same_grid(theta.theta_plus, theta.theta_minus, "residual_theta");
  require_same_grid(theta.theta_plus, theta_prev.theta_plus, "residual_theta");
  if (!(dt > 0.0)) throw std::invalid_argument("residual_theta: need dt > 0");
  const Grid& grid = theta.theta_plus.grid;
  const int n = grid.n_nodes;

  const ScalarField dpx = diff1(theta.theta_plus);
  const ScalarField dmx = diff1(theta.theta_minus);
  ScalarField drift(grid);  // (theta_plus_x - theta_minus_x)/(theta_plus + theta_minus) - tau
  for (int i = 0; i < n; ++i) {
    const double sum = theta.theta_plus[i] + theta.theta_minus[i];
    if (!(sum > 0.0))
      throw SingularDenominator("residual_theta: theta_plus + theta_minus <= 0 at node " +
                                std::to_string(i));
    drift[i] = (dpx[i] - dmx[i]) / sum - params.tau;
  }

  ScalarField flux_p(grid), flux_m(grid);
  for (int i = 0; i < n; ++i) {
    flux_p[i] = drift[i] * theta.theta_plus[i];
    flux_m[i] = drift[i] * theta.theta_minus[i];
  }
  const ScalarField dflux_p = diff1(flux_p);
  const ScalarField dflux_m = diff1(flux_m);
  const ScalarField lap_p = diff2(theta.theta_plus);
  const ScalarField lap_m = diff2(theta.theta_minus);

  ScalarField res_p(grid), res_m(grid);
  for (int i = 0; i < n; ++i) {
    res_p[i] = (theta.theta_plus[i] - theta_prev.theta_plus[i]) / dt -
               params.epsilon * lap_p[i] - dflux_p[i];
    res_m[i] = (theta.theta_minus[i] - theta_prev.theta_minus[i]) / dt -
               params.epsilon * lap_m[i] + dflux_m[i];
  }
  return {res_p, res_m};
}

}  // namespace dcs
