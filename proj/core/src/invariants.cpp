#include "dcs/invariants.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dcs/errors.hpp"

namespace dcs {

namespace {

void require_traj(const Trajectory& traj, const char* who) {
  if (traj.states.empty()) throw std::invalid_argument(std::string(who) + ": empty trajectory");
}

// Feasibility of the lower envelope exp(-exp(exp(b(t+1)))) <= m, evaluated in
// log space so large b never overflows.
bool envelope_below(double b, double t, double m) {
  // need exp(exp(b(t+1))) >= log(1/m)
  const double target = -std::log(m);       // log(1/m)
  if (target <= 0.0) return true;           // m >= 1: any b works
  const double inner = std::exp(b * (t + 1.0));
  // need inner >= log(target); guard log of a tiny target
  const double lt = std::log(target);
  if (lt <= 0.0) return true;               // target <= 1 is always reachable (inner >= 1)
  return inner >= lt;
}

}  // namespace

MonitorParams MonitorParams::make(double beta, const ModelParams& params) {
  if (!(beta > 0.0) || !(params.epsilon > 0.0))
    throw std::invalid_argument("MonitorParams::make: need beta > 0 and eps > 0");
  MonitorParams mon;
  mon.beta = beta;
  const double t2 = params.tau * params.tau;
  mon.c1 = beta * beta / 4.0 + t2 / (8.0 * params.epsilon) + params.epsilon * beta * beta;
  mon.c2 = t2 * std::cosh(beta) / (4.0 * params.epsilon);
  mon.c0 = std::min(mon.c1, mon.c2);
  return mon;
}

double choose_beta(const ModelParams& params) {
  if (!(params.epsilon > 0.0)) throw std::invalid_argument("choose_beta: need eps > 0");
  const double target = std::abs(params.tau) / (1.0 + params.epsilon) + 1.0;
  double beta = 1.0;
  while (!(beta * std::tanh(beta) > target)) {
    beta *= 2.0;
    if (beta > 1e308) throw std::runtime_error("choose_beta: no admissible beta");
  }
  return beta;
}

std::vector<double> gamma_from_trajectory(const Trajectory& traj, const MonitorParams& mon,
                                          double gamma_init) {
  require_traj(traj, "gamma_from_trajectory");
  if (!(gamma_init > 0.0)) throw std::invalid_argument("gamma_from_trajectory: gamma_init <= 0");
  std::vector<double> gamma;
  gamma.reserve(traj.states.size());
  gamma.push_back(gamma_init);
  for (size_t k = 0; k + 1 < traj.states.size(); ++k) {
    const double dt = traj.states[k + 1].time - traj.states[k].time;
    const double c_tilde = linf_norm(diff3(traj.states[k].rho));
    gamma.push_back(gamma.back() * std::exp(-(mon.c0 + c_tilde) * dt));
  }
  return gamma;
}

InvariantReport comparison_monitor(const Trajectory& traj, const MonitorParams& mon,
                                   const std::vector<double>& gamma_series) {
  require_traj(traj, "comparison_monitor");
  if (gamma_series.size() != traj.states.size())
    throw std::invalid_argument("comparison_monitor: gamma series length mismatch");

  InvariantReport rep;
  const Grid& grid = traj.grid();
  const int n = grid.n_nodes;

  for (size_t k = 0; k < traj.states.size(); ++k) {
    const StatePair& st = traj.states[k];
    const double g = gamma_series[k];
    const ScalarField kx = diff1(st.kappa);
    const ScalarField rx = diff1(st.rho);

    double m_bar = std::numeric_limits<double>::infinity();
    double ratio = 0.0;
    bool ratio_ok = true;
    for (int i = 0; i < n; ++i) {
      const double root = std::sqrt(g * g + rx[i] * rx[i]);
      const double margin = kx[i] - root;
      // proof weight lives on (-1,1); the unit interval maps by x -> 2x-1
      m_bar = std::min(m_bar, std::cosh(mon.beta * (2.0 * grid.node(i) - 1.0)) * margin);
      if (margin < -kComparisonTol)
        rep.violations.push_back({st.time, i, "kappa_x >= sqrt(gamma^2 + rho_x^2)"});
      if (kx[i] > 0.0) {
        ratio = std::max(ratio, std::abs(rx[i]) / kx[i]);
      } else if (ratio_ok) {
        rep.violations.push_back({st.time, i, "kappa_x > 0"});
        ratio_ok = false;
      }
    }
    if (m_bar < g * g - kComparisonTol)
      rep.violations.push_back({st.time, -1, "m_bar >= gamma^2"});

    rep.times.push_back(st.time);
    rep.m_bar.push_back(m_bar);
    rep.gamma.push_back(g);
    rep.ratio_sup.push_back(ratio_ok ? ratio : std::numeric_limits<double>::quiet_NaN());
    rep.rho_xxx_sup.push_back(linf_norm(diff3(st.rho)));
  }
  return rep;
}

double gamma_log_closed_form(double E, double gamma_init, double t) {
  if (!(gamma_init > 0.0 && gamma_init < 1.0))
    throw std::invalid_argument("gamma_log_closed_form: need gamma_init in (0,1)");
  // u = 1 - log gamma obeys u' = E u, so gamma(t) = exp(1 - (1 - log gamma_init) e^{E t})
  return std::exp(1.0 - (1.0 - std::log(gamma_init)) * std::exp(E * t));
}

double GammaOdeResult::max_gap() const {
  double g = 0.0;
  for (size_t i = 0; i < closed_form.size(); ++i)
    g = std::max(g, std::abs(closed_form[i] - rk4[i]));
  return g;
}

GammaOdeResult gamma_log_ode(double E, double gamma_init, double t_end, double dt) {
  if (!(gamma_init > 0.0 && gamma_init < 1.0))
    throw std::invalid_argument("gamma_log_ode: need gamma_init in (0,1)");
  if (!(t_end > 0.0 && dt > 0.0)) throw std::invalid_argument("gamma_log_ode: need t_end, dt > 0");

  auto f = [E](double g) { return -E * (1.0 + std::abs(std::log(g))) * g; };

  GammaOdeResult out;
  const long steps = std::lround(std::ceil(t_end / dt - 1e-12));
  double g = gamma_init;
  for (long s = 0; s <= steps; ++s) {
    const double t = std::min(s * dt, t_end);
    out.times.push_back(t);
    out.closed_form.push_back(gamma_log_closed_form(E, gamma_init, t));
    out.rk4.push_back(g);
    if (s == steps) break;
    const double hh = std::min(dt, t_end - t);
    const double k1 = f(g);
    const double k2 = f(g + 0.5 * hh * k1);
    const double k3 = f(g + 0.5 * hh * k2);
    const double k4 = f(g + hh * k3);
    g += hh / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return out;
}

double fit_triple_exponential(const Trajectory& traj) {
  require_traj(traj, "fit_triple_exponential");
  std::vector<std::pair<double, double>> floor_series;  // (t, min kappa_x)
  for (const StatePair& st : traj.states) {
    const ScalarField kx = diff1(st.kappa);
    double m = std::numeric_limits<double>::infinity();
    for (double v : kx.values) m = std::min(m, v);
    if (!(m > 0.0))
      throw InfeasibleFit("fit_triple_exponential: min kappa_x <= 0 at t = " +
                          std::to_string(st.time));
    floor_series.emplace_back(st.time, m);
  }

  auto feasible = [&](double b) {
    for (const auto& [t, m] : floor_series)
      if (!envelope_below(b, t, m)) return false;
    return true;
  };

  if (feasible(0.0)) return 0.0;
  double lo = 0.0, hi = 1.0;
  while (!feasible(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6) throw InfeasibleFit("fit_triple_exponential: no finite envelope rate");
  }
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? hi : lo) = mid;
  }
  return hi;
}

RatioCheck ratio_bound_check(const Trajectory& traj) {
  require_traj(traj, "ratio_bound_check");
  RatioCheck out;
  out.within_unit_bound = true;
  for (const StatePair& st : traj.states) {
    const ScalarField kx = diff1(st.kappa);
    const ScalarField rx = diff1(st.rho);
    double ratio = 0.0;
    for (int i = 0; i < kx.size(); ++i) {
      if (!(kx[i] > 0.0))
        throw SingularDenominator("ratio_bound_check: kappa_x <= 0 at t = " +
                                  std::to_string(st.time));
      ratio = std::max(ratio, std::abs(rx[i]) / kx[i]);
    }
    out.times.push_back(st.time);
    out.ratio_sup.push_back(ratio);
    if (ratio > 1.0 + kComparisonTol) out.within_unit_bound = false;
  }
  return out;
}

}  // namespace dcs
