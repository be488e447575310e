#include "dcs/initial_data.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dcs/errors.hpp"

namespace dcs {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Quintic with P(0)=P(1)=P'(0)=P'(1)=0, P''(0)=1, P''(1)=0.  The mirrored
// copy P(1-x) controls the curvature at the right endpoint.
double quintic(double x) { return x * x * (0.5 + x * (-1.5 + x * (1.5 - 0.5 * x))); }
double quintic_d1(double x) { return x * (1.0 + x * (-4.5 + x * (6.0 - 2.5 * x))); }
double quintic_d2(double x) { return 1.0 + x * (-9.0 + x * (18.0 - 10.0 * x)); }

// Gaussian elimination with partial pivoting for the 4x4 endpoint system.
std::array<double, 4> solve4(std::array<std::array<double, 4>, 4> a, std::array<double, 4> b) {
  for (int c = 0; c < 4; ++c) {
    int p = c;
    for (int r = c + 1; r < 4; ++r)
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    std::swap(a[c], a[p]);
    std::swap(b[c], b[p]);
    if (a[c][c] == 0.0) throw std::runtime_error("endpoint system is singular");
    for (int r = 0; r < 4; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      if (f == 0.0) continue;
      for (int k = c; k < 4; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  return {b[0] / a[0][0], b[1] / a[1][1], b[2] / a[2][2], b[3] / a[3][3]};
}

double clamp_gamma(double g) { return std::clamp(g, 1e-12, 0.99); }

// gamma0 policy shared by both constructors; also enforces strict dominance.
double gamma_from_profiles(const AnalyticProfile& rho, const AnalyticProfile& kappa,
                           const Grid& grid) {
  double min_sq = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid.n_nodes; ++i) {
    const double x = grid.node(i);
    const double kx = kappa.d1(x);
    const double rx = rho.d1(x);
    if (!(kx > std::abs(rx)))
      throw ConstraintInfeasible("initial data violates kappa_x > |rho_x| at x = " +
                                 std::to_string(x));
    min_sq = std::min(min_sq, kx * kx - rx * rx);
  }
  return clamp_gamma(0.9 * std::sqrt(std::max(min_sq, 0.0)));
}

InitialData assemble(const AnalyticProfile& rho, const AnalyticProfile& kappa, const Grid& grid) {
  InitialData data;
  data.rho = rho;
  data.kappa = kappa;
  data.rho0 = ScalarField::sample(grid, rho.value);
  data.kappa0 = ScalarField::sample(grid, kappa.value);
  const double tol = 1e-12;
  if (std::abs(data.rho0[0]) > tol || std::abs(data.rho0[grid.n_nodes - 1]) > tol ||
      std::abs(data.kappa0[0]) > tol || std::abs(data.kappa0[grid.n_nodes - 1] - 1.0) > tol)
    throw ConstraintInfeasible("initial data violates the boundary anchors");
  // pin the anchors so the stepper can hold them exactly
  data.rho0[0] = 0.0;
  data.rho0[grid.n_nodes - 1] = 0.0;
  data.kappa0[0] = 0.0;
  data.kappa0[grid.n_nodes - 1] = 1.0;
  data.gamma0 = gamma_from_profiles(rho, kappa, grid);
  return data;
}

}  // namespace

double CompatibilityReport::max_compat_residual() const {
  return std::max({std::abs(compat_rho_left), std::abs(compat_rho_right),
                   std::abs(compat_kappa_left), std::abs(compat_kappa_right)});
}

double CompatibilityReport::max_bc_residual() const {
  return std::max({std::abs(bc_rho_left), std::abs(bc_rho_right), std::abs(bc_kappa_left),
                   std::abs(bc_kappa_right)});
}

InitialData build_initial_data(const ModelParams& params, double amplitude, const Grid& grid) {
  if (!(params.epsilon > 0.0)) throw std::invalid_argument("build_initial_data: eps must be > 0");
  if (amplitude < 0.0) throw std::invalid_argument("build_initial_data: amplitude must be >= 0");
  const double eps1 = 1.0 + params.epsilon;
  const double tau = params.tau;
  const double A = amplitude;

  // Unknowns u = (a_r0, a_r1, a_k0, a_k1): endpoint curvatures of the quintic
  // corrections q_rho = a_r0 P(x) + a_r1 P(1-x), q_kappa likewise.  Rows are
  // the two compatibility conditions at each endpoint.  The first-derivative
  // couplings P'(0), P'(1) vanish by the choice of basis but are kept so the
  // assembly states the full linear system.
  const double p1_0 = quintic_d1(0.0), p1_1 = quintic_d1(1.0);
  const double rho_b_d1_0 = A * kPi, rho_b_d1_1 = -A * kPi;  // A sin(pi x)
  const double rho_b_d2_0 = 0.0, rho_b_d2_1 = 0.0;
  const double kap_b_d1 = 1.0, kap_b_d2 = 0.0;  // base kappa = x

  std::array<std::array<double, 4>, 4> M{};
  std::array<double, 4> rhs{};
  // (1+eps)(rho_b'' + q_rho'') - tau (kappa_b' + q_kappa') = 0 at x = 0, 1
  M[0] = {eps1 * 1.0, eps1 * 0.0, -tau * p1_0, tau * p1_1};
  rhs[0] = tau * kap_b_d1 - eps1 * rho_b_d2_0;
  M[1] = {eps1 * 0.0, eps1 * 1.0, -tau * p1_1, tau * p1_0};
  rhs[1] = tau * kap_b_d1 - eps1 * rho_b_d2_1;
  // (1+eps)(kappa_b'' + q_kappa'') - tau (rho_b' + q_rho') = 0 at x = 0, 1
  M[2] = {-tau * p1_0, tau * p1_1, eps1 * 1.0, eps1 * 0.0};
  rhs[2] = tau * rho_b_d1_0 - eps1 * kap_b_d2;
  M[3] = {-tau * p1_1, tau * p1_0, eps1 * 0.0, eps1 * 1.0};
  rhs[3] = tau * rho_b_d1_1 - eps1 * kap_b_d2;
  const auto u = solve4(M, rhs);
  const double ar0 = u[0], ar1 = u[1], ak0 = u[2], ak1 = u[3];

  AnalyticProfile rho{
      [A, ar0, ar1](double x) {
        return A * std::sin(kPi * x) + ar0 * quintic(x) + ar1 * quintic(1.0 - x);
      },
      [A, ar0, ar1](double x) {
        return A * kPi * std::cos(kPi * x) + ar0 * quintic_d1(x) - ar1 * quintic_d1(1.0 - x);
      },
      [A, ar0, ar1](double x) {
        return -A * kPi * kPi * std::sin(kPi * x) + ar0 * quintic_d2(x) + ar1 * quintic_d2(1.0 - x);
      }};
  AnalyticProfile kappa{
      [ak0, ak1](double x) { return x + ak0 * quintic(x) + ak1 * quintic(1.0 - x); },
      [ak0, ak1](double x) { return 1.0 + ak0 * quintic_d1(x) - ak1 * quintic_d1(1.0 - x); },
      [ak0, ak1](double x) { return ak0 * quintic_d2(x) + ak1 * quintic_d2(1.0 - x); }};

  return assemble(rho, kappa, grid);
}

InitialData make_initial_data(const AnalyticProfile& rho, const AnalyticProfile& kappa,
                              const Grid& grid) {
  return assemble(rho, kappa, grid);
}

CompatibilityReport verify_initial_data(const InitialData& data, const ModelParams& params) {
  const double eps1 = 1.0 + params.epsilon;
  const double tau = params.tau;
  CompatibilityReport rep;
  rep.compat_rho_left = eps1 * data.rho.d2(0.0) - tau * data.kappa.d1(0.0);
  rep.compat_rho_right = eps1 * data.rho.d2(1.0) - tau * data.kappa.d1(1.0);
  rep.compat_kappa_left = eps1 * data.kappa.d2(0.0) - tau * data.rho.d1(0.0);
  rep.compat_kappa_right = eps1 * data.kappa.d2(1.0) - tau * data.rho.d1(1.0);
  rep.bc_rho_left = data.rho.value(0.0);
  rep.bc_rho_right = data.rho.value(1.0);
  rep.bc_kappa_left = data.kappa.value(0.0);
  rep.bc_kappa_right = data.kappa.value(1.0) - 1.0;
  double margin = std::numeric_limits<double>::infinity();
  const Grid& grid = data.rho0.grid;
  for (int i = 0; i < grid.n_nodes; ++i) {
    const double x = grid.node(i);
    const double kx = data.kappa.d1(x);
    const double rx = data.rho.d1(x);
    margin = std::min(margin, kx - std::sqrt(data.gamma0 * data.gamma0 + rx * rx));
  }
  rep.min_margin = margin;
  return rep;
}

}  // namespace dcs
