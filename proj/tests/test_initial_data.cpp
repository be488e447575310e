#include <cmath>
#include <vector>

#include <doctest.h>

#include "dcs/errors.hpp"
#include "dcs/initial_data.hpp"

using namespace dcs;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("zero amplitude, zero drift gives the linear ramp and gamma0 = 0.9") {
  const Grid g = Grid::uniform(201);
  const ModelParams params{1.0, 0.0};
  const InitialData data = build_initial_data(params, 0.0, g);

  for (int i = 0; i < g.n_nodes; ++i) {
    CHECK(data.rho0[i] == 0.0);
    CHECK(data.kappa0[i] == doctest::Approx(g.node(i)).epsilon(1e-14));
  }
  CHECK(data.kappa0[0] == 0.0);
  CHECK(data.kappa0[g.n_nodes - 1] == 1.0);
  CHECK(data.gamma0 == doctest::Approx(0.9).epsilon(1e-14));

  const CompatibilityReport rep = verify_initial_data(data, params);
  CHECK(rep.max_compat_residual() <= 1e-12);
  CHECK(rep.max_bc_residual() <= 1e-12);
  CHECK(rep.min_margin == doctest::Approx(1.0 - 0.9).epsilon(1e-12));
}

TEST_CASE("pure sinusoid at zero drift keeps the closed-form gamma0") {
  const Grid g = Grid::uniform(201);
  const ModelParams params{1.0, 0.0};
  const InitialData data = build_initial_data(params, 0.1, g);

  // No drift means no quintic correction, so rho0 is exactly the sinusoid.
  for (int i = 0; i < g.n_nodes; ++i) {
    const double x = g.node(i);
    CHECK(data.rho0[i] == doctest::Approx(0.1 * std::sin(kPi * x)).epsilon(1e-13));
  }
  const double expected = 0.9 * std::sqrt(1.0 - 0.01 * kPi * kPi);
  CHECK(data.gamma0 == doctest::Approx(expected).epsilon(1e-12));
  CHECK(data.gamma0 > 0.0);
  CHECK(data.gamma0 < 1.0);
}

TEST_CASE("drift-coupled construction satisfies the endpoint conditions") {
  const Grid g = Grid::uniform(101);
  const ModelParams params{0.5, 1.0};
  const InitialData data = build_initial_data(params, 0.05, g);
  const CompatibilityReport rep = verify_initial_data(data, params);
  CHECK(rep.max_compat_residual() <= kCompatibilityTol);
  CHECK(rep.max_bc_residual() <= 1e-12);
  CHECK(rep.min_margin >= 0.0);
  CHECK(data.gamma0 > 0.0);
  CHECK(data.gamma0 < 1.0);
}

TEST_CASE("parameter box: every construction verifies below tolerance") {
  const Grid g = Grid::uniform(101);
  for (double eps : {0.1, 1.0}) {
    for (double tau : {-1.0, 0.0, 1.0}) {
      for (double amp : {0.0, 0.05, 0.1}) {
        CAPTURE(eps);
        CAPTURE(tau);
        CAPTURE(amp);
        const ModelParams params{eps, tau};
        const InitialData data = build_initial_data(params, amp, g);
        const CompatibilityReport rep = verify_initial_data(data, params);
        CHECK(rep.max_compat_residual() <= kCompatibilityTol);
        CHECK(rep.max_bc_residual() <= 1e-12);
        CHECK(rep.min_margin >= 0.0);
        CHECK(data.gamma0 > 0.0);
        CHECK(data.gamma0 < 1.0);
        CHECK(data.rho0.all_finite());
        CHECK(data.kappa0.all_finite());
        // boundary anchors pinned exactly
        CHECK(data.rho0[0] == 0.0);
        CHECK(data.rho0[g.n_nodes - 1] == 0.0);
        CHECK(data.kappa0[0] == 0.0);
        CHECK(data.kappa0[g.n_nodes - 1] == 1.0);
      }
    }
  }
}

TEST_CASE("amplitude large enough to break gradient dominance is rejected") {
  const Grid g = Grid::uniform(101);
  const ModelParams params{1.0, 0.0};
  CHECK_THROWS_AS(build_initial_data(params, 1.0, g), ConstraintInfeasible);
  CHECK_THROWS_AS(build_initial_data(params, 0.5, g), ConstraintInfeasible);
}

TEST_CASE("invalid scalar parameters are rejected") {
  const Grid g = Grid::uniform(101);
  CHECK_THROWS_AS(build_initial_data(ModelParams{0.0, 0.0}, 0.05, g), std::invalid_argument);
  CHECK_THROWS_AS(build_initial_data(ModelParams{-1.0, 0.0}, 0.05, g), std::invalid_argument);
  CHECK_THROWS_AS(build_initial_data(ModelParams{1.0, 0.0}, -0.1, g), std::invalid_argument);
}

TEST_CASE("make_initial_data accepts closed-form profiles and rejects bad anchors") {
  const Grid g = Grid::uniform(101);
  const AnalyticProfile rho{[](double x) { return 0.2 * std::sin(kPi * x); },
                            [](double x) { return 0.2 * kPi * std::cos(kPi * x); },
                            [](double x) { return -0.2 * kPi * kPi * std::sin(kPi * x); }};
  const AnalyticProfile kappa{[](double x) { return x; }, [](double) { return 1.0; },
                              [](double) { return 0.0; }};
  const InitialData data = make_initial_data(rho, kappa, g);
  const double expected = 0.9 * std::sqrt(1.0 - 0.04 * kPi * kPi);
  CHECK(data.gamma0 == doctest::Approx(expected).epsilon(1e-12));

  // kappa missing its right anchor value
  const AnalyticProfile bad{[](double x) { return 0.5 * x; }, [](double) { return 0.5; },
                            [](double) { return 0.0; }};
  CHECK_THROWS_AS(make_initial_data(rho, bad, g), ConstraintInfeasible);
}

TEST_CASE("verification reports the documented residual for incompatible data") {
  // rho = x(1-x), kappa = x at eps = 1, tau = 0: the curvature of rho does
  // not vanish at the endpoints, so the compatibility residual is
  // (1+eps)*(-2) = -4 at both ends.
  const Grid g = Grid::uniform(101);
  InitialData data;
  data.rho = AnalyticProfile{[](double x) { return x * (1.0 - x); },
                             [](double x) { return 1.0 - 2.0 * x; }, [](double) { return -2.0; }};
  data.kappa = AnalyticProfile{[](double x) { return x; }, [](double) { return 1.0; },
                               [](double) { return 0.0; }};
  data.rho0 = ScalarField::sample(g, data.rho.value);
  data.kappa0 = ScalarField::sample(g, data.kappa.value);
  data.gamma0 = 0.1;
  const CompatibilityReport rep = verify_initial_data(data, ModelParams{1.0, 0.0});
  CHECK(rep.compat_rho_left == doctest::Approx(-4.0).epsilon(1e-14));
  CHECK(rep.compat_rho_right == doctest::Approx(-4.0).epsilon(1e-14));
  CHECK(rep.max_compat_residual() == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(rep.max_bc_residual() <= 1e-15);
  // |rho_x| = 1 = kappa_x at the endpoints, so the margin dips negative.
  CHECK(rep.min_margin < 0.0);
}
