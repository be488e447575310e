#include <cmath>

#include <doctest.h>

#include "dcs/errors.hpp"
#include "dcs/system.hpp"

using namespace dcs;

namespace {

constexpr double kPi = 3.14159265358979323846;

StatePair sample_state(const Grid& g, double (*rho)(double), double (*kappa)(double)) {
  StatePair s;
  s.rho = ScalarField::sample(g, rho);
  s.kappa = ScalarField::sample(g, kappa);
  return s;
}

double max_abs_diff(const ScalarField& a, const ScalarField& b) {
  double m = 0.0;
  for (int i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("odd clamp") {
  CHECK(truncate(0.3, 1.0) == 0.3);
  CHECK(truncate(-0.3, 1.0) == -0.3);
  CHECK(truncate(2.5, 1.0) == 1.0);
  CHECK(truncate(-2.5, 1.0) == -1.0);
  CHECK(truncate(1.0, 1.0) == 1.0);
  CHECK(truncate(-1.0, 1.0) == -1.0);
  CHECK(truncate(0.0, 5.0) == 0.0);
}

TEST_CASE("density right-hand side on polynomial data") {
  const Grid g = Grid::uniform(101);

  SUBCASE("zero density, unit ramp, eps=0.5, tau=1 gives -1") {
    const StatePair s = sample_state(g, [](double) { return 0.0; }, [](double x) { return x; });
    const ScalarField r = rhs_rho(s, ModelParams{0.5, 1.0});
    for (int i = 0; i < g.n_nodes; ++i) CHECK(r[i] == doctest::Approx(-1.0).epsilon(1e-12));
  }
  SUBCASE("quadratic density, eps=1, tau=0 gives 4") {
    const StatePair s =
        sample_state(g, [](double x) { return x * x; }, [](double x) { return x; });
    const ScalarField r = rhs_rho(s, ModelParams{1.0, 0.0});
    for (int i = 0; i < g.n_nodes; ++i) CHECK(r[i] == doctest::Approx(4.0).epsilon(1e-11));
  }
  SUBCASE("zero state gives zero") {
    const StatePair s = sample_state(g, [](double) { return 0.0; }, [](double) { return 0.0; });
    const ScalarField r = rhs_rho(s, ModelParams{1.0, 1.0});
    for (int i = 0; i < g.n_nodes; ++i) CHECK(r[i] == 0.0);
  }
  SUBCASE("jointly linear in the state pair") {
    const StatePair s1 =
        sample_state(g, [](double x) { return std::sin(kPi * x); }, [](double x) { return x; });
    const StatePair s2 = sample_state(g, [](double x) { return x * x; },
                                      [](double x) { return x * x * x; });
    const ModelParams params{0.7, -1.3};
    const double a = 2.0, b = -0.5;
    StatePair mix;
    mix.rho = ScalarField(g);
    mix.kappa = ScalarField(g);
    for (int i = 0; i < g.n_nodes; ++i) {
      mix.rho[i] = a * s1.rho[i] + b * s2.rho[i];
      mix.kappa[i] = a * s1.kappa[i] + b * s2.kappa[i];
    }
    const ScalarField lhs = rhs_rho(mix, params);
    const ScalarField r1 = rhs_rho(s1, params), r2 = rhs_rho(s2, params);
    for (int i = 0; i < g.n_nodes; ++i)
      CHECK(lhs[i] == doctest::Approx(a * r1[i] + b * r2[i]).epsilon(1e-9));
  }
}

TEST_CASE("regularized curvature right-hand side") {
  const Grid g = Grid::uniform(101);
  const StatePair s =
      sample_state(g, [](double x) { return 0.5 * x * x; }, [](double x) { return x; });

  SUBCASE("inactive regularization reproduces the raw quotient") {
    // rho_x = x, rho_xx = 1, kappa_x = 1: quotient = x.
    const ScalarField r = rhs_kappa_regularized(s, ModelParams{1.0, 0.0}, RegParams{0.5, 2.0});
    for (int i = 0; i < g.n_nodes; ++i)
      CHECK(r[i] == doctest::Approx(g.node(i)).epsilon(1e-11));
  }
  SUBCASE("gradient clamp becomes active above the threshold") {
    // threshold 2*m0 = 0.5, so the numerator factor is min(x, 0.5).
    const ScalarField r = rhs_kappa_regularized(s, ModelParams{1.0, 0.0}, RegParams{0.99, 0.25});
    for (int i = 0; i < g.n_nodes; ++i) {
      const double expected = std::min(g.node(i), 0.5);
      CHECK(r[i] == doctest::Approx(expected).epsilon(1e-11));
    }
  }
  SUBCASE("denominator floor engages for flat kappa") {
    // kappa_x = 0.1 < gamma0/2 = 0.25, so the denominator is floored at 0.25.
    const StatePair flat =
        sample_state(g, [](double x) { return 0.5 * x * x; }, [](double x) { return 0.1 * x; });
    const ScalarField r = rhs_kappa_regularized(flat, ModelParams{1.0, 0.0}, RegParams{0.5, 2.0});
    for (int i = 0; i < g.n_nodes; ++i)
      CHECK(r[i] == doctest::Approx(4.0 * g.node(i)).epsilon(1e-10));
  }
  SUBCASE("drift term enters with its sign") {
    const ScalarField r = rhs_kappa_regularized(s, ModelParams{1.0, 2.0}, RegParams{0.5, 2.0});
    // x - tau * rho_x = x - 2x = -x
    for (int i = 0; i < g.n_nodes; ++i)
      CHECK(r[i] == doctest::Approx(-g.node(i)).epsilon(1e-11));
  }
}

TEST_CASE("exact curvature right-hand side and its guard") {
  const Grid g = Grid::uniform(101);
  const StatePair s =
      sample_state(g, [](double x) { return 0.5 * x * x; }, [](double x) { return x; });
  const ScalarField r = rhs_kappa_exact(s, ModelParams{1.0, 0.0});
  for (int i = 0; i < g.n_nodes; ++i) CHECK(r[i] == doctest::Approx(g.node(i)).epsilon(1e-11));

  const StatePair bad =
      sample_state(g, [](double x) { return 0.5 * x * x; }, [](double x) { return -x; });
  CHECK_THROWS_AS(rhs_kappa_exact(bad, ModelParams{1.0, 0.0}), SingularDenominator);
}

TEST_CASE("regularized and exact right-hand sides agree when the guards are slack") {
  const Grid g = Grid::uniform(201);
  const StatePair s = sample_state(g, [](double x) { return 0.1 * std::sin(kPi * x); },
                                   [](double x) { return x + 0.1 * std::sin(kPi * x); });
  const ModelParams params{0.5, 1.0};
  const ScalarField reg = rhs_kappa_regularized(s, params, RegParams{0.5, 1.0});
  const ScalarField exact = rhs_kappa_exact(s, params);
  CHECK(max_abs_diff(reg, exact) <= 1e-12 * linf_norm(exact));
}

TEST_CASE("exact curvature right-hand side is positively homogeneous") {
  const Grid g = Grid::uniform(201);
  const StatePair s = sample_state(g, [](double x) { return 0.1 * std::sin(kPi * x); },
                                   [](double x) { return x + 0.1 * std::sin(kPi * x); });
  const ModelParams params{0.5, 1.0};
  const ScalarField base = rhs_kappa_exact(s, params);
  for (double lam : {2.0, 0.5}) {
    StatePair scaled;
    scaled.rho = ScalarField(g);
    scaled.kappa = ScalarField(g);
    for (int i = 0; i < g.n_nodes; ++i) {
      scaled.rho[i] = lam * s.rho[i];
      scaled.kappa[i] = lam * s.kappa[i];
    }
    const ScalarField r = rhs_kappa_exact(scaled, params);
    for (int i = 0; i < g.n_nodes; ++i)
      CHECK(r[i] == doctest::Approx(lam * base[i]).epsilon(1e-11));
  }
}

TEST_CASE("gradient pair mapping") {
  const Grid g = Grid::uniform(101);

  SUBCASE("ramp with zero density gives theta = 1/2 on both branches") {
    const StatePair s = sample_state(g, [](double) { return 0.0; }, [](double x) { return x; });
    const ThetaPair th = to_theta(s);
    for (int i = 0; i < g.n_nodes; ++i) {
      CHECK(th.theta_plus[i] == doctest::Approx(0.5).epsilon(1e-12));
      CHECK(th.theta_minus[i] == doctest::Approx(0.5).epsilon(1e-12));
    }
  }
  SUBCASE("half-slope density splits into 3/4 and 1/4") {
    const StatePair s =
        sample_state(g, [](double x) { return 0.5 * x; }, [](double x) { return x; });
    const ThetaPair th = to_theta(s);
    for (int i = 0; i < g.n_nodes; ++i) {
      CHECK(th.theta_plus[i] == doctest::Approx(0.75).epsilon(1e-12));
      CHECK(th.theta_minus[i] == doctest::Approx(0.25).epsilon(1e-12));
    }
  }
  SUBCASE("positivity of both branches is gradient dominance, node by node") {
    const StatePair s = sample_state(g, [](double x) { return x - 0.3 * std::sin(2.0 * kPi * x); },
                                     [](double x) { return x; });
    const ThetaPair th = to_theta(s);
    const ScalarField rx = diff1(s.rho);
    const ScalarField kx = diff1(s.kappa);
    for (int i = 0; i < g.n_nodes; ++i) {
      const bool both_positive = th.theta_plus[i] > 0.0 && th.theta_minus[i] > 0.0;
      const bool dominated = kx[i] > std::abs(rx[i]);
      CHECK(both_positive == dominated);
    }
    // sanity: this field must exercise both outcomes
    bool any_pos = false, any_neg = false;
    for (int i = 0; i < g.n_nodes; ++i) {
      if (th.theta_minus[i] > 0.0) any_pos = true;
      if (th.theta_minus[i] <= 0.0) any_neg = true;
    }
    CHECK(any_pos);
    CHECK(any_neg);
  }
}

TEST_CASE("gradient-system residual") {
  const Grid g = Grid::uniform(101);

  SUBCASE("stationary ramp has zero residual") {
    const StatePair s = sample_state(g, [](double) { return 0.0; }, [](double x) { return x; });
    const ThetaPair th = to_theta(s);
    const auto res = residual_theta(th, th, 1e-3, ModelParams{1.0, 0.0});
    // rounding in the sampled ramp is amplified by h^-2 through the stencils
    CHECK(linf_norm(res.first) <= 1e-10);
    CHECK(linf_norm(res.second) <= 1e-10);
  }
  SUBCASE("constant branches are stationary even with drift") {
    // theta_plus = 3/4, theta_minus = 1/4: the drift flux is spatially
    // constant, so its divergence vanishes.
    const StatePair s =
        sample_state(g, [](double x) { return 0.5 * x; }, [](double x) { return x; });
    const ThetaPair th = to_theta(s);
    const auto res = residual_theta(th, th, 1e-2, ModelParams{0.5, 3.0});
    CHECK(linf_norm(res.first) <= 1e-10);
    CHECK(linf_norm(res.second) <= 1e-10);
  }
  SUBCASE("nonpositive branch sum is rejected") {
    const StatePair s = sample_state(g, [](double) { return 0.0; }, [](double x) { return -x; });
    const ThetaPair th = to_theta(s);
    CHECK_THROWS_AS(residual_theta(th, th, 1e-3, ModelParams{1.0, 0.0}), SingularDenominator);
  }
}
