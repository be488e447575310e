#pragma once

#include <functional>
#include <vector>

namespace dcs {

// Uniform mesh on the closed unit interval, x_i = i*h with h = 1/(n_nodes-1).
struct Grid {
  int n_nodes = 0;
  double h = 0.0;

  // n_nodes >= 5; throws std::invalid_argument otherwise.
  static Grid uniform(int n_nodes);

  // Endpoints are pinned so that node(0) == 0 and node(n_nodes-1) == 1 exactly.
  double node(int i) const { return i == n_nodes - 1 ? 1.0 : i * h; }
  std::vector<double> nodes() const;

  bool operator==(const Grid&) const = default;
};

// Nodal samples of a scalar function on a Grid.
struct ScalarField {
  Grid grid;
  std::vector<double> values;

  ScalarField() = default;
  ScalarField(const Grid& g, double fill = 0.0)
      : grid(g), values(static_cast<size_t>(g.n_nodes), fill) {}

  static ScalarField sample(const Grid& g, const std::function<double(double)>& f);

  double& operator[](int i) { return values[static_cast<size_t>(i)]; }
  double operator[](int i) const { return values[static_cast<size_t>(i)]; }
  int size() const { return static_cast<int>(values.size()); }
  bool all_finite() const;
};

// First derivative: centered differences inside, 3-point one-sided rows at the
// ends. Second order everywhere, exact for polynomials up to degree 2.
ScalarField diff1(const ScalarField& f);

// Second derivative: 3-point centered inside, 4-point one-sided rows at the
// ends. Second order everywhere, exact for polynomials up to degree 2.
ScalarField diff2(const ScalarField& f);

// Third derivative: 5-point centered inside, 6-point one-sided rows near the
// ends. Exact for cubics; requires n_nodes >= 7.
ScalarField diff3(const ScalarField& f);

double linf_norm(const ScalarField& f);

// Trapezoid-weighted (h * sum w_i |f_i|^p)^(1/p), p >= 1.
double lp_norm(const ScalarField& f, double p);

namespace detail {

// Stencil rows shared by ScalarField and space-time derivatives: writes
// d^order f / dx^order of one uniformly spaced line into out.  order 1 and 2
// need n >= 5, order 3 needs n >= 7.
void diff_line(const double* f, int n, double h, int order, double* out);

}  // namespace detail

}  // namespace dcs
