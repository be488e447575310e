#include "dcs/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dcs {

Grid Grid::uniform(int n_nodes) {
  if (n_nodes < 5) throw std::invalid_argument("Grid::uniform: need n_nodes >= 5");
  Grid g;
  g.n_nodes = n_nodes;
  g.h = 1.0 / (n_nodes - 1);
  return g;
}

std::vector<double> Grid::nodes() const {
  std::vector<double> xs(static_cast<size_t>(n_nodes));
  for (int i = 0; i < n_nodes; ++i) xs[static_cast<size_t>(i)] = node(i);
  return xs;
}

ScalarField ScalarField::sample(const Grid& g, const std::function<double(double)>& f) {
  ScalarField out(g);
  for (int i = 0; i < g.n_nodes; ++i) out[i] = f(g.node(i));
  return out;
}

bool ScalarField::all_finite() const {
  for (double v : values)
    if (!std::isfinite(v)) return false;
  return true;
}

namespace detail {

void diff_line(const double* f, int n, double h, int order, double* out) {
  if (order == 1) {
    if (n < 5) throw std::invalid_argument("diff_line: order 1 needs n >= 5");
    out[0] = (-1.5 * f[0] + 2.0 * f[1] - 0.5 * f[2]) / h;
    for (int i = 1; i < n - 1; ++i) out[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
    out[n - 1] = (1.5 * f[n - 1] - 2.0 * f[n - 2] + 0.5 * f[n - 3]) / h;
    return;
  }
  if (order == 2) {
    if (n < 5) throw std::invalid_argument("diff_line: order 2 needs n >= 5");
    const double h2 = h * h;
    out[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / h2;
    for (int i = 1; i < n - 1; ++i) out[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / h2;
    out[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / h2;
    return;
  }
  if (order == 3) {
    if (n < 7) throw std::invalid_argument("diff_line: order 3 needs n >= 7");
    const double h3 = h * h * h;
    // 6-point one-sided rows, exact through degree 5
    static const double wl0[6] = {-17.0 / 4, 71.0 / 4, -59.0 / 2, 49.0 / 2, -41.0 / 4, 7.0 / 4};
    static const double wl1[6] = {-7.0 / 4, 25.0 / 4, -17.0 / 2, 11.0 / 2, -7.0 / 4, 1.0 / 4};
    static const double wr1[6] = {-1.0 / 4, 7.0 / 4, -11.0 / 2, 17.0 / 2, -25.0 / 4, 7.0 / 4};
    static const double wr0[6] = {-7.0 / 4, 41.0 / 4, -49.0 / 2, 59.0 / 2, -71.0 / 4, 17.0 / 4};
    auto row = [&](const double* w, int base) {
      double s = 0.0;
      for (int j = 0; j < 6; ++j) s += w[j] * f[base + j];
      return s / h3;
    };
    out[0] = row(wl0, 0);
    out[1] = row(wl1, 0);
    for (int i = 2; i < n - 2; ++i)
      out[i] = (-f[i - 2] + 2.0 * f[i - 1] - 2.0 * f[i + 1] + f[i + 2]) / (2.0 * h3);
    out[n - 2] = row(wr1, n - 6);
    out[n - 1] = row(wr0, n - 6);
    return;
  }
  throw std::invalid_argument("diff_line: order must be 1, 2 or 3");
}

}  // namespace detail

namespace {

ScalarField apply_diff(const ScalarField& f, int order, const char* who) {
  if (f.size() != f.grid.n_nodes)
    throw std::invalid_argument(std::string(who) + ": field inconsistent with grid");
  ScalarField d(f.grid);
  detail::diff_line(f.values.data(), f.grid.n_nodes, f.grid.h, order, d.values.data());
  return d;
}

}  // namespace

ScalarField diff1(const ScalarField& f) { return apply_diff(f, 1, "diff1"); }

ScalarField diff2(const ScalarField& f) { return apply_diff(f, 2, "diff2"); }

ScalarField diff3(const ScalarField& f) { return apply_diff(f, 3, "diff3"); }

double linf_norm(const ScalarField& f) {
  double m = 0.0;
  for (double v : f.values) m = std::max(m, std::abs(v));
  return m;
}

double lp_norm(const ScalarField& f, double p) {
  if (p < 1.0) throw std::invalid_argument("lp_norm: need p >= 1");
  const int n = f.grid.n_nodes;
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    s += w * std::pow(std::abs(f[i]), p);
  }
  return std::pow(f.grid.h * s, 1.0 / p);
}

}  // namespace dcs
