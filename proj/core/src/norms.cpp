#include "dcs/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dcs/errors.hpp"

namespace dcs {

namespace {

void check_field(const SpaceTimeField& f, const char* who) {
  if (f.n_x < 2 || f.n_t < 1 || !(f.hx > 0.0))
    throw std::invalid_argument(std::string(who) + ": degenerate lattice");
  if (f.n_t > 1 && !(f.dt > 0.0))
    throw std::invalid_argument(std::string(who) + ": nonpositive time step");
  if (f.values.size() != static_cast<size_t>(f.n_x) * static_cast<size_t>(f.n_t))
    throw std::invalid_argument(std::string(who) + ": sample count mismatch");
}

double trap_lp_line(const std::vector<double>& g, double h, double p) {
  const int n = static_cast<int>(g.size());
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    s += w * std::pow(std::abs(g[i]), p);
  }
  return std::pow(h * s, 1.0 / p);
}

}  // namespace

SpaceTimeField::SpaceTimeField(double x0_, double hx_, int n_x_, double t0_, double dt_,
                               int n_t_)
    : x0(x0_), hx(hx_), n_x(n_x_), t0(t0_), dt(dt_), n_t(n_t_) {
  if (n_x < 2 || n_t < 1 || !(hx > 0.0) || (n_t > 1 && !(dt > 0.0)))
    throw std::invalid_argument("SpaceTimeField: degenerate lattice");
  x1 = x0 + (n_x - 1) * hx;
  t1 = t0 + (n_t - 1) * dt;
  values.assign(static_cast<size_t>(n_x) * static_cast<size_t>(n_t), 0.0);
}

SpaceTimeField SpaceTimeField::sample(const Grid& g, double t0, double dt, int n_t,
                                      const std::function<double(double, double)>& f) {
  SpaceTimeField out(0.0, g.h, g.n_nodes, t0, dt, n_t);
  out.x1 = 1.0;
  for (int m = 0; m < n_t; ++m)
    for (int i = 0; i < g.n_nodes; ++i) out.at(m, i) = f(g.node(i), out.t(m));
  return out;
}

bool SpaceTimeField::all_finite() const {
  for (double v : values)
    if (!std::isfinite(v)) return false;
  return true;
}

SpaceTimeField subfield(const SpaceTimeField& f, int i0, int i1, int m0, int m1) {
  check_field(f, "subfield");
  if (i0 < 0 || i1 >= f.n_x || i0 > i1 || m0 < 0 || m1 >= f.n_t || m0 > m1)
    throw std::invalid_argument("subfield: index rectangle out of range");
  SpaceTimeField out;
  out.x0 = f.x(i0);
  out.x1 = f.x(i1);
  out.hx = f.hx;
  out.n_x = i1 - i0 + 1;
  out.t0 = f.t(m0);
  out.t1 = f.t(m1);
  out.dt = f.dt;
  out.n_t = m1 - m0 + 1;
  out.values.resize(static_cast<size_t>(out.n_x) * out.n_t);
  for (int m = m0; m <= m1; ++m)
    for (int i = i0; i <= i1; ++i) out.at(m - m0, i - i0) = f.at(m, i);
  return out;
}

SpaceTimeField dx_field(const SpaceTimeField& f, int order) {
  check_field(f, "dx_field");
  SpaceTimeField d = f;
  for (int m = 0; m < f.n_t; ++m)
    detail::diff_line(f.values.data() + static_cast<size_t>(m) * f.n_x, f.n_x, f.hx, order,
                      d.values.data() + static_cast<size_t>(m) * f.n_x);
  return d;
}

SpaceTimeField dt_field(const SpaceTimeField& f) {
  check_field(f, "dt_field");
  SpaceTimeField d = f;
  std::vector<double> col(static_cast<size_t>(f.n_t)), out(static_cast<size_t>(f.n_t));
  for (int i = 0; i < f.n_x; ++i) {
    for (int m = 0; m < f.n_t; ++m) col[static_cast<size_t>(m)] = f.at(m, i);
    detail::diff_line(col.data(), f.n_t, f.dt, 1, out.data());
    for (int m = 0; m < f.n_t; ++m) d.at(m, i) = out[static_cast<size_t>(m)];
  }
  return d;
}

double linf_norm(const SpaceTimeField& f) {
  double m = 0.0;
  for (double v : f.values) m = std::max(m, std::abs(v));
  return m;
}

double lp_norm(const SpaceTimeField& f, double p) {
  check_field(f, "lp_norm");
  if (p < 1.0) throw std::invalid_argument("lp_norm: need p >= 1");
  double s = 0.0, w_total = 0.0;
  for (int m = 0; m < f.n_t; ++m) {
    const double wm = (f.n_t > 1 && (m == 0 || m == f.n_t - 1)) ? 0.5 : 1.0;
    for (int i = 0; i < f.n_x; ++i) {
      const double wi = (i == 0 || i == f.n_x - 1) ? 0.5 : 1.0;
      s += wm * wi * std::pow(std::abs(f.at(m, i)), p);
      w_total += wm * wi;
    }
  }
  const double area = (f.x1 - f.x0) * (f.t1 - f.t0);
  return std::pow(s / w_total * area, 1.0 / p);
}

double holder_seminorm_x(const SpaceTimeField& f, double alpha) {
  check_field(f, "holder_seminorm_x");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("holder_seminorm_x: need alpha in (0,1)");
  std::vector<double> dpow(static_cast<size_t>(f.n_x));
  for (int d = 1; d < f.n_x; ++d) dpow[static_cast<size_t>(d)] = std::pow(d * f.hx, alpha);
  double best = 0.0;
  for (int m = 0; m < f.n_t; ++m)
    for (int i = 0; i < f.n_x; ++i)
      for (int j = i + 1; j < f.n_x; ++j)
        best = std::max(best,
                        std::abs(f.at(m, j) - f.at(m, i)) / dpow[static_cast<size_t>(j - i)]);
  return best;
}

double holder_seminorm_t(const SpaceTimeField& f, double alpha) {
  check_field(f, "holder_seminorm_t");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("holder_seminorm_t: need alpha in (0,1)");
  if (f.n_t < 2) return 0.0;
  std::vector<double> dpow(static_cast<size_t>(f.n_t));
  for (int d = 1; d < f.n_t; ++d) dpow[static_cast<size_t>(d)] = std::pow(d * f.dt, alpha);
  double best = 0.0;
  for (int i = 0; i < f.n_x; ++i)
    for (int m = 0; m < f.n_t; ++m)
      for (int q = m + 1; q < f.n_t; ++q)
        best = std::max(best,
                        std::abs(f.at(q, i) - f.at(m, i)) / dpow[static_cast<size_t>(q - m)]);
  return best;
}

DerivativeProvider stencil_derivatives(const SpaceTimeField& f) {
  return [f](int r, int s) {
    if (r < 0 || s < 0 || s > 3)
      throw std::invalid_argument("stencil_derivatives: unsupported order");
    SpaceTimeField g = (s > 0) ? dx_field(f, s) : f;
    for (int k = 0; k < r; ++k) g = dt_field(g);
    return g;
  };
}

double holder_norm(const SpaceTimeField& f, double ell) {
  return holder_norm(f, ell, stencil_derivatives(f));
}

double holder_norm(const SpaceTimeField& f, double ell, const DerivativeProvider& deriv) {
  check_field(f, "holder_norm");
  if (!(ell > 0.0 && ell < 4.0))
    throw std::invalid_argument("holder_norm: need ell in (0,4)");
  const int top = static_cast<int>(std::floor(ell));
  if (static_cast<double>(top) == ell) throw IntegerOrder("holder_norm: ell is an integer");
  double total = 0.0;
  for (int r = 0; 2 * r <= top; ++r)
    for (int s = 0; 2 * r + s <= top; ++s) {
      const SpaceTimeField g = deriv(r, s);
      total += linf_norm(g);
      if (2 * r + s == top) total += holder_seminorm_x(g, ell - top);
      const double gap = ell - 2 * r - s;
      if (gap > 0.0 && gap < 2.0) total += holder_seminorm_t(g, gap / 2.0);
    }
  return total;
}

double frac_sobolev_norm(const std::vector<double>& f, double a, double b, double s,
                         double p) {
  const int n = static_cast<int>(f.size());
  if (!(b > a)) throw std::invalid_argument("frac_sobolev_norm: need b > a");
  if (!(p >= 1.0)) throw std::invalid_argument("frac_sobolev_norm: need p >= 1");
  if (!(s > 0.0 && s < 3.0))
    throw std::invalid_argument("frac_sobolev_norm: supported orders lie in (0,3)");
  const int k = static_cast<int>(std::floor(s));
  const double theta = s - k;
  if (theta == 0.0) throw std::invalid_argument("frac_sobolev_norm: s must be noninteger");
  if (n < (k + 1 >= 3 ? 7 : 5))
    throw std::invalid_argument("frac_sobolev_norm: field too short for the stencils");
  const double h = (b - a) / (n - 1);

  std::vector<std::vector<double>> d(static_cast<size_t>(k) + 2);
  d[0] = f;
  for (int j = 1; j <= k + 1; ++j) {
    d[static_cast<size_t>(j)].resize(static_cast<size_t>(n));
    detail::diff_line(f.data(), n, h, j, d[static_cast<size_t>(j)].data());
  }

  double total = 0.0;
  for (int j = 0; j <= k; ++j) total += trap_lp_line(d[static_cast<size_t>(j)], h, p);

  const std::vector<double>& g = d[static_cast<size_t>(k)];
  const std::vector<double>& gp = d[static_cast<size_t>(k) + 1];
  auto w = [n](int i) { return (i == 0 || i == n - 1) ? 0.5 : 1.0; };
  double semi = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      semi += 2.0 * w(i) * w(j) * h * h * std::pow(std::abs(g[j] - g[i]), p) /
              std::pow((j - i) * h, 1.0 + theta * p);
  // near-diagonal band |x-y| < h/2, invisible to the pair sum: local model
  // |g(x)-g(y)| ~ |g'(x)||x-y| integrated in closed form
  const double band_pow = p * (1.0 - theta);
  const double band_factor = 2.0 / band_pow * std::pow(h / 2.0, band_pow);
  for (int i = 0; i < n; ++i)
    semi += w(i) * h * band_factor * std::pow(std::abs(gp[i]), p);
  return total + std::pow(semi, 1.0 / p);
}

bool ParabolicCylinder::contains(double x, double t) const {
  return std::abs(x - xc) < r && t > tc - r * r && t <= tc;
}

bool ParabolicCylinder::fits_in(const SpaceTimeField& f) const {
  return r > 0.0 && xc - r >= f.x0 && xc + r <= f.x1 && tc - r * r >= f.t0 && tc <= f.t1;
}

double bmo_norm(const SpaceTimeField& f) {
  check_field(f, "bmo_norm");
  long candidates = 0;
  double best = 0.0;
  for (int k = 1; 2 * k <= f.n_x - 1; ++k) {
    const double r = k * f.hx;
    const double r2 = r * r;
    for (int mc = 0; mc < f.n_t; ++mc) {
      if (!(mc * f.dt >= r2)) continue;
      int m_lo = static_cast<int>(std::floor(mc - r2 / f.dt)) + 1;
      if (m_lo < 0) m_lo = 0;
      if (m_lo > mc) m_lo = mc;
      for (int ic = k; ic + k <= f.n_x - 1; ++ic) {
        ++candidates;
        double sum = 0.0;
        long cnt = 0;
        for (int m = m_lo; m <= mc; ++m)
          for (int i = ic - k + 1; i <= ic + k - 1; ++i) {
            sum += f.at(m, i);
            ++cnt;
          }
        const double mean = sum / static_cast<double>(cnt);
        double osc = 0.0;
        for (int m = m_lo; m <= mc; ++m)
          for (int i = ic - k + 1; i <= ic + k - 1; ++i) osc += std::abs(f.at(m, i) - mean);
        best = std::max(best, osc / static_cast<double>(cnt));
      }
    }
  }
  if (candidates == 0) throw EmptyDomain("bmo_norm: no parabolic cylinder fits the slab");
  return best;
}

double w212_norm(const SpaceTimeField& f) {
  check_field(f, "w212_norm");
  return lp_norm(f, 2.0) + lp_norm(dx_field(f, 1), 2.0) + lp_norm(dx_field(f, 2), 2.0) +
         lp_norm(dt_field(f), 2.0);
}

namespace {

SpaceTimeField extend_periodic(const SpaceTimeField& f, double sign, const char* who) {
  check_field(f, who);
  if (std::abs(f.x0) > 1e-12 || std::abs(f.x1 - 1.0) > 1e-12)
    throw std::invalid_argument(std::string(who) + ": input must live on [0,1]");
  const int cells = f.n_x - 1;
  SpaceTimeField out;
  out.x0 = -1.0;
  out.x1 = 3.0;
  out.hx = f.hx;
  out.n_x = 4 * cells + 1;
  out.t0 = f.t0;
  out.t1 = f.t1;
  out.dt = f.dt;
  out.n_t = f.n_t;
  out.values.resize(static_cast<size_t>(out.n_x) * out.n_t);
  for (int m = 0; m < f.n_t; ++m)
    for (int j = 0; j < out.n_x; ++j) {
      const int q = j % (2 * cells) - cells;  // wrapped offset from x=0 in cell units
      out.at(m, j) = q >= 0 ? f.at(m, q) : sign * f.at(m, -q);
    }
  return out;
}

}  // namespace

SpaceTimeField sym_extend(const SpaceTimeField& f) {
  return extend_periodic(f, 1.0, "sym_extend");
}

SpaceTimeField asym_extend(const SpaceTimeField& f) {
  return extend_periodic(f, -1.0, "asym_extend");
}

double KtComponents::denom() const {
  return (bmo + l1) * (1.0 + std::max(0.0, std::log(w212)));
}

KtComponents kozono_taniuchi_ratio(const SpaceTimeField& f) {
  KtComponents c;
  c.sup = linf_norm(f);
  c.bmo = bmo_norm(f);
  c.l1 = lp_norm(f, 1.0);
  c.w212 = w212_norm(f);
  if (!(c.bmo + c.l1 > 0.0))
    throw ZeroDenominator("kozono_taniuchi_ratio: BMO + L1 norm vanishes");
  return c;
}

double SymAsymRelation::c_emp() const {
  const double denom = asym_bmo + sym_mean_abs;
  return denom > 0.0 ? sym_bmo / denom : 0.0;
}

SymAsymRelation sym_asym_relation(const SpaceTimeField& f) {
  const SpaceTimeField fs = sym_extend(f);
  const SpaceTimeField fa = asym_extend(f);
  SymAsymRelation rel;
  rel.sym_bmo = bmo_norm(fs);
  rel.asym_bmo = bmo_norm(fa);
  const int cells = f.n_x - 1;
  double s = 0.0, w_total = 0.0;  // trapezoid mean of |f_sym| over one period, x in [-1,1]
  for (int m = 0; m < fs.n_t; ++m) {
    const double wm = (fs.n_t > 1 && (m == 0 || m == fs.n_t - 1)) ? 0.5 : 1.0;
    for (int j = 0; j <= 2 * cells; ++j) {
      const double wj = (j == 0 || j == 2 * cells) ? 0.5 : 1.0;
      s += wm * wj * std::abs(fs.at(m, j));
      w_total += wm * wj;
    }
  }
  rel.sym_mean_abs = s / w_total;
  return rel;
}

}  // namespace dcs
