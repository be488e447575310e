#pragma once

#include <functional>
#include <vector>

#include "dcs/grid.hpp"

namespace dcs {

// Sample field on a uniform space-time lattice, stored time-major:
// values[m * n_x + i] holds the sample at (x0 + i*hx, t0 + m*dt).  The upper
// bounds x1, t1 are stored explicitly so factories can pin exact domain edges
// (areas and endpoint nodes then reproduce round values exactly).
struct SpaceTimeField {
  double x0 = 0.0;
  double hx = 0.0;
  int n_x = 0;
  double t0 = 0.0;
  double dt = 0.0;
  int n_t = 0;
  double x1 = 0.0;
  double t1 = 0.0;
  std::vector<double> values;

  SpaceTimeField() = default;
  SpaceTimeField(double x0_, double hx_, int n_x_, double t0_, double dt_, int n_t_);

  // Samples f(x,t) on grid nodes x [0,1] and times t0 + m*dt, m = 0..n_t-1.
  static SpaceTimeField sample(const Grid& g, double t0, double dt, int n_t,
                               const std::function<double(double, double)>& f);

  double x(int i) const { return i == n_x - 1 ? x1 : x0 + i * hx; }
  double t(int m) const { return m == n_t - 1 ? t1 : t0 + m * dt; }
  double at(int m, int i) const { return values[static_cast<size_t>(m) * n_x + i]; }
  double& at(int m, int i) { return values[static_cast<size_t>(m) * n_x + i]; }
  bool all_finite() const;
};

// Restriction to the index rectangle [i0,i1] x [m0,m1], bounds included.
SpaceTimeField subfield(const SpaceTimeField& f, int i0, int i1, int m0, int m1);

// Lattice derivatives sharing the one-dimensional stencil rows of the grid
// module.  dx_field supports order 1..3 (n_x >= 5, order 3 needs n_x >= 7);
// dt_field is the first time derivative (n_t >= 5).
SpaceTimeField dx_field(const SpaceTimeField& f, int order);
SpaceTimeField dt_field(const SpaceTimeField& f);

// Max of |f| over all samples.
double linf_norm(const SpaceTimeField& f);

// L^p norm over the slab: trapezoid weights in both directions, evaluated as
// (weighted mean of |f|^p * area)^(1/p) so constant fields come out exact.
double lp_norm(const SpaceTimeField& f, double p);

// Largest ratio |f(x,t)-f(x',t)| / |x-x'|^alpha over same-time node pairs,
// and the same-node/time-pair analogue.  alpha in (0,1).
double holder_seminorm_x(const SpaceTimeField& f, double alpha);
double holder_seminorm_t(const SpaceTimeField& f, double alpha);

// Supplies the mixed derivative D_t^r D_x^s f for the Holder norm assembly.
using DerivativeProvider = std::function<SpaceTimeField(int r, int s)>;

// Provider backed by the lattice stencils of dx_field / dt_field.
DerivativeProvider stencil_derivatives(const SpaceTimeField& f);

// Anisotropic Holder norm of noninteger order ell in (0,4): sup norms of all
// D_t^r D_x^s f with 2r+s <= [ell], x-seminorms of order ell-[ell] for
// 2r+s = [ell], and t-seminorms of order (ell-2r-s)/2 whenever that exponent
// lies in (0,1).  Throws IntegerOrder for integral ell.
double holder_norm(const SpaceTimeField& f, double ell);
double holder_norm(const SpaceTimeField& f, double ell, const DerivativeProvider& deriv);

// Fractional Sobolev norm of a 1-D field on (a,b): W^{[s]}_p part by trapezoid
// quadrature of derivatives 0..[s], plus the double-integral seminorm of the
// top derivative with exponent 1 + (s-[s])p.  The double sum excludes the
// diagonal; the |x-y| < h/2 band it cannot see is restored by a closed-form
// local model using the next derivative.  Supports s in (0,3) noninteger.
double frac_sobolev_norm(const std::vector<double>& f, double a, double b, double s,
                         double p);

// Lower parabolic cylinder Q_r = (xc-r, xc+r) x (tc-r^2, tc].
struct ParabolicCylinder {
  double xc = 0.0;
  double tc = 0.0;
  double r = 0.0;
  bool contains(double x, double t) const;
  bool fits_in(const SpaceTimeField& f) const;
};

// Parabolic BMO seminorm: max mean oscillation over all node-centred cylinders
// with radii k*hx that fit inside the slab.  Sample means are exact sums over
// enclosed lattice points.  Throws EmptyDomain when no cylinder fits.
double bmo_norm(const SpaceTimeField& f);

// ||u||_2 + ||u_x||_2 + ||u_xx||_2 + ||u_t||_2 over the slab.
double w212_norm(const SpaceTimeField& f);

// Reflect across x=0 (even for sym, odd for asym) and continue 2-periodically;
// the result covers two periods, x in [-1,3], on the same time axis.  Input
// must live on [0,1].
SpaceTimeField sym_extend(const SpaceTimeField& f);
SpaceTimeField asym_extend(const SpaceTimeField& f);

// Components of the logarithmic sup-norm interpolation bound
//   ||f||_inf <= c (||f||_BMO + ||f||_L1) (1 + log+ ||f||_{W^{2,1}_2}).
struct KtComponents {
  double sup = 0.0;
  double bmo = 0.0;
  double l1 = 0.0;
  double w212 = 0.0;
  double denom() const;
  double ratio() const { return sup / denom(); }
};

// Evaluates all components; throws ZeroDenominator when bmo + l1 vanishes.
KtComponents kozono_taniuchi_ratio(const SpaceTimeField& f);

// Quantities of the extension inequality
//   ||f_sym||_BMO <= c (||f_asym||_BMO + mean of |f_sym| over one period):
// both extension norms plus the trapezoid mean of |f_sym| over x in [-1,1].
struct SymAsymRelation {
  double sym_bmo = 0.0;
  double asym_bmo = 0.0;
  double sym_mean_abs = 0.0;
  double c_emp() const;
};

SymAsymRelation sym_asym_relation(const SpaceTimeField& f);

}  // namespace dcs
