#pragma once

#include <array>
#include <memory>

#include "taylor/geometry.hpp"

namespace taylor {

// Miller-style cross-section parameters the analytic state is fitted to:
// r(t) = R0 + eps cos(t + asin(delta) sin t), z(t) = eps kappa sin t.
struct ShapeParams {
  double eps;
  double kappa;
  double delta;
  double R0 = 1.0;
};

// Flux function psi and partials at one meridian point.
struct PsiDerivs {
  double v, r, z, rr, zz, rz;
};

// Axisymmetric Taylor state psi = r J1(lr) + c1 r Y1(lr)
//   + c2 r J1(qr) cos(c6 z) + c3 r Y1(qr) cos(c6 z)
//   + c4 cos(l sqrt(r^2+z^2)) + c5 cos(l z),  q = sqrt(l^2 - c6^2),
// with (c, lambda) pinned by seven shaping conditions at the equatorial
// and top points of the target cross-section.
struct AnalyticState {
  ShapeParams shape;
  double lambda;
  std::array<double, 6> c;  // c[0..4] = c1..c5, c[5] = c6
  double r_axis;            // magnetic axis: psi_r(r_axis, 0) = 0
  double psi_axis;
  double fit_residual;      // max |constraint residual| at convergence
};

PsiDerivs psi_eval(const AnalyticState& st, double r, double z);

// Solves the seven-condition shaping system.  Candidate (lambda, c6)
// pairs come from a rank-drop scan of the constraint matrix (the system
// is linear and homogeneous in the basis coefficients once lambda and
// c6 are fixed); each candidate is polished by damped Newton on the
// full seven-variable system and accepted only if psi has a single
// positive core whose zero level lands near the target equator.
AnalyticState fit_shape_constraints(const ShapeParams& shape);

// All seven constraint residuals of a fitted state.
std::array<double, 7> constraint_residuals(const AnalyticState& st);

struct FieldSample {
  double Br, Bphi, Bz;
};

// B = lambda (psi/r) phi-hat + (1/r) grad(psi) x phi-hat.
FieldSample exact_B(const AnalyticState& st, double r, double z);

// Toroidal flux through the meridian cross-section bounded by the
// grid's curve: the area integral of B_phi, evaluated as the boundary
// circulation (1/lambda) * circulation(B_pol) with the sign fixed so a
// counterclockwise grid yields the area-integral convention.
double toroidal_flux(const AnalyticState& st, const CurveGrid& grid);

// Radial chord roots psi(r, 0) = level on either side of the axis.
struct ChordRoots {
  double r_in, r_out;
};
ChordRoots level_chord_roots(const AnalyticState& st, double level);

// Marches the closed curve psi = level around the magnetic axis
// (tangent predictor, Newton corrector onto the level set) and
// resamples it into a trigonometric generating curve.
std::unique_ptr<GeneratingCurve> trace_level_set(const AnalyticState& st,
                                                 double level,
                                                 int n_samples = 256);

}  // namespace taylor
