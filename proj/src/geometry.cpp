#include "taylor/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "taylor/errors.hpp"
#include "taylor/quadrature.hpp"

namespace taylor {

namespace {
constexpr double kTwoPi = 6.283185307179586476925;
}

MillerCurve::MillerCurve(double R0, double eps, double kappa, double delta) {
  if (!(eps > 0.0) || !(kappa > 0.0))
    throw GeometryError("miller curve: eps and kappa must be positive");
  if (!(std::fabs(delta) < 1.0))
    throw GeometryError("miller curve: |delta| must be below 1");
  if (!(R0 > eps))
    throw GeometryError("miller curve: R0 <= eps puts the curve on the axis");
  R0_ = R0;
  eps_ = eps;
  kappa_ = kappa;
  alpha_ = std::asin(delta);
}

void MillerCurve::eval(double t, double& r, double& z) const {
  r = R0_ + eps_ * std::cos(t + alpha_ * std::sin(t));
  z = eps_ * kappa_ * std::sin(t);
}

void MillerCurve::deriv(double t, double& dr, double& dz) const {
  double u = t + alpha_ * std::sin(t);
  dr = -eps_ * std::sin(u) * (1.0 + alpha_ * std::cos(t));
  dz = eps_ * kappa_ * std::cos(t);
}

void MillerCurve::deriv2(double t, double& d2r, double& d2z) const {
  double u = t + alpha_ * std::sin(t);
  double up = 1.0 + alpha_ * std::cos(t);
  d2r = -eps_ * (std::cos(u) * up * up - std::sin(u) * alpha_ * std::sin(t));
  d2z = -eps_ * kappa_ * std::sin(t);
}

std::unique_ptr<GeneratingCurve> make_miller_curve(double R0, double eps,
                                                   double kappa,
                                                   double delta) {
  return std::make_unique<MillerCurve>(R0, eps, kappa, delta);
}

TrigCurve::TrigCurve(const std::vector<std::array<double, 2>>& pts) {
  const int m = static_cast<int>(pts.size());
  if (m < 8) throw GeometryError("point curve: need at least 8 points");
  std::vector<std::array<double, 2>> p = pts;
  // normalize orientation: signed area 1/2 sum (r_k dz - z_k dr) > 0
  double area = 0.0;
  for (int k = 0; k < m; ++k) {
    const auto& a = p[k];
    const auto& b = p[(k + 1) % m];
    area += 0.5 * (a[0] * b[1] - b[0] * a[1]);
  }
  if (area < 0.0) std::reverse(p.begin(), p.end());
  for (const auto& q : p)
    if (!(q[0] > 0.0))
      throw GeometryError("point curve: all points need r > 0");

  // Real DFT; for even m the Nyquist sine column vanishes at the sample
  // points, so interpolation keeps b at that wavenumber zero.
  const int kmax = m / 2;
  ra_ = Eigen::VectorXd::Zero(kmax + 1);
  rb_ = Eigen::VectorXd::Zero(kmax + 1);
  za_ = Eigen::VectorXd::Zero(kmax + 1);
  zb_ = Eigen::VectorXd::Zero(kmax + 1);
  for (int j = 0; j <= kmax; ++j) {
    double scale = (j == 0 || (2 * j == m)) ? 1.0 / m : 2.0 / m;
    for (int k = 0; k < m; ++k) {
      double t = kTwoPi * k / m;
      double c = std::cos(j * t), sn = std::sin(j * t);
      ra_[j] += scale * p[k][0] * c;
      rb_[j] += scale * p[k][0] * sn;
      za_[j] += scale * p[k][1] * c;
      zb_[j] += scale * p[k][1] * sn;
    }
  }
}

void TrigCurve::eval(double t, double& r, double& z) const {
  r = z = 0.0;
  for (int j = 0; j < ra_.size(); ++j) {
    double c = std::cos(j * t), sn = std::sin(j * t);
    r += ra_[j] * c + rb_[j] * sn;
    z += za_[j] * c + zb_[j] * sn;
  }
}

void TrigCurve::deriv(double t, double& dr, double& dz) const {
  dr = dz = 0.0;
  for (int j = 1; j < ra_.size(); ++j) {
    double c = std::cos(j * t), sn = std::sin(j * t);
    dr += j * (rb_[j] * c - ra_[j] * sn);
    dz += j * (zb_[j] * c - za_[j] * sn);
  }
}

void TrigCurve::deriv2(double t, double& d2r, double& d2z) const {
  d2r = d2z = 0.0;
  for (int j = 1; j < ra_.size(); ++j) {
    double c = std::cos(j * t), sn = std::sin(j * t);
    d2r -= j * j * (ra_[j] * c + rb_[j] * sn);
    d2z -= j * j * (za_[j] * c + zb_[j] * sn);
  }
}

CurveGrid discretize_arclength(const GeneratingCurve& curve, int n) {
  if (n < 16 || n % 2 != 0)
    throw GeometryError("discretize_arclength: n must be even and >= 16");

  auto speed = [&curve](double t) { return curve.speed(t); };
  const double L = integrate_adaptive(speed, 0.0, kTwoPi, 1e-14, 0.0);

  CurveGrid g;
  g.n = n;
  g.L = L;
  g.s.resize(n);
  g.r.resize(n);
  g.z.resize(n);
  g.rs.resize(n);
  g.zs.resize(n);
  g.rss.resize(n);
  g.zss.resize(n);

  // Invert s(t) = integral of speed node by node.  Newton from the previous
  // node's solution, falling back to bisection on the bracket [t_j-1, 2pi].
  double t = 0.0;
  double s_at_t = 0.0;
  double max_resid = 0.0;
  for (int j = 0; j < n; ++j) {
    const double target = L * j / n;
    if (j > 0) {
      double lo = t, hi = kTwoPi;
      double s_lo = s_at_t;
      // first guess: advance by (target - s_lo)/speed
      double tj = t + (target - s_lo) / curve.speed(t);
      for (int it = 0; it < 60; ++it) {
        if (!(tj > lo) || !(tj < hi)) tj = 0.5 * (lo + hi);
        double sj = s_lo + integrate_adaptive(speed, lo, tj, 1e-14, 0.0);
        double f = sj - target;
        if (f > 0.0) {
          hi = tj;
        } else {
          lo = tj;
          s_lo = sj;
        }
        double step = f / curve.speed(tj);
        if (std::fabs(f) < 1e-13 * L) {
          t = tj;
          s_at_t = sj;
          break;
        }
        tj -= step;
        if (it == 59)
          throw AccuracyError("discretize_arclength: inversion stalled, residual " +
                              std::to_string(std::fabs(f)));
      }
      max_resid = std::max(max_resid, std::fabs(s_at_t - target));
    }

    double r, z, dr, dz, d2r, d2z;
    curve.eval(t, r, z);
    curve.deriv(t, dr, dz);
    curve.deriv2(t, d2r, d2z);
    if (!(r > 0.0))
      throw GeometryError("discretize_arclength: curve touches the axis r = 0");
    const double v = std::sqrt(dr * dr + dz * dz);
    const double vp = (dr * d2r + dz * d2z) / v;
    g.s[j] = target;
    g.r[j] = r;
    g.z[j] = z;
    g.rs[j] = dr / v;
    g.zs[j] = dz / v;
    g.rss[j] = (d2r * v - dr * vp) / (v * v * v);
    g.zss[j] = (d2z * v - dz * vp) / (v * v * v);
  }

  // orientation check: signed area of the discretized polygon
  double area = 0.0;
  for (int j = 0; j < n; ++j) {
    int k = (j + 1) % n;
    area += 0.5 * (g.r[j] * g.z[k] - g.r[k] * g.z[j]);
  }
  if (!(area > 0.0))
    throw GeometryError("discretize_arclength: curve is not counter-clockwise");

  double max_curv = 0.0;
  for (int j = 0; j < n; ++j)
    max_curv = std::max(max_curv, std::hypot(g.rss[j], g.zss[j]));
  if (n < 8.0 * max_curv * L)
    std::fprintf(stderr,
                 "warning: n = %d under-resolves curvature (want >= %.0f)\n", n,
                 8.0 * max_curv * L);
  return g;
}

Frame frame_at(const CurveGrid& grid, int j) {
  if (j < 0 || j >= grid.n)
    throw std::out_of_range("frame_at: node index out of range");
  return Frame{grid.rs[j], grid.zs[j], grid.zs[j], -grid.rs[j]};
}

}  // namespace taylor
