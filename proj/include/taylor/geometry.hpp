#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <memory>
#include <vector>

namespace taylor {

// Closed curve t in [0,2pi) -> (r(t), z(t)) in the half-plane r > 0,
// positively oriented (counter-clockwise), with analytic derivatives.
class GeneratingCurve {
 public:
  virtual ~GeneratingCurve() = default;
  virtual void eval(double t, double& r, double& z) const = 0;
  virtual void deriv(double t, double& dr, double& dz) const = 0;
  virtual void deriv2(double t, double& d2r, double& d2z) const = 0;
  double speed(double t) const {
    double dr, dz;
    deriv(t, dr, dz);
    return std::sqrt(dr * dr + dz * dz);
  }
};

// r(t) = R0 + eps cos(t + alpha sin t), z(t) = eps kappa sin t,
// alpha = arcsin(delta).
class MillerCurve final : public GeneratingCurve {
 public:
  MillerCurve(double R0, double eps, double kappa, double delta);
  void eval(double t, double& r, double& z) const override;
  void deriv(double t, double& dr, double& dz) const override;
  void deriv2(double t, double& d2r, double& d2z) const override;

 private:
  double R0_, eps_, kappa_, alpha_;
};

// Trigonometric interpolant through a closed list of (r,z) points, treated
// as samples at equispaced parameter values.  Orientation is normalized to
// counter-clockwise.
class TrigCurve final : public GeneratingCurve {
 public:
  explicit TrigCurve(const std::vector<std::array<double, 2>>& pts);
  void eval(double t, double& r, double& z) const override;
  void deriv(double t, double& dr, double& dz) const override;
  void deriv2(double t, double& d2r, double& d2z) const override;

 private:
  // cosine/sine coefficients, index = wavenumber
  Eigen::VectorXd ra_, rb_, za_, zb_;
};

// Nodes equispaced in arc length with the local frame data every layer
// above needs.  tau = (rs, zs); n = (zs, -rs) points out of the region
// enclosed by the (counter-clockwise) curve.
struct CurveGrid {
  int n = 0;
  double L = 0.0;
  Eigen::VectorXd s, r, z;      // positions, s_j = j L/n
  Eigen::VectorXd rs, zs;       // d/ds of (r,z); unit tangent
  Eigen::VectorXd rss, zss;     // d2/ds2
  double weight() const { return L / n; }
};

struct Frame {
  double tau_r, tau_z;
  double n_r, n_z;
};

std::unique_ptr<GeneratingCurve> make_miller_curve(double R0, double eps,
                                                   double kappa, double delta);

CurveGrid discretize_arclength(const GeneratingCurve& curve, int n);

Frame frame_at(const CurveGrid& grid, int j);

}  // namespace taylor
