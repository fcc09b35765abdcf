#include "taylor/surface_calculus.hpp"

#include <cmath>
#include <stdexcept>

#include "taylor/errors.hpp"

namespace taylor {

namespace {
constexpr double kPi = 3.141592653589793238463;
constexpr std::complex<double> kI{0.0, 1.0};
}

SpectralOperators build_spectral_ops(const CurveGrid& grid, int ell) {
  const int n = grid.n;
  SpectralOperators ops;
  ops.n = n;
  ops.ell = ell;
  ops.L = grid.L;
  ops.r = grid.r;
  ops.rs = grid.rs;

  // Fourier differentiation matrices for even n, period L
  ops.D = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd D2 = Eigen::MatrixXd::Zero(n, n);
  const double sD = kPi / grid.L;
  const double sD2 = 4.0 * kPi * kPi / (grid.L * grid.L);
  for (int j = 0; j < n; ++j) {
    D2(j, j) = -sD2 * (n * n / 12.0 + 1.0 / 6.0);
    for (int k = 0; k < n; ++k) {
      if (j == k) continue;
      const int m = j - k;
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;
      const double half = kPi * m / n;
      ops.D(j, k) = sD * sign / std::tan(half);
      const double s = std::sin(half);
      D2(j, k) = -sD2 * sign / (2.0 * s * s);
    }
  }

  ops.Lap = D2 + (grid.rs.array() / grid.r.array()).matrix().asDiagonal() * ops.D;
  if (ell != 0)
    ops.Lap.diagonal() -=
        (double(ell) * ell / grid.r.array().square()).matrix();

  ops.w = (2.0 * kPi * grid.L / n) * grid.r.transpose();

  Eigen::MatrixXd corrected = ops.Lap;
  if (ell == 0) corrected += Eigen::VectorXd::Ones(n) * ops.w;
  ops.lap0.compute(corrected);

  // the factorization never signals failure itself; probe it
  Eigen::VectorXd probe = Eigen::VectorXd::Ones(n);
  Eigen::VectorXd back = corrected * ops.lap0.solve(probe);
  if (!back.allFinite() || (back - probe).norm() > 1e-4 * probe.norm())
    throw GeometryError("surface operators: Laplace-Beltrami factorization is degenerate");
  return ops;
}

Eigen::VectorXcd invert_laplace_beltrami(const SpectralOperators& ops,
                                         const Eigen::VectorXcd& f) {
  Eigen::VectorXcd rho(ops.n);
  if (ops.ell == 0) {
    const std::complex<double> mean = (ops.w * f).value();
    if (std::abs(mean) > 1e-8 * (f.norm() + 1e-300) * ops.w.norm())
      throw std::invalid_argument(
          "invert_laplace_beltrami: input is not surface-mean-zero");
    rho.real() = ops.lap0.solve(f.real().eval());
    rho.imag() = ops.lap0.solve(f.imag().eval());
    // Lap0 rho = f already implies w rho ~ 0; make it exact
    const std::complex<double> c = (ops.w * rho).value() / ops.w.sum();
    rho.array() -= c;
  } else {
    rho.real() = ops.lap0.solve(f.real().eval());
    rho.imag() = ops.lap0.solve(f.imag().eval());
  }
  return rho;
}

TangentialField harmonic_field(const CurveGrid& grid, SurfaceSide which) {
  TangentialField m;
  m.ell = 0;
  m.tau = grid.r.cwiseInverse().cast<std::complex<double>>();
  const std::complex<double> s = which == SurfaceSide::outer ? kI : -kI;
  m.phi = s * m.tau;
  return m;
}

TangentialField build_m_density(const SpectralOperators& ops,
                                const CurveGrid& grid,
                                const Eigen::VectorXcd& sigma, double lambda,
                                std::complex<double> coeff, SurfaceSide which) {
  const double sgn = which == SurfaceSide::outer ? 1.0 : -1.0;
  Eigen::VectorXcd mu(ops.n);
  if (sigma.norm() > 0.0) {
    Eigen::VectorXcd beta = invert_laplace_beltrami(ops, sigma);
    Eigen::VectorXcd dbeta = ops.D * beta;
    mu = kI * lambda *
         (dbeta + sgn * double(ops.ell) * beta.cwiseQuotient(
                            grid.r.cast<std::complex<double>>()));
  } else {
    mu.setZero();
  }
  mu += coeff * grid.r.cwiseInverse().cast<std::complex<double>>();
  TangentialField m;
  m.ell = ops.ell;
  m.tau = mu;
  m.phi = (sgn * kI) * mu;
  return m;
}

}  // namespace taylor
