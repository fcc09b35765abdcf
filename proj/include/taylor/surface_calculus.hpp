#pragma once

#include <Eigen/Dense>
#include <complex>

#include "taylor/geometry.hpp"

namespace taylor {

enum class SurfaceSide { outer, inner };

// Tangential vector field u = u_tau tau + u_phi phihat at the grid nodes,
// understood as the mode-ell azimuthal coefficient.
struct TangentialField {
  Eigen::VectorXcd tau, phi;
  int ell = 0;
};

// Spectral operators on one generating curve for azimuthal mode ell.
// Lap = D^2 + diag(r_s/r) D - diag(ell^2/r^2); for ell = 0 the stored
// factorization is of Lap + 1 w^T (rank-one corrected), otherwise of Lap.
struct SpectralOperators {
  int n = 0;
  int ell = 0;
  double L = 0.0;
  Eigen::MatrixXd D;
  Eigen::MatrixXd Lap;
  Eigen::RowVectorXd w;  // (L/n) 2 pi r_j, so w f approximates the surface integral
  Eigen::VectorXd r, rs;
  Eigen::PartialPivLU<Eigen::MatrixXd> lap0;
};

SpectralOperators build_spectral_ops(const CurveGrid& grid, int ell = 0);

// Solve Lap rho = f.  For ell = 0 both f and the returned rho are mean-zero
// in the w inner product (contract error if f is not).
Eigen::VectorXcd invert_laplace_beltrami(const SpectralOperators& ops,
                                         const Eigen::VectorXcd& f);

// m_H = tau/r + i phihat/r on outer-type surfaces (n x m_H = +i m_H),
// conjugate sign pattern on inner-type (n x m_H = -i m_H).
TangentialField harmonic_field(const CurveGrid& grid, SurfaceSide which);

// m = i lambda (grad_G beta -/+ i n x grad_G beta) + coeff m_H  with
// beta = Lap^{-1} sigma; collapses to m = mu (tau +/- i phihat),
// mu = i lambda (beta' +/- (ell/r) beta) + coeff/r  (upper sign: outer).
TangentialField build_m_density(const SpectralOperators& ops,
                                const CurveGrid& grid,
                                const Eigen::VectorXcd& sigma, double lambda,
                                std::complex<double> coeff, SurfaceSide which);

}  // namespace taylor
