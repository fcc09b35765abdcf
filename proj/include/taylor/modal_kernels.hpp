#pragma once

#include <complex>

namespace taylor {

// One (target, source) pair for the azimuthal Fourier modes of the
// Helmholtz kernel e^{i lambda |x-x'|}/(4 pi |x-x'|).
struct KernelArgs {
  double r, z;    // target
  double rp, zp;  // source
  double lambda;  // wavenumber (>= 0)
  int ell;        // azimuthal mode
};

struct ModalTrig {
  std::complex<double> g_cos, g_sin;
};

struct ModalGrad {
  std::complex<double> dg_dr, dg_dz;
  std::complex<double> dgcos_dr, dgcos_dz;
  std::complex<double> dgsin_dr, dgsin_dz;
};

// Everything one Nystrom matrix entry needs, from a single adaptive sweep.
struct ModalKernelValue {
  std::complex<double> g, g_cos, g_sin;
  ModalGrad grad;
};

// g_ell = (1/2pi) int_{-pi}^{pi} e^{i lam R(th)}/(4 pi R(th)) e^{-i ell th} dth
std::complex<double> modal_g(const KernelArgs& a);

// g_ell^cos = (g_{ell+1} + g_{ell-1})/2,  g_ell^sin = (g_{ell+1} - g_{ell-1})/(2i)
ModalTrig modal_trig(const KernelArgs& a);

ModalGrad modal_grad(const KernelArgs& a);

ModalKernelValue modal_all(const KernelArgs& a, bool want_grad);

// (e^{i lam R} - 1)/(4 pi R) at azimuthal angle theta, by series when
// lam R is small; the R -> 0 limit is i lam/(4 pi).
std::complex<double> near_diagonal_smooth(const KernelArgs& a, double theta);

}  // namespace taylor
