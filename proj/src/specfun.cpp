#include "taylor/specfun.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace taylor {

namespace {

// AGM iteration for K and E.  a0=1, b0=k' (complementary modulus), c0=k.
// K = pi/(2 a_N),  E = K (1 - sum 2^{i-1} c_i^2).
EllipKE agm_KE(long double k2, long double kp) {
  long double a = 1.0L, b = kp;
  long double csum = 0.5L * k2;  // 2^{-1} c_0^2 with c_0^2 = k^2
  long double pow2 = 1.0L;
  for (int i = 0; i < 60; ++i) {
    long double c = 0.5L * (a - b);
    long double an = 0.5L * (a + b);
    b = std::sqrt(a * b);
    a = an;
    csum += pow2 * c * c;
    pow2 *= 2.0L;
    if (std::fabs(c) < 1e-19L * a) break;
  }
  long double K = 1.5707963267948966192313L / a;
  long double E = K * (1.0L - csum);
  return {static_cast<double>(K), static_cast<double>(E)};
}

}  // namespace

EllipKE ellip_KE(double t) {
  if (!(t >= 0.0 && t < 1.0)) throw std::domain_error("ellip_KE: modulus outside [0,1)");
  long double k2 = static_cast<long double>(t) * t;
  long double kp = std::sqrt((1.0L - t) * (1.0L + t));
  return agm_KE(k2, kp);
}

EllipKEDerivs ellip_KE_derivs(double t) {
  EllipKE ke = ellip_KE(t);
  EllipKEDerivs d;
  d.K = ke.K;
  d.E = ke.E;
  if (t < 1e-4) {
    // leading series terms; the closed forms lose all digits as t -> 0
    d.dK = M_PI * t / 4.0;
    d.dE = -M_PI * t / 4.0;
  } else {
    double omt2 = (1.0 - t) * (1.0 + t);
    d.dK = (ke.E - omt2 * ke.K) / (t * omt2);
    d.dE = (ke.E - ke.K) / t;
  }
  return d;
}

QHalves legendre_Q_halves(double chi) {
  if (!(chi > 1.0)) throw std::domain_error("legendre_Q_halves: chi must exceed 1");
  return legendre_Q_halves_m1(chi - 1.0);
}

// Descending series Q_nu(chi) = sqrt(pi)G(nu+1)/(G(nu+3/2)(2chi)^{nu+1})
// * 2F1(nu/2+1, nu/2+1/2; nu+3/2; chi^-2).  The elliptic form of Q_{1/2}
// below cancels two ~chi-sized terms, so it loses digits once chi is large;
// this series is the stable route there and converges fast for chi > 5.
static QHalves q_halves_series(double chim1) {
  double chi = 1.0 + chim1;
  double x = 1.0 / (chi * chi);
  double sm = 1.0, tm = 1.0, sp = 1.0, tp = 1.0;
  for (int j = 0; j < 60; ++j) {
    tm *= (j + 0.25) * (j + 0.75) / ((j + 1.0) * (j + 1.0)) * x;
    tp *= (j + 0.75) * (j + 1.25) / ((j + 2.0) * (j + 1.0)) * x;
    sm += tm;
    sp += tp;
    if (tm < 1e-18 * sm && tp < 1e-18 * sp) break;
  }
  QHalves q;
  constexpr double pi = 3.14159265358979323846;
  q.Qm = pi / std::sqrt(2.0 * chi) * sm;
  q.Qp = pi / (4.0 * std::sqrt(2.0) * chi * std::sqrt(chi)) * sp;
  return q;
}

QHalves legendre_Q_halves_m1(double chim1) {
  if (!(chim1 > 0.0)) throw std::domain_error("legendre_Q_halves: chi must exceed 1");
  if (chim1 > 4.0) return q_halves_series(chim1);
  double chi = 1.0 + chim1;
  // k^2 = 2/(1+chi), k'^2 = (chi-1)/(chi+1); both cancellation-free in chim1
  long double k2 = 2.0L / (2.0L + static_cast<long double>(chim1));
  long double kp = std::sqrt(static_cast<long double>(chim1) / (2.0L + static_cast<long double>(chim1)));
  EllipKE ke = agm_KE(k2, kp);
  double k = std::sqrt(static_cast<double>(k2));
  QHalves q;
  q.Qm = k * ke.K;
  q.Qp = chi * k * ke.K - 2.0 / k * ke.E;
  return q;
}

QHalvesDerivs legendre_Q_halves_derivs_m1(double chim1) {
  QHalves q = legendre_Q_halves_m1(chim1);
  double chi = 1.0 + chim1;
  double chi2m1 = chim1 * (chim1 + 2.0);  // chi^2-1 without cancellation
  QHalvesDerivs d;
  d.Qm = q.Qm;
  d.Qp = q.Qp;
  d.dQm = (q.Qp - chi * q.Qm) / (2.0 * chi2m1);
  d.dQp = (chi * q.Qp - q.Qm) / (2.0 * chi2m1);
  return d;
}

namespace {

constexpr long double kEulerGamma = 0.5772156649015328606065120900824024L;

BesselJY01 bessel_series(double x) {
  // long double accumulation keeps the alternating series usable up to x=12
  long double q = 0.25L * static_cast<long double>(x) * x;  // (x/2)^2
  long double j0 = 1.0L, j1 = 0.5L * x;
  long double y0s = 0.0L, y1s = 0.0L;
  {
    long double t = 1.0L;  // (-1)^k q^k/(k!)^2
    for (int k = 1; k < 90; ++k) {
      t *= -q / (static_cast<long double>(k) * k);
      j0 += t;
      if (std::fabs(t) < 1e-24L) break;
    }
  }
  {
    long double t = 0.5L * x;  // (-1)^k (x/2)^{2k+1}/(k!(k+1)!)
    for (int k = 1; k < 90; ++k) {
      t *= -q / (static_cast<long double>(k) * (k + 1));
      j1 += t;
      if (std::fabs(t) < 1e-24L) break;
    }
  }
  {
    long double t = 1.0L, H = 0.0L;
    for (int k = 1; k < 90; ++k) {
      t *= -q / (static_cast<long double>(k) * k);
      H += 1.0L / k;
      y0s += -t * H;  // (-1)^{k+1} H_k q^k/(k!)^2
      if (std::fabs(t) < 1e-24L) break;
    }
  }
  {
    long double t = 0.5L * x;                        // (x/2)^{2k+1}/(k!(k+1)!) signed
    long double psum = -2.0L * kEulerGamma + 1.0L;   // psi(1)+psi(2)
    y1s = t * psum;
    for (int k = 1; k < 90; ++k) {
      t *= -q / (static_cast<long double>(k) * (k + 1));
      psum += 1.0L / k + 1.0L / (k + 1);
      y1s += t * psum;
      if (std::fabs(t) < 1e-24L) break;
    }
  }
  long double lx = std::log(0.5L * static_cast<long double>(x));
  BesselJY01 r;
  r.J0 = static_cast<double>(j0);
  r.J1 = static_cast<double>(j1);
  r.Y0 = static_cast<double>((2.0L / M_PIl) * ((lx + kEulerGamma) * j0 + y0s));
  r.Y1 = static_cast<double>((2.0L / M_PIl) * lx * j1 - (2.0L / M_PIl) / x - (1.0L / M_PIl) * y1s);
  return r;
}

// CF = a1/(b1 + a2/(b2 + ...)), a_k = (2k-1)^2/4, b_k = 2(x+ik), by
// modified Lentz.  Feeds the Hankel logarithmic derivative at nu = 0.
std::complex<double> hankel_cf(double x) {
  using C = std::complex<double>;
  const double tiny = 1e-290;
  C fk(tiny, 0.0), Ck = fk, Dk(0.0, 0.0);
  for (int k = 1; k < 2000; ++k) {
    C ak((2.0 * k - 1.0) * (2.0 * k - 1.0) / 4.0, 0.0);
    C bk(2.0 * x, 2.0 * k);
    Dk = bk + ak * Dk;
    if (std::abs(Dk) == 0.0) Dk = tiny;
    Ck = bk + ak / Ck;
    if (std::abs(Ck) == 0.0) Ck = tiny;
    Dk = 1.0 / Dk;
    C delta = Ck * Dk;
    fk *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return fk;
}

BesselJY01 bessel_large(double x) {
  // J0, J1 by Miller downward recurrence, normalized by J0 + 2 sum J_{2k} = 1
  int top = static_cast<int>(x + 12.0 * std::cbrt(x) + 40.0);
  double jp = 0.0, j = 1e-290, norm = 0.0;
  for (int nu = top; nu >= 1; --nu) {
    double jm = (2.0 * nu / x) * j - jp;
    jp = j;
    j = jm;  // j = J_{nu-1}, jp = J_nu (unnormalized)
    if ((nu - 1) % 2 == 0) norm += (nu == 1 ? 1.0 : 2.0) * j;
    if (std::fabs(j) > 1e250) {
      jp /= 1e250;
      j /= 1e250;
      norm /= 1e250;
    }
  }
  double J0 = j / norm, J1 = jp / norm;
  // (J0' + i Y0') = (p + i q)(J0 + i Y0);  J0' = -J1, Y0' = -Y1
  std::complex<double> pq = std::complex<double>(-0.5 / x, 1.0) +
                            std::complex<double>(0.0, 1.0 / x) * hankel_cf(x);
  double p = pq.real(), q = pq.imag();
  double Y0 = (p * J0 + J1) / q;
  double Y1 = -(q * J0 + p * Y0);
  return {J0, J1, Y0, Y1};
}

}  // namespace

BesselJY01 bessel_JY01(double x) {
  if (!(x > 0.0) || x > 1e4) throw std::domain_error("bessel_JY01: x outside (0, 1e4]");
  if (x <= 12.0) return bessel_series(x);
  return bessel_large(x);
}

}  // namespace taylor
