#pragma once

namespace taylor {

// Complete elliptic integrals K(t), E(t) in the modulus convention
// K(t) = int_0^{pi/2} (1 - t^2 sin^2)^{-1/2}.  Valid for t in [0,1).
struct EllipKE {
  double K, E;
};
EllipKE ellip_KE(double t);

struct EllipKEDerivs {
  double K, E, dK, dE;  // dK = K'(t), dE = E'(t)
};
// K'(t) = (E - (1-t^2) K) / (t (1-t^2)),  E'(t) = (E - K)/t, with the
// series limits K' -> pi t/4, E' -> -pi t/4 used below t = 1e-4.
EllipKEDerivs ellip_KE_derivs(double t);

// Legendre functions of the second kind at half-integer degree, chi > 1:
//   Q_{-1/2}(chi) = k K(k),  Q_{1/2}(chi) = chi k K(k) - (2/k) E(k),
// with k = sqrt(2/(1+chi)).  No azimuthal-integral prefactor is included;
// callers apply 1/(4 pi^2 sqrt(r r')) once.
struct QHalves {
  double Qm, Qp;  // Q_{-1/2}, Q_{+1/2}
};
QHalves legendre_Q_halves(double chi);
// Stable entry point taking chi-1 directly (avoids cancellation when the
// evaluation sits near the coincidence limit chi -> 1+).
QHalves legendre_Q_halves_m1(double chim1);

struct QHalvesDerivs {
  double Qm, Qp, dQm, dQp;  // values and d/dchi
};
QHalvesDerivs legendre_Q_halves_derivs_m1(double chim1);

// Bessel functions of the first and second kind, orders 0 and 1.
// Power series below x = 12, Miller downward recurrence plus a Hankel
// continued fraction above.  Valid on (0, 1e4]; relative accuracy ~1e-13
// except for the phase-driven loss ~x*eps at large x.
struct BesselJY01 {
  double J0, J1, Y0, Y1;
};
BesselJY01 bessel_JY01(double x);

}  // namespace taylor
