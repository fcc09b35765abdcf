#!/usr/bin/env python3
"""Arbitrary-precision anchors for the azimuthal kernel modes.

Integrates the unsplit oscillatory integrand
    g_k = (1/pi) int_0^pi exp(i lam R)/(4 pi R) cos(k theta) dtheta,
plus its r and z derivatives taken under the integral sign, with tanh-sinh
quadrature at 40 digits.  Covers separations far below what double
precision adaptive quadrature can reach, so these values pin the
recurrence-based static path near the diagonal.  Output is frozen into
tests/test_modal_kernels.cpp.
"""

from mpmath import mp, cos, exp, mpc, pi, quad, sqrt

mp.dps = 40
I = mpc(0, 1)

# r, z, rp, zp, lam, ell spanning both sides of the chi = 2 path switch
CASES = [
    ("A", "3.0, 0.1, 2.999, 0.1007, 2.3, 1"),     # chi-1 ~ 8e-8
    ("A0", "3.0, 0.1, 2.999, 0.1007, 0.0, 2"),    # static only, k <= 3
    ("B", "1.2, -0.4, 1.25, -0.355, 4.0, 2"),     # chi-1 ~ 1.5e-3
    ("C", "0.7, 0.0, 1.9, 0.9, 2.0, 3"),          # chi-1 ~ 0.85
    ("D", "0.5, 0.0, 2.0, 1.2, 2.0, 3"),          # chi-1 ~ 1.8, far path
    ("E", "1.05, 0.0, 1.0, 0.001, 1.0, 1"),       # chi-1 ~ 1.2e-3
    # offsets are dyadic (3*2^-22, 2^-20) so the doubles match the decimals exactly
    ("F", "1.5, 0.25, 1.5000007152557373046875, 0.25000095367431640625, 3.0, 1"),  # chi-1 ~ 3.2e-13
    ("G", "1.4, 0.2, 1.40114, 0.20152, 3.0, 2"),  # just under the kink switch
    ("H", "1.4, 0.2, 1.40126, 0.20168, 3.0, 2"),  # just over the kink switch
]


def component(r, z, rp, zp, lam, k):
    dz = z - zp
    chim1 = ((r - rp) ** 2 + dz * dz) / (2 * r * rp)

    def R(th):
        return sqrt(r * r + rp * rp + dz * dz - 2 * r * rp * cos(th))

    w = sqrt(2 * chim1)
    pts = [t for t in (0, w, 16 * w, mp.pi) if t <= mp.pi] + [mp.pi]
    pts = sorted(set(pts))

    def val(th):
        return exp(I * lam * R(th)) / (4 * pi * R(th)) * cos(k * th)

    def dval(fac):
        def f(th):
            Rv = R(th)
            core = (I * lam * Rv - 1) * exp(I * lam * Rv) / (4 * pi * Rv**2)
            return core * fac(th, Rv) * cos(k * th)

        return f

    g = quad(val, pts) / pi
    gr = quad(dval(lambda th, Rv: (r - rp * cos(th)) / Rv), pts) / pi
    gz = quad(dval(lambda th, Rv: dz / Rv), pts) / pi
    return g, gr, gz


def fmt(v):
    return f"cd({mp.nstr(v.real, 21)}, {mp.nstr(v.imag, 21)})"


for name, args in CASES:
    r, z, rp, zp, lam, ell = [mp.mpf(x) for x in args.split(",")]
    ell = int(ell)
    comp = {}
    for k in {abs(ell), abs(ell - 1), abs(ell + 1)}:
        comp[k] = component(r, z, rp, zp, lam, k)
    g, gr, gz = comp[abs(ell)]
    gp, gpr, gpz = comp[abs(ell + 1)]
    gm, gmr, gmz = comp[abs(ell - 1)]
    print(f"// case {name}: {{{args}}}")
    print(f"g      = {fmt(g)}")
    print(f"dg_dr  = {fmt(gr)}")
    print(f"dg_dz  = {fmt(gz)}")
    print(f"g_cos  = {fmt((gp + gm) / 2)}")
    print(f"g_sin  = {fmt((gp - gm) / (2 * I))}")
    print(f"dgc_dr = {fmt((gpr + gmr) / 2)}")
    print(f"dgc_dz = {fmt((gpz + gmz) / 2)}")
    print(f"dgs_dr = {fmt((gpr - gmr) / (2 * I))}")
    print(f"dgs_dz = {fmt((gpz - gmz) / (2 * I))}")
    print(flush=True)
