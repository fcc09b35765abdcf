#!/usr/bin/env python3
"""Generate endpoint-correction quadrature tables for log-singular periodic integrals.

Writes src/alpert_tables.cpp. Two rules:
  order 8  : 7 Gaussian-type nodes, offset a=5, solved from the nonlinear
             moment system (trapezoid corrections for f + g*ln near 0).
  order 16 : 30 fixed nodes, offset a=10, weights from the linear moment
             system on the same exactness space {x^q, x^q ln x, q<=14}.

The order-8 nodes come from a two-stage continuation: node insertion on the
companion positive-measure system (integrals of x^q and x^q ln x over
(0, a-1/2)), then a convex homotopy of the right-hand side onto the
trapezoid-correction moments. Direct Newton from generic seeds diverges;
this path is reliable. Gaussian-type rules beyond ~12 nodes sit on folded
solution branches (weights of merged-node ghosts), hence the fixed-node
variant for order 16. Convergence of both rules is verified below before
anything is written.
"""
import sys
import numpy as np
import mpmath as mp


# ---------- moment right-hand sides ----------

def trapezoid_moments(j, a):
    # corrections a trapezoid rule skipping k < a needs on (0, inf) tails:
    # sum_p w_p chi_p^q           = -zeta(-q, a)
    # sum_p w_p chi_p^q ln chi_p  =  zeta'(-q, a)
    A = mp.mpf(a)
    return ([-mp.zeta(-q, A) for q in range(j)],
            [mp.zeta(-q, A, 1) for q in range(j)])


def measure_moments(j, a):
    B = mp.mpf(a) - mp.mpf('0.5')
    pol = [B**(q+1) / (q+1) for q in range(j)]
    log = [B**(q+1) * (mp.log(B)/(q+1) - mp.mpf(1)/(q+1)**2) for q in range(j)]
    return pol, log


def blended_moments(j, a, theta):
    tp, tl = trapezoid_moments(j, a)
    ip, il = measure_moments(j, a)
    TH = mp.mpf(theta)
    return ([(1-TH)*ip[q] + TH*tp[q] for q in range(j)],
            [(1-TH)*il[q] + TH*tl[q] for q in range(j)])


# ---------- fast double-precision Newton in a Chebyshev row basis ----------

_CHEB_CACHE = {}

def cheb_rhs(j, a, theta):
    key = (j, round(float(a), 9), round(float(theta), 12))
    if key in _CHEB_CACHE:
        return _CHEB_CACHE[key]
    mp.mp.dps = 60
    pol, log = blended_moments(j, a, theta)
    half = float(a) - 0.5
    cp, cl = [], []
    for q in range(j):
        c = np.polynomial.chebyshev.cheb2poly([0]*q + [1])
        acc = [mp.mpf(0)] * j
        for k, ck in enumerate(c):
            if ck == 0:
                continue
            ckm = mp.mpf(float(ck))
            for i in range(k + 1):
                acc[i] += ckm * mp.binomial(k, i) * (mp.mpf(2)/mp.mpf(half))**i * (-1)**(k-i)
        cp.append(float(sum(acc[i] * pol[i] for i in range(j))))
        cl.append(float(sum(acc[i] * log[i] for i in range(j))))
    _CHEB_CACHE[key] = (np.array(cp), np.array(cl), half)
    return _CHEB_CACHE[key]


def cheb_ops(j, half):
    def T(x):
        t = 2.0 * x / half - 1.0
        V = np.empty((j, len(x)))
        V[0] = 1.0
        if j > 1:
            V[1] = t
        for q in range(2, j):
            V[q] = 2.0 * t * V[q-1] - V[q-2]
        return V

    def dT(x):
        t = 2.0 * x / half - 1.0
        U = np.empty((j, len(x)))
        U[0] = 1.0
        if j > 1:
            U[1] = 2.0 * t
        for q in range(2, j):
            U[q] = 2.0 * t * U[q-1] - U[q-2]
        D = np.empty((j, len(x)))
        D[0] = 0.0
        for q in range(1, j):
            D[q] = q * U[q-1] * (2.0 / half)
        return D
    return T, dT


def newton_nodes(j, a, theta, x0, maxit=250):
    """Newton on node positions; weights eliminated through the linear solve.
    Returns (nodes, residual_norm); never raises."""
    cp, cl, half = cheb_rhs(j, a, theta)
    T, dT = cheb_ops(j, half)

    def resid(x):
        V = T(x)
        w = np.linalg.solve(V, cp)
        return V @ (w * np.log(x)) - cl, V, w

    x = np.array(x0, float)
    if np.any(x <= 0):
        return None, np.inf
    try:
        F, V, w = resid(x)
    except np.linalg.LinAlgError:
        return None, np.inf
    best = (x.copy(), np.linalg.norm(F))
    for _ in range(maxit):
        nrm = np.linalg.norm(F)
        if nrm < best[1]:
            best = (x.copy(), nrm)
        if nrm < 1e-10:
            return np.sort(x), nrm
        L = np.log(x)
        dV = dT(x)
        VL = V * L[None, :]
        try:
            dW = np.linalg.solve(V, dV * w[None, :])
            J = dV * (w * L)[None, :] + V * (w / x)[None, :] - VL @ dW
            step = np.linalg.solve(J, F)
        except np.linalg.LinAlgError:
            return best
        lam, ok = 1.0, False
        for _ in range(50):
            xn = x - lam * step
            if np.all(xn > 0):
                try:
                    Fn, Vn, wn = resid(xn)
                except np.linalg.LinAlgError:
                    Fn = None
                if Fn is not None and np.linalg.norm(Fn) < nrm:
                    x, F, V, w = xn, Fn, Vn, wn
                    ok = True
                    break
            lam /= 2
        if not ok:
            return best
    return best


# ---------- continuation ----------

def insertion_chain(j_target, a, rng):
    B = a - 0.5
    x, j = np.array([B / np.e]), 1   # closed form for one node, pure measure
    while j < j_target:
        x0 = np.sort(x)
        cands = []
        if j > 1:
            cands.append(np.concatenate([[x0[0]**2 / x0[1]], x0]))
        cands += [np.concatenate([[x0[0] / 4], x0])]
        for i in range(j - 1):
            cands.append(np.concatenate([[np.sqrt(x0[i] * x0[i+1])], x0]))
        cands += [np.concatenate([x0, [(x0[-1] + B) / 2]]),
                  np.concatenate([x0, [B - (B - x0[-1]) / 4]])]
        got = None
        for s in cands:
            for t in range(20):
                sp = np.sort(s * np.exp(rng.normal(0, 0.03, j+1))) if t else np.sort(s)
                xx, nrm = newton_nodes(j + 1, a, 0.0, sp)
                if nrm < 1e-9:
                    got = np.sort(xx)
                    break
            if got is not None:
                break
        if got is None:
            raise RuntimeError(f"insertion stuck at {j}->{j+1}")
        x, j = got, j + 1
    return x


def homotopy_walk(j, a, x, rng):
    th, dth = 0.0, 0.05
    while th < 1.0 - 1e-15:
        t_next = min(th + dth, 1.0)
        xn, nrm = newton_nodes(j, a, t_next, x)
        if xn is not None and nrm < 1e-8:
            x, th = np.sort(xn), t_next
            dth = min(dth * 1.6, 0.05)
            continue
        ok = False
        for _ in range(25):
            s = np.sort(x * np.exp(rng.normal(0, 0.02, j)))
            xn, nrm = newton_nodes(j, a, t_next, s)
            if xn is not None and nrm < 1e-8:
                x, th = np.sort(xn), t_next
                ok = True
                break
        if not ok:
            dth /= 2
            if dth < 1e-5:
                raise RuntimeError(f"homotopy stuck at theta={th}")
    return x


def mp_polish(nodes, a, dps):
    """High-precision Newton on the full trapezoid-moment system."""
    j = len(nodes)
    mp.mp.dps = dps
    pol, log = trapezoid_moments(j, a)
    m = mp.matrix(pol)
    scale = mp.norm(mp.matrix(log))
    x = [mp.mpf(float(v)) for v in sorted(nodes)]

    def FJw(x):
        V = mp.zeros(j, j)
        for q in range(j):
            for p in range(j):
                V[q, p] = x[p]**q
        w = mp.lu_solve(V, m)
        F = mp.matrix(j, 1)
        for q in range(j):
            s = mp.mpf(0)
            for p in range(j):
                s += w[p] * x[p]**q * mp.log(x[p])
            F[q] = s - log[q]
        J = mp.zeros(j, j)
        for r in range(j):
            u = mp.matrix(j, 1)
            for q in range(1, j):
                u[q] = q * x[r]**(q-1)
            dw = mp.lu_solve(V, u)
            lr = mp.log(x[r])
            for q in range(j):
                s = (w[r] / x[r]) if q == 0 else w[r] * x[r]**(q-1) * (q*lr + 1)
                t = mp.mpf(0)
                for p in range(j):
                    t += dw[p] * x[p]**q * mp.log(x[p])
                J[q, r] = s - w[r] * t
        return F, J, w

    F, J, w = FJw(x)
    for _ in range(60):
        nrm = mp.norm(F)
        if nrm < scale * mp.mpf(10)**(-(dps - 25)):
            break
        step = mp.lu_solve(J, F)
        lam, ok = mp.mpf(1), False
        for _ in range(70):
            xn = [x[p] - lam * step[p] for p in range(j)]
            if all(v > 0 for v in xn):
                g = FJw(xn)
                if mp.norm(g[0]) < nrm:
                    x, (F, J, w) = xn, g
                    ok = True
                    break
            lam /= 2
        if not ok:
            break
    if mp.norm(F) > scale * mp.mpf(10)**(-30):
        raise RuntimeError("polish did not converge")
    return sorted(x), list(w)


def fixed_rule(count, exact, a):
    """Fixed nodes (mapped Gauss-Legendre), weights from the linear moment system."""
    mp.mp.dps = 220
    B = mp.mpf(a) - mp.mpf('0.5')
    gl, _ = np.polynomial.legendre.leggauss(count)
    chi = [B * (mp.mpf(float(v)) + 1)**2 / 4 for v in gl]
    pol, log = trapezoid_moments(exact, a)
    V = mp.zeros(2 * exact, count)
    for p, xp in enumerate(chi):
        for q in range(exact):
            V[q, p] = xp**q
            V[exact + q, p] = xp**q * mp.log(xp)
    w = mp.lu_solve(V, mp.matrix(pol + log))
    return chi, list(w)


# ---------- verification ----------

def composite(f, n, a, chi, w):
    h = 2 * mp.pi / n
    s = mp.mpf(0)
    for k in range(a, n - a + 1):
        s += f(k * h)
    for p in range(len(chi)):
        s += w[p] * (f(chi[p] * h) + f(2 * mp.pi - chi[p] * h))
    return h * s


def verify(name, a, chi, w, ns, want):
    mp.mp.dps = 50
    f = lambda s: mp.log(4 * mp.sin(s/2)**2) * mp.cos(3*s)
    exact = -2 * mp.pi / 3
    errs = [abs(composite(f, n, a, chi, w) - exact) for n in ns]
    rates = [float(mp.log(errs[i-1]/errs[i]) / mp.log(mp.mpf(ns[i])/ns[i-1]))
             for i in range(1, len(ns))]
    print(f"{name}: errs", [mp.nstr(e, 3) for e in errs], "rates",
          [f"{r:.2f}" for r in rates])
    if max(rates) < want:
        raise RuntimeError(f"{name}: observed order {max(rates):.2f} < {want}")


# ---------- emission ----------

def emit(path, rules):
    lines = [
        '#include "taylor/quadrature.hpp"',
        '',
        'namespace taylor {',
        'namespace {',
    ]
    for tag, (order, a, chi, w) in rules.items():
        lines.append(f"constexpr double {tag}_chi[] = {{")
        for c in chi:
            lines.append(f"    {mp.nstr(c, 22)},")
        lines.append("};")
        lines.append(f"constexpr double {tag}_w[] = {{")
        for c in w:
            lines.append(f"    {mp.nstr(c, 22)},")
        lines.append("};")
        lines.append(f"constexpr AlpertRule {tag}{{{order}, {a}, {len(chi)}, {tag}_chi, {tag}_w}};")
        lines.append("")
    lines += [
        '}  // namespace',
        '',
        'const AlpertRule& alpert_log_rule(int order) {',
        '    switch (order) {',
        '        case 8: return rule8;',
        '        case 16: return rule16;',
        '        default: throw std::invalid_argument("alpert_log_rule: order must be 8 or 16");',
        '    }',
        '}',
        '',
        '}  // namespace taylor',
    ]
    with open(path, 'w') as fh:
        fh.write('\n'.join(lines) + '\n')
    print("wrote", path)


def main():
    rng = np.random.default_rng(20240811)

    x7 = insertion_chain(7, 5.0, rng)
    x7 = homotopy_walk(7, 5.0, x7, rng)
    chi8, w8 = mp_polish(x7, 5, dps=80)
    verify("order 8", 5, chi8, w8, [24, 48, 96, 192], want=7.5)

    chi16, w16 = fixed_rule(30, 15, 10)
    verify("order 16", 10, chi16, w16, [24, 32, 48, 64], want=15.0)

    emit(sys.argv[1] if len(sys.argv) > 1 else 'src/alpert_tables.cpp',
         {'rule8': (8, 5, chi8, w8), 'rule16': (16, 10, chi16, w16)})


if __name__ == '__main__':
    main()
