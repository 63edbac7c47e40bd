"""Independent test oracles.

High-precision (50-digit) mirrors of the scalar kernels, small search
utilities, and a brute-force convex hull.  These deliberately re-derive
everything from scratch so the production code paths are never on both
sides of a comparison.
"""

import math

import mpmath as mp
import numpy as np

mp.mp.dps = 50


# -- high-precision kernel mirrors ------------------------------------------

def mp_leg_tanh(w, x):
    t = mp.tanh(w)
    c = mp.cos(x)
    return (1 + c - mp.sqrt((1 + c) ** 2 - 4 * t ** 2 * c)) / (2 * t)


def mp_alpha_of_leg(w, y):
    return mp.asin(y * mp.sech(w) / (mp.tanh(w) - y))


def mp_alpha_of_crossing(w, x):
    return mp_alpha_of_leg(w, mp_leg_tanh(w, x))


def mp_discriminant_root(w, x):
    c = mp.cos(x)
    return mp.sqrt((1 + c) ** 2 - 4 * mp.tanh(w) ** 2 * c)


def mp_area_ratio_margin(w, x):
    t = mp.tanh(w)
    s = mp.sqrt(1 - t ** 2)
    a1 = mp.acos(x * s / (t - x))
    a2 = mp.acos(x * (1 - x * t) / (t - x))
    return (x ** 2 + 1 - 2 * x * t) * a1 - mp.sqrt((1 - t ** 2) * (1 - x ** 2)) * a2


def mp_area_ratio_margin_deriv(w, x):
    t = mp.tanh(w)
    s = mp.sqrt(1 - t ** 2)
    a1 = mp.acos(x * s / (t - x))
    a2 = mp.acos(x * (1 - x * t) / (t - x))
    return (x * s / mp.sqrt(1 - x ** 2)) * a2 - 2 * (t - x) * a1


def mp_solve_leg(w, phi, dps=50):
    """Bisection for the leg length from cos(phi) = tanh(b)/tanh(w-b)."""
    target = mp.cos(phi)
    lo, hi = mp.mpf(0), mp.mpf(w) / 2
    for _ in range(5 * dps):
        mid = (lo + hi) / 2
        if mp.tanh(mid) / mp.tanh(w - mid) < target:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


# -- 1-D search utilities ----------------------------------------------------

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_minimize(f, a, b, tol=1e-12):
    """Golden-section minimum of a unimodal f on [a, b]; returns (x, f(x))."""
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def sample_then_golden(f, a, b, coarse=512, tol=1e-12):
    """Coarse scan for the global bracket, then golden refinement."""
    xs = np.linspace(a, b, coarse)
    vals = [f(x) for x in xs]
    k = int(np.argmin(vals))
    lo = xs[max(0, k - 1)]
    hi = xs[min(coarse - 1, k + 1)]
    return golden_minimize(f, lo, hi, tol)


def parabolic_polish(f, x, h=1e-5):
    """One parabolic-fit step around x; beats golden section's sqrt(eps)
    positional floor because the fit differences stay above roundoff."""
    fm, f0, fp = f(x - h), f(x), f(x + h)
    denom = fp - 2.0 * f0 + fm
    if denom <= 0.0:
        return x
    return x - 0.5 * h * (fp - fm) / denom


# -- brute-force convex hull (Klein coordinates) ------------------------------

def brute_force_hull_indices(pts2):
    """Indices of extreme points: i is extreme iff it is in no triangle of
    the others (Caratheodory in the projective Klein model)."""
    pts2 = np.asarray(pts2, dtype=float)
    n = len(pts2)

    def in_triangle(p, a, b, c, eps=1e-12):
        def cross(u, v, q):
            return (v[0] - u[0]) * (q[1] - u[1]) - (v[1] - u[1]) * (q[0] - u[0])

        d1, d2, d3 = cross(a, b, p), cross(b, c, p), cross(c, a, p)
        neg = (d1 < -eps) or (d2 < -eps) or (d3 < -eps)
        pos = (d1 > eps) or (d2 > eps) or (d3 > eps)
        return not (neg and pos)

    extreme = []
    for i in range(n):
        others = [j for j in range(n) if j != i]
        inside = False
        for a in range(len(others)):
            for b in range(a + 1, len(others)):
                for c in range(b + 1, len(others)):
                    if in_triangle(pts2[i], pts2[others[a]], pts2[others[b]],
                                   pts2[others[c]]):
                        inside = True
                        break
                if inside:
                    break
            if inside:
                break
        if not inside:
            extreme.append(i)
    return extreme
